// Command-line front end: run, solve, validate, sweep, tune.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "clustergame/errors.hpp"
#include "clustergame/output.hpp"
#include "clustergame/reference.hpp"
#include "clustergame/scenario.hpp"
#include "clustergame/sweep.hpp"

namespace fs = std::filesystem;
using namespace clustergame;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitRuntime = 2;

fs::path output_dir(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("CLUSTERGAME_OUT"); env && *env) return env;
  return "out";
}

// "3..7" (inclusive) or a comma list "1,4,9".
std::vector<std::uint64_t> parse_seed_list(const std::string& text) {
  std::vector<std::uint64_t> seeds;
  if (const auto dots = text.find(".."); dots != std::string::npos) {
    const std::uint64_t lo = std::stoull(text.substr(0, dots));
    const std::uint64_t hi = std::stoull(text.substr(dots + 2));
    if (hi < lo) throw UsageError(fmt::format("empty seed range '{}'", text));
    for (std::uint64_t s = lo; s <= hi; ++s) seeds.push_back(s);
    return seeds;
  }
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = text.find(',', pos);
    const std::string item = text.substr(pos, comma == std::string::npos ? std::string::npos
                                                                          : comma - pos);
    if (item.empty()) throw UsageError(fmt::format("malformed seed list '{}'", text));
    seeds.push_back(std::stoull(item));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return seeds;
}

std::vector<double> parse_real_list(const std::string& text) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = text.find(',', pos);
    out.push_back(std::stod(text.substr(pos, comma == std::string::npos ? std::string::npos
                                                                        : comma - pos)));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

Scenario load(const std::string& path) { return build_scenario(parse_scenario(path)); }

std::optional<JointAction> reference_point(const Scenario& sc, const fs::path& out) {
  const ReferenceNe ne = load_or_compute_reference(sc, out);
  if (!ne.solution.converged) {
    std::cerr << fmt::format("warning: reference solve stopped at residual {:.3e}\n",
                             ne.solution.residual);
  }
  return ne.solution.point;
}

int cmd_validate(const std::string& path) {
  const ScenarioConfig cfg = parse_scenario(path);
  const Scenario sc = build_scenario(cfg);
  const ValidationReport report = validate_scenario(sc);
  if (!report.ok()) {
    std::cerr << path << ": " << report.to_string() << "\n";
    return kExitInvalid;
  }
  std::cout << fmt::format("{}: ok ({} clusters, dimension {}, hash {})\n", path,
                           sc.game->cluster_count(), sc.game->dimension(), sc.hash);
  return kExitOk;
}

int cmd_solve(const std::string& path) {
  const Scenario sc = load(path);
  const ReferenceNe ne = compute_reference(sc);
  std::cout << reference_to_json(ne).dump(2) << "\n";
  return ne.kkt.ok() && ne.solution.converged ? kExitOk : kExitInvalid;
}

int cmd_run(const std::string& path, std::optional<std::uint64_t> seed, const fs::path& out) {
  const Scenario sc = load(path);
  const std::uint64_t s = seed ? *seed : sc.config.seeds.front();
  const auto reference = reference_point(sc, out);
  const SeedRun run = run_seed(sc, s, reference);
  const fs::path dir = out / fmt::format("seed_{}", s);
  write_seed_outputs(run, reference, dir);
  std::cout << summary_to_json(run.summary).dump(2) << "\n";
  return kExitOk;
}

int cmd_sweep(const std::string& path, const std::string& seed_text, unsigned jobs,
              const fs::path& out) {
  const Scenario sc = load(path);
  const auto seeds = seed_text.empty() ? sc.config.seeds : parse_seed_list(seed_text);
  const auto reference = reference_point(sc, out);
  const auto runs = run_seeds(sc, seeds, reference, jobs);
  std::vector<double> errors;
  nlohmann::json per_seed = nlohmann::json::array();
  for (const auto& r : runs) {
    write_seed_outputs(r, reference, out / fmt::format("seed_{}", r.summary.seed));
    errors.push_back(r.summary.final_error);
    per_seed.push_back({{"seed", r.summary.seed}, {"final_error", r.summary.final_error}});
  }
  std::vector<RunRecord> records;
  for (const auto& r : runs) records.push_back(r.record);
  emit_convergence_plot(records, reference, out / "convergence.svg");
  const Aggregate agg = aggregate(errors);
  const nlohmann::json summary{{"scenario_hash", sc.hash},
                               {"seeds", seeds},
                               {"runs", per_seed},
                               {"final_error",
                                {{"median", agg.median}, {"min", agg.min}, {"max", agg.max}}}};
  write_text_file(out / "aggregate.json", summary.dump(2) + "\n");
  std::cout << summary.dump(2) << "\n";
  return kExitOk;
}

// Grid search over alpha0 x sigma0; ranks by median final error over seeds.
int cmd_tune(const std::string& path, const std::string& alphas, const std::string& sigmas,
             const std::string& seed_text, std::uint64_t iterations, unsigned jobs,
             const fs::path& out) {
  Scenario base = load(path);
  const auto seeds = seed_text.empty() ? base.config.seeds : parse_seed_list(seed_text);
  const auto reference = reference_point(base, out);
  nlohmann::json table = nlohmann::json::array();
  double best = std::numeric_limits<double>::infinity();
  double best_alpha = 0.0, best_sigma = 0.0;
  for (double a0 : parse_real_list(alphas)) {
    for (double s0 : parse_real_list(sigmas)) {
      ScenarioConfig cfg = base.config;
      cfg.schedule.alpha0 = a0;
      cfg.schedule.sigma0 = s0;
      if (iterations) cfg.iterations = iterations;
      cfg.record_every = std::max<std::uint64_t>(cfg.iterations, 1);
      Scenario sc = build_scenario(cfg);
      if (const auto report = validate_scenario(sc); !report.ok()) {
        std::cerr << fmt::format("alpha0={} sigma0={}: skipped ({})\n", a0, s0,
                                 report.violations.front().code);
        continue;
      }
      std::vector<double> errors;
      for (const auto& r : run_seeds(sc, seeds, reference, jobs))
        errors.push_back(r.summary.final_error);
      const Aggregate agg = aggregate(errors);
      std::cerr << fmt::format("alpha0={:<8g} sigma0={:<6g} median={:.4f} min={:.4f} max={:.4f}\n",
                               a0, s0, agg.median, agg.min, agg.max);
      table.push_back({{"alpha0", a0},
                       {"sigma0", s0},
                       {"median", agg.median},
                       {"min", agg.min},
                       {"max", agg.max},
                       {"errors", errors}});
      if (agg.median < best) {
        best = agg.median;
        best_alpha = a0;
        best_sigma = s0;
      }
    }
  }
  const nlohmann::json result{{"grid", table},
                              {"best", {{"alpha0", best_alpha}, {"sigma0", best_sigma},
                                        {"median", best}}}};
  fs::create_directories(out);
  write_text_file(out / "tuning.json", result.dump(2) + "\n");
  std::cout << result["best"].dump(2) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Zero-order distributed Nash equilibrium seeking for n-cluster games"};
  app.require_subcommand(1);

  std::string scenario, out_flag, seeds_text, alphas = "0.001,0.01,0.1,1,5,10,20,50",
                                              sigmas = "0.5,1,2,4";
  std::uint64_t seed = 0, tune_iterations = 0;
  unsigned jobs = 0;

  auto* validate = app.add_subcommand("validate", "Check a scenario without running it");
  validate->add_option("scenario", scenario, "Scenario TOML file")->required();

  auto* solve = app.add_subcommand("solve", "Reference equilibrium with KKT report as JSON");
  solve->add_option("scenario", scenario, "Scenario TOML file")->required();

  auto* run = app.add_subcommand("run", "Simulate one seed; write CSV, summary JSON and SVG");
  run->add_option("scenario", scenario, "Scenario TOML file")->required();
  auto* seed_opt = run->add_option("--seed", seed, "Seed (default: first seed of the scenario)");
  run->add_option("--out", out_flag, "Output directory (default: $CLUSTERGAME_OUT or ./out)");

  auto* sweep = app.add_subcommand("sweep", "Run many seeds concurrently and aggregate");
  sweep->add_option("scenario", scenario, "Scenario TOML file")->required();
  sweep->add_option("--seeds", seeds_text, "Seed range a..b or list a,b,c");
  sweep->add_option("--jobs", jobs, "Concurrent runs (default: hardware threads)");
  sweep->add_option("--out", out_flag, "Output directory");

  auto* tune = app.add_subcommand("tune", "Grid search over alpha0 and sigma0");
  tune->add_option("scenario", scenario, "Scenario TOML file")->required();
  tune->add_option("--alpha0", alphas, "Comma-separated alpha0 values");
  tune->add_option("--sigma0", sigmas, "Comma-separated sigma0 values");
  tune->add_option("--seeds", seeds_text, "Seed range a..b or list a,b,c");
  tune->add_option("--iterations", tune_iterations, "Override the scenario's T");
  tune->add_option("--jobs", jobs, "Concurrent runs");
  tune->add_option("--out", out_flag, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitRuntime;
  }

  try {
    const fs::path out = output_dir(out_flag);
    if (*validate) return cmd_validate(scenario);
    if (*solve) return cmd_solve(scenario);
    if (*run) {
      return cmd_run(scenario, seed_opt->count() ? std::optional<std::uint64_t>(seed)
                                                 : std::nullopt,
                     out);
    }
    if (*sweep) return cmd_sweep(scenario, seeds_text, jobs, out);
    if (*tune) return cmd_tune(scenario, alphas, sigmas, seeds_text, tune_iterations, jobs, out);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const ScheduleViolation& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitRuntime;
}
