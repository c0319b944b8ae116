// Acceptance suite: one PASS/FAIL line per criterion.
//   acceptance [--criterion N]...   (default: all)

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "clustergame/estimator_diagnostics.hpp"
#include "clustergame/games.hpp"
#include "clustergame/graph.hpp"
#include "clustergame/output.hpp"
#include "clustergame/reference.hpp"
#include "clustergame/rng.hpp"
#include "clustergame/scenario.hpp"
#include "clustergame/solver.hpp"
#include "clustergame/sweep.hpp"

using namespace clustergame;

namespace {

const std::string kCournot = std::string(CLUSTERGAME_SOURCE_DIR) + "/scenarios/cournot.toml";

struct Verdict {
  bool pass;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string join(const std::vector<double>& v, const char* fmt_spec = "{:.4f}") {
  std::string s;
  for (double x : v) {
    if (!s.empty()) s += ", ";
    s += fmt::format(fmt::runtime(fmt_spec), x);
  }
  return s;
}

Vector random_feasible(const GameSpec& g, CounterRng& rng) {
  const Vector lo = g.lower(), hi = g.upper();
  Vector x(lo.size());
  for (Eigen::Index k = 0; k < x.size(); ++k) x[k] = rng.uniform(lo[k], hi[k]);
  return x;
}

// The Cournot acceptance run (bundled scenario, every configured seed),
// computed once per process.
struct CournotRun {
  Scenario scenario;
  ReferenceNe reference;
  std::vector<SeedRun> runs;
  double slowest_seed = 0.0;
};

const CournotRun& cournot_run() {
  static const CournotRun run = [] {
    CournotRun r{build_scenario(parse_scenario(kCournot)), {}, {}, 0.0};
    r.reference = compute_reference(r.scenario);
    for (std::uint64_t seed : r.scenario.config.seeds) {
      r.runs.push_back(run_seed(r.scenario, seed, r.reference.solution.point));
      r.slowest_seed = std::max(r.slowest_seed, r.runs.back().summary.wall_clock);
    }
    return r;
  }();
  return run;
}

double consensus_at(const RunRecord& rec, std::uint64_t iteration, std::size_t cluster) {
  for (const auto& e : rec.entries)
    if (e.iteration == iteration) return e.consensus.at(cluster);
  throw UsageError(fmt::format("iteration {} was not recorded", iteration));
}

Verdict criterion_convergence() {
  const CournotRun& c = cournot_run();
  std::vector<double> errors;
  for (const auto& r : c.runs) errors.push_back(r.summary.final_error);
  const Aggregate agg = aggregate(errors);
  const bool pass = agg.median <= 1.0 && agg.min <= 0.5 && c.slowest_seed < 60.0;
  return {pass, fmt::format("median ||x(T)-x*|| = {:.4f} (<= 1.0), best seed {:.4f} (<= 0.5), "
                            "per seed [{}], alpha0 = {}, sigma0 = {}, slowest seed {:.2f} s",
                            agg.median, agg.min, join(errors), c.scenario.config.schedule.alpha0,
                            c.scenario.config.schedule.sigma0, c.slowest_seed)};
}

Verdict criterion_active_bounds() {
  const Scenario sc = build_scenario(parse_scenario(kCournot));
  const ReferenceNe ne = compute_reference(sc);
  const Vector& x = ne.solution.point;
  int at_cap = 0;
  for (std::size_t j = 0; j < sc.game->agent_count(1); ++j)
    at_cap += std::abs(x[static_cast<Eigen::Index>(sc.game->offset(1) + j)] - 10.0) <= 1e-6;
  const double gap = *std::max_element(ne.best_response_gaps.begin(), ne.best_response_gaps.end());
  const bool pass = at_cap == 2 && ne.kkt.max_violation <= 1e-6 && gap <= 1e-3;
  std::vector<double> xs(x.data(), x.data() + x.size());
  return {pass, fmt::format("cluster-2 components at 10: {} (== 2), KKT max violation {:.2e} "
                            "(<= 1e-6), best-response gaps [{}] (<= 1e-3), x* = [{}]",
                            at_cap, ne.kkt.max_violation, join(ne.best_response_gaps, "{:.2e}"),
                            join(xs, "{:.6f}"))};
}

Verdict criterion_uniqueness() {
  const GameSpec g = make_cournot(table1_cournot_params());
  CounterRng rng(2024, StreamTag::kTest, {3});
  std::vector<JointAction> sols;
  bool all_converged = true;
  for (int k = 0; k < 10; ++k) {
    SolverOptions o;
    o.start = random_feasible(g, rng);
    o.seed = static_cast<std::uint64_t>(k);
    const VISolution s = solve_vi(g, o);
    all_converged = all_converged && s.converged;
    sols.push_back(s.point);
  }
  double worst = 0.0;
  for (std::size_t a = 0; a < sols.size(); ++a)
    for (std::size_t b = a + 1; b < sols.size(); ++b)
      worst = std::max(worst, (sols[a] - sols[b]).norm());
  return {all_converged && worst <= 1e-5,
          fmt::format("10 random starts, max pairwise distance {:.2e} (<= 1e-5), all converged: {}",
                      worst, all_converged)};
}

Verdict criterion_monotonicity() {
  const GameSpec g = make_cournot(table1_cournot_params());
  CounterRng rng(2024, StreamTag::kTest, {4});
  int violations = 0;
  double smallest = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 1000; ++k) {
    const Vector u = random_feasible(g, rng), v = random_feasible(g, rng);
    const double ip = (game_mapping(g, u) - game_mapping(g, v)).dot(u - v);
    smallest = std::min(smallest, ip / (u - v).squaredNorm());
    violations += !(ip > 0.0);
  }
  return {violations == 0,
          fmt::format("1000 random pairs, violations {} (== 0), min (F(u)-F(v),u-v)/|u-v|^2 = {:.4f}",
                      violations, smallest)};
}

Verdict criterion_estimator_scaling() {
  const auto t0 = std::chrono::steady_clock::now();
  // J = |x - c|^2 / 2 on [-1, 1]^2 (safety ball: origin, radius 1). Bias is
  // measured where the cost vanishes and the O(sigma) shift dominates; the
  // mean squared error where the cost value dominates the estimate.
  const Vector c = (Vector(2) << 0.6, -0.4).finished();
  QuadraticParams q;
  q.intervals = {std::vector<ActionInterval>(2, ActionInterval(-1.0, 1.0))};
  q.targets = {c};
  const GameSpec g = make_quadratic_separable(q);
  const Vector far = (Vector(2) << -0.6, 0.4).finished();
  const std::size_t samples = 1'000'000;
  CounterRng rng(2024, StreamTag::kTest, {5});
  const ErrorMoments b1 = estimator_error_moments(g, 0, 0, c, 0.1, samples, rng);
  const ErrorMoments b2 = estimator_error_moments(g, 0, 0, c, 0.05, samples, rng);
  const ErrorMoments m1 = estimator_error_moments(g, 0, 0, far, 0.1, samples, rng);
  const ErrorMoments m2 = estimator_error_moments(g, 0, 0, far, 0.05, samples, rng);
  const double bias_ratio = b1.bias_norm / b2.bias_norm;
  const double mse_ratio = m2.mean_sq_error_norm / m1.mean_sq_error_norm;
  const double secs = seconds_since(t0);
  const bool pass = bias_ratio >= 1.5 && bias_ratio <= 3.0 && mse_ratio >= 2.5 &&
                    mse_ratio <= 6.0 && secs < 30.0;
  return {pass, fmt::format("bias ratio sigma 0.1/0.05 = {:.3f} (in [1.5, 3]), MSE ratio "
                            "0.05/0.1 = {:.3f} (in [2.5, 6]), {} samples each, {:.2f} s (< 30)",
                            bias_ratio, mse_ratio, samples, secs)};
}

Verdict criterion_feasibility() {
  CounterRng rng(2024, StreamTag::kTest, {6});
  const GameSpec g = make_cournot(table1_cournot_params());
  std::uint64_t random_violations = 0;
  for (int k = 0; k < 100000; ++k) {
    const std::size_t i = rng.below(2);
    const ClusterSpec& cl = g.cluster(i);
    Vector x(4);
    for (Eigen::Index m = 0; m < 4; ++m) {
      const double u = rng.uniform();
      const auto& iv = cl.interval(static_cast<std::size_t>(m));
      x[m] = u < 0.1 ? iv.lower : u > 0.9 ? iv.upper : rng.uniform(iv.lower, iv.upper);
    }
    const double sigma = rng.uniform(1e-9, 1.0 - 1e-9) * cl.safety_radius();
    random_violations += !cl.contains(build_query_point(x, sample_unit_sphere(4, rng), sigma, cl));
  }
  const CournotRun& c = cournot_run();
  std::uint64_t queries = 0, run_violations = 0;
  for (const auto& r : c.runs) {
    queries += r.record.audit.queries;
    run_violations += r.record.audit.query_violations + r.record.audit.state_violations;
  }
  return {random_violations == 0 && run_violations == 0,
          fmt::format("random constructions: 100000, violations {}; Cournot run queries: {}, "
                      "query/state violations {}",
                      random_violations, queries, run_violations)};
}

Verdict criterion_consensus() {
  const CournotRun& c = cournot_run();
  bool pass = true;
  std::string detail;
  for (const auto& r : c.runs) {
    std::vector<std::string> parts;
    for (std::size_t i = 0; i < r.record.cluster_sizes.size(); ++i) {
      const double early = consensus_at(r.record, 100, i);
      const double late = consensus_at(r.record, 100000, i);
      const double ratio = late / early;
      pass = pass && late <= 1e-2 * early;
      parts.push_back(fmt::format("c{} {:.4f}", i + 1, ratio));
    }
    detail += fmt::format("{}seed {}: {}", detail.empty() ? "" : "; ", r.summary.seed,
                          fmt::format("{}", fmt::join(parts, ", ")));
  }
  return {pass, "ratio consensus(1e5)/consensus(100) <= 0.01 for every cluster: " + detail};
}

Verdict criterion_mixing() {
  CounterRng rng(2024, StreamTag::kTest, {8});
  int failures = 0;
  double worst_sum = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + rng.below(20);
    UndirectedGraph g(n);
    for (std::size_t k = 1; k < n; ++k) g.add_edge(k, rng.below(k));
    const std::size_t extra = rng.below(n * (n - 1) / 2 + 1);
    for (std::size_t e = 0; e < extra; ++e) {
      const std::size_t a = rng.below(n), b = rng.below(n);
      if (a != b) g.add_edge(a, b);
    }
    const MixingMatrix w = build_metropolis_weights(g);
    const auto& m = w.weights;
    bool ok = validate_mixing(w, g).ok() && m == m.transpose();
    for (Eigen::Index k = 0; k < m.rows(); ++k) {
      worst_sum = std::max({worst_sum, std::abs(m.row(k).sum() - 1.0), std::abs(m.col(k).sum() - 1.0)});
      for (Eigen::Index j = 0; j < m.cols(); ++j) {
        const bool linked = k == j || g.has_edge(static_cast<std::size_t>(k), static_cast<std::size_t>(j));
        ok = ok && ((m(k, j) > 0.0) == linked) && m(k, j) >= 0.0;
      }
    }
    failures += !ok;
  }
  return {failures == 0 && worst_sum <= 1e-12,
          fmt::format("100 random connected graphs, failures {}, worst |row/col sum - 1| = {:.2e} "
                      "(<= 1e-12)",
                      failures, worst_sum)};
}

Verdict criterion_determinism() {
  const Scenario sc = build_scenario(parse_scenario(kCournot));
  const ReferenceNe ne = compute_reference(sc);
  const std::uint64_t seed = 7;
  const SeedRun a = run_seed(sc, seed, ne.solution.point);
  const SeedRun b = run_seed(sc, seed, ne.solution.point);
  const bool csv = trajectory_csv(a.record) == trajectory_csv(b.record);
  const bool json = summary_to_json(a.summary).dump(2) == summary_to_json(b.summary).dump(2);
  const bool state = a.record.final_state == b.record.final_state;
  return {csv && json && state,
          fmt::format("seed {}: CSV identical {}, summary JSON identical {}, final state identical {}",
                      seed, csv, json, state)};
}

Verdict criterion_schedule_gate() {
  const GameSpec g = make_cournot(table1_cournot_params());
  auto report = [&](double a, double b, double sigma0) {
    Schedule s;
    s.alpha0 = 1.0;
    s.sigma0 = sigma0;
    s.a = a;
    s.b = b;
    return validate_schedule(s, g);
  };
  const bool accepts = report(1.0, 1.0 / 3.0, 1.0).ok();
  const auto r11 = report(1.0, 1.0, 1.0);
  const auto r054 = report(0.5, 0.4, 1.0);
  const bool b11 = !r11.ok() && r11.has("2a-2b") &&
                   r11.to_string().find("2a - 2b > 1") != std::string::npos;
  const bool b054 = !r054.ok() && r054.has("a-range") &&
                    r054.to_string().find("1/2 < a <= 1") != std::string::npos;
  bool radius = true;
  for (double s0 : {5.0, 5.0 + 1e-12, 7.5, 10.0, 100.0}) {
    const auto r = report(1.0, 1.0 / 3.0, s0);
    radius = radius && r.has("sigma-radius") &&
             r.to_string().find("sigma_t < min_i r_i") != std::string::npos;
  }
  radius = radius && report(1.0, 1.0 / 3.0, std::nextafter(5.0, 0.0)).ok();
  return {accepts && b11 && b054 && radius,
          fmt::format("accepts (1, 1/3): {}; rejects (1, 1) citing 2a - 2b > 1: {}; rejects "
                      "(0.5, 0.4) citing 1/2 < a <= 1: {}; rejects sigma0 >= min r = 5 citing "
                      "sigma_t < min_i r_i: {}",
                      accepts, b11, b054, radius)};
}

struct Criterion {
  int id;
  const char* name;
  std::function<Verdict()> check;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all{
      {1, "Cournot convergence", criterion_convergence},
      {2, "active bounds at the NE", criterion_active_bounds},
      {3, "NE uniqueness probe", criterion_uniqueness},
      {4, "monotonicity", criterion_monotonicity},
      {5, "estimator scaling laws", criterion_estimator_scaling},
      {6, "feasibility everywhere", criterion_feasibility},
      {7, "consensus decay", criterion_consensus},
      {8, "mixing-matrix invariants", criterion_mixing},
      {9, "determinism", criterion_determinism},
      {10, "schedule gate", criterion_schedule_gate},
  };
  CLI::App app{"Acceptance criteria"};
  std::vector<int> selected;
  app.add_option("--criterion", selected, "Criterion number(s) to run (default: all)");
  CLI11_PARSE(app, argc, argv);

  int failed = 0;
  for (const auto& c : all) {
    if (!selected.empty() && std::find(selected.begin(), selected.end(), c.id) == selected.end())
      continue;
    Verdict v{false, ""};
    try {
      v = c.check();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    failed += !v.pass;
    std::cout << fmt::format("criterion {:>2} {} {}: {}\n", c.id, v.pass ? "PASS" : "FAIL",
                             c.name, v.detail)
              << std::flush;
  }
  return failed == 0 ? 0 : 1;
}
