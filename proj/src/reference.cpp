#include "clustergame/reference.hpp"

#include <fmt/format.h>

#include "clustergame/output.hpp"

namespace clustergame {

ReferenceNe compute_reference(const Scenario& scenario) {
  const GameSpec& game = *scenario.game;
  SolverOptions opts;
  opts.tol = scenario.config.solver.tol;
  opts.max_iter = scenario.config.solver.max_iter;
  ReferenceNe ne;
  ne.scenario_hash = scenario.hash;
  ne.solution = solve_vi(game, opts);
  ne.kkt = verify_ne_kkt(game, ne.solution.point, kKktTolerance);
  for (std::size_t i = 0; i < game.cluster_count(); ++i) {
    ne.best_response_gaps.push_back(
        best_response_check(game, ne.solution.point, i, kBestResponseGrid));
  }
  return ne;
}

namespace {

const char* status_name(BoundStatus s) {
  switch (s) {
    case BoundStatus::kAtLower: return "lower";
    case BoundStatus::kAtUpper: return "upper";
    case BoundStatus::kInterior: break;
  }
  return "interior";
}

std::vector<double> to_std(const Vector& v) { return {v.data(), v.data() + v.size()}; }

}  // namespace

nlohmann::json reference_to_json(const ReferenceNe& ne) {
  nlohmann::json kkt{{"max_violation", ne.kkt.max_violation},
                     {"worst_component", ne.kkt.worst_component},
                     {"violations", ne.kkt.violations},
                     {"tol", ne.kkt.tol},
                     {"ok", ne.kkt.ok()}};
  std::vector<std::string> status;
  for (auto s : ne.kkt.status) status.emplace_back(status_name(s));
  kkt["status"] = status;
  return {{"scenario_hash", ne.scenario_hash},
          {"x_star", to_std(ne.solution.point)},
          {"residual", ne.solution.residual},
          {"iterations", ne.solution.iterations},
          {"converged", ne.solution.converged},
          {"step", ne.solution.step},
          {"kkt", kkt},
          {"best_response_gaps", ne.best_response_gaps}};
}

ReferenceNe load_or_compute_reference(const Scenario& scenario,
                                      const std::filesystem::path& dir) {
  const auto path = dir / fmt::format("reference_ne_{}.json", scenario.hash);
  if (std::filesystem::exists(path)) {
    try {
      const auto j = nlohmann::json::parse(read_text_file(path));
      if (j.at("scenario_hash").get<std::string>() == scenario.hash) {
        ReferenceNe ne;
        ne.scenario_hash = scenario.hash;
        const auto x = j.at("x_star").get<std::vector<double>>();
        ne.solution.point = Eigen::Map<const Vector>(x.data(), static_cast<Eigen::Index>(x.size()));
        ne.solution.residual = j.at("residual").get<double>();
        ne.solution.iterations = j.at("iterations").get<std::uint64_t>();
        ne.solution.converged = j.at("converged").get<bool>();
        ne.solution.step = j.at("step").get<double>();
        ne.best_response_gaps = j.at("best_response_gaps").get<std::vector<double>>();
        if (ne.solution.point.size() == static_cast<Eigen::Index>(scenario.game->dimension()) &&
            scenario.game->contains(ne.solution.point)) {
          ne.kkt = verify_ne_kkt(*scenario.game, ne.solution.point, kKktTolerance);
          return ne;
        }
      }
    } catch (const nlohmann::json::exception&) {
      // Stale or corrupt cache: fall through and recompute.
    }
  }
  ReferenceNe ne = compute_reference(scenario);
  std::filesystem::create_directories(dir);
  write_text_file(path, reference_to_json(ne).dump(2) + "\n");
  return ne;
}

}  // namespace clustergame
