#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "clustergame/scenario.hpp"
#include "clustergame/solver.hpp"

#include "json.hpp"

namespace clustergame {

// The reference equilibrium of a scenario together with its certificates.
struct ReferenceNe {
  std::string scenario_hash;
  VISolution solution;
  KktReport kkt;
  std::vector<double> best_response_gaps;  // per cluster
};

inline constexpr double kKktTolerance = 1e-6;
inline constexpr std::size_t kBestResponseGrid = 11;

ReferenceNe compute_reference(const Scenario& scenario);

nlohmann::json reference_to_json(const ReferenceNe& ne);

// Reads `reference_ne_<hash>.json` from `dir` if present, otherwise solves
// and writes it.
ReferenceNe load_or_compute_reference(const Scenario& scenario, const std::filesystem::path& dir);

}  // namespace clustergame
