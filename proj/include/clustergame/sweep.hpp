#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "clustergame/output.hpp"
#include "clustergame/scenario.hpp"

namespace clustergame {

struct SeedRun {
  RunRecord record;
  RunSummary summary;
};

// One seed of a scenario, timed. Writes nothing.
SeedRun run_seed(const Scenario& scenario, std::uint64_t seed,
                 const std::optional<JointAction>& reference);

// Writes trajectory.csv, summary.json, timing.json and convergence.svg into
// `dir`, creating it.
void write_seed_outputs(const SeedRun& run, const std::optional<JointAction>& reference,
                        const std::filesystem::path& dir);

struct Aggregate {
  double median = 0.0;
  double min = 0.0;
  double max = 0.0;
};

Aggregate aggregate(std::vector<double> values);

// Seeds run concurrently, at most `jobs` at a time (0: hardware concurrency).
// Results come back in seed order.
std::vector<SeedRun> run_seeds(const Scenario& scenario, const std::vector<std::uint64_t>& seeds,
                               const std::optional<JointAction>& reference, unsigned jobs = 0);

}  // namespace clustergame
