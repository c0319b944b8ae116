#include "clustergame/sweep.hpp"

#include <algorithm>
#include <chrono>
#include <future>
#include <thread>

#include "clustergame/errors.hpp"

namespace clustergame {

SeedRun run_seed(const Scenario& scenario, std::uint64_t seed,
                 const std::optional<JointAction>& reference) {
  const auto start = std::chrono::steady_clock::now();
  const GradientPlayEngine engine = make_engine(scenario, seed);
  const EngineState init = make_initial_state(scenario, engine);
  SeedRun out;
  out.record = engine.run(init, scenario.config.iterations, scenario.config.record_every,
                          reference);
  out.record.scenario_hash = scenario.hash;
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  out.summary = summarize(out.record, scenario.config.schedule, reference, secs);
  return out;
}

void write_seed_outputs(const SeedRun& run, const std::optional<JointAction>& reference,
                        const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  write_trajectory_csv(run.record, dir / "trajectory.csv");
  write_summary_json(run.summary, dir / "summary.json");
  write_timing_json(run.summary, dir / "timing.json");
  emit_convergence_plot({run.record}, reference, dir / "convergence.svg");
}

Aggregate aggregate(std::vector<double> values) {
  if (values.empty()) throw UsageError("aggregate of no values");
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  Aggregate a;
  a.min = values.front();
  a.max = values.back();
  a.median = n % 2 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
  return a;
}

std::vector<SeedRun> run_seeds(const Scenario& scenario, const std::vector<std::uint64_t>& seeds,
                               const std::optional<JointAction>& reference, unsigned jobs) {
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  std::vector<SeedRun> out(seeds.size());
  for (std::size_t first = 0; first < seeds.size(); first += jobs) {
    const std::size_t last = std::min(seeds.size(), first + jobs);
    std::vector<std::future<SeedRun>> batch;
    for (std::size_t k = first; k < last; ++k) {
      batch.push_back(std::async(std::launch::async, run_seed, std::cref(scenario), seeds[k],
                                 std::cref(reference)));
    }
    for (std::size_t k = first; k < last; ++k) out[k] = batch[k - first].get();
  }
  return out;
}

}  // namespace clustergame
