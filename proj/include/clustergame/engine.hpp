#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "clustergame/game.hpp"
#include "clustergame/graph.hpp"
#include "clustergame/oracle.hpp"
#include "clustergame/schedule.hpp"

namespace clustergame {

// Agent j of cluster i keeps an estimate of the whole cluster action; its own
// action is component j of that estimate.
struct AgentState {
  std::size_t cluster = 0;
  std::size_t agent = 0;
  Vector estimate;
};

struct EngineState {
  std::uint64_t steps = 0;                     // completed iterations
  std::vector<std::vector<Vector>> estimates;  // [i][j], each of length n_i

  AgentState agent(std::size_t i, std::size_t j) const {
    return {i, j, estimates.at(i).at(j)};
  }
  // Joint action formed by each agent's own component.
  JointAction joint_action() const;

  bool operator==(const EngineState&) const;
};

enum class InitialStateMode { kMidpoint, kLower, kUpper, kRandom, kExplicit };

std::string to_string(InitialStateMode mode);
std::optional<InitialStateMode> parse_initial_state_mode(const std::string& name);

// Counters accumulated while stepping; every query and every post-update
// estimate is checked against its box.
struct StepAudit {
  std::uint64_t queries = 0;
  std::uint64_t query_violations = 0;
  std::uint64_t oracle_values = 0;
  std::uint64_t state_violations = 0;
  double max_mix_drift = 0.0;  // |cluster average after mixing - before|

  bool operator==(const StepAudit&) const = default;
};

// One recorded row. alpha and sigma are the schedule values the next step
// will use, i.e. those at t = t_offset + iteration.
struct RecordEntry {
  std::uint64_t iteration = 0;
  double alpha = 0.0;
  double sigma = 0.0;
  double err_to_ne = 0.0;  // NaN when no reference equilibrium was given
  std::vector<double> consensus;  // per cluster
  JointAction x;
};

struct RunRecord {
  std::vector<std::size_t> cluster_sizes;
  std::vector<RecordEntry> entries;
  std::uint64_t seed = 0;
  std::string scenario_hash;
  std::string policy;
  StepAudit audit;
  EngineState final_state;
};

// max_j ||x^(j) - mean||; zero for identical states.
double consensus_error(const std::vector<Vector>& states);

class GradientPlayEngine {
 public:
  // One mixing matrix per cluster. The schedule is validated here and a
  // ScheduleViolation thrown when it is unusable for this game.
  GradientPlayEngine(std::shared_ptr<const GameSpec> spec, std::vector<MixingMatrix> mixing,
                     Schedule schedule, CombinationPolicy policy, std::uint64_t seed);

  EngineState initial_state(InitialStateMode mode = InitialStateMode::kMidpoint,
                            const std::optional<JointAction>& point = std::nullopt) const;

  EngineState step(const EngineState& state, StepAudit* audit = nullptr) const;

  // `iterations` steps from `init`, recording every `record_every` iterations
  // and the final state.
  RunRecord run(const EngineState& init, std::uint64_t iterations, std::uint64_t record_every,
                const std::optional<JointAction>& reference = std::nullopt) const;

  const GameSpec& game() const { return *spec_; }
  const Schedule& schedule() const { return schedule_; }
  const CombinationPolicy& policy() const { return policy_; }
  std::uint64_t seed() const { return seed_; }

 private:
  RecordEntry make_entry(const EngineState& s,
                         const std::optional<JointAction>& reference) const;

  std::shared_ptr<const GameSpec> spec_;
  std::vector<MixingMatrix> mixing_;
  Schedule schedule_;
  CombinationPolicy policy_;
  std::uint64_t seed_;
  ZeroOrderOracle oracle_;
};

}  // namespace clustergame
