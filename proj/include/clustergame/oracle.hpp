#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "clustergame/game.hpp"

namespace clustergame {

enum class CombinationMode { kUniformRandom, kFixedAgent, kRoundRobin };

std::string to_string(CombinationMode mode);
std::optional<CombinationMode> parse_combination_mode(const std::string& name);

// How the oracle picks which agent's query stands in for each other cluster.
struct CombinationPolicy {
  CombinationMode mode = CombinationMode::kUniformRandom;
  std::vector<std::size_t> fixed;  // one agent index per cluster (fixed-agent mode)
  std::uint64_t seed = 0;          // uniform-random mode

  static CombinationPolicy uniform_random(std::uint64_t seed) {
    return {CombinationMode::kUniformRandom, {}, seed};
  }
  static CombinationPolicy fixed_agent(std::vector<std::size_t> agents) {
    return {CombinationMode::kFixedAgent, std::move(agents), 0};
  }
  static CombinationPolicy round_robin() { return {CombinationMode::kRoundRobin, {}, 0}; }

  bool operator==(const CombinationPolicy&) const = default;
};

// Representative j_k of cluster k for the joint query of agent (i, j) at
// iteration t. Uniform-random draws are independent per (i, j, k, t).
std::size_t choose_representative(const CombinationPolicy& policy, std::uint64_t t,
                                  std::size_t i, std::size_t j, std::size_t k,
                                  std::size_t cluster_size);

// All query points submitted in one synchronous round.
class QueryRound {
 public:
  QueryRound(std::vector<std::size_t> cluster_sizes, std::uint64_t iteration);

  void submit(std::size_t i, std::size_t j, Vector query);
  bool complete() const;
  // Throws ProtocolError when agent (i, j) has not submitted.
  const Vector& query(std::size_t i, std::size_t j) const;

  std::uint64_t iteration() const { return iteration_; }
  std::size_t cluster_count() const { return queries_.size(); }
  std::size_t agent_count(std::size_t i) const { return queries_.at(i).size(); }

 private:
  std::uint64_t iteration_;
  std::vector<std::vector<std::optional<Vector>>> queries_;
};

struct OracleAnswer {
  std::vector<std::vector<double>> values;  // [i][j]
  // [i][j][k]: agent of cluster k whose query was used; equals j when k == i.
  std::vector<std::vector<std::vector<std::size_t>>> representatives;
};

// Joint point (own query for cluster i, representatives' queries elsewhere).
// `chosen`, when given, receives the representative per cluster.
JointAction assemble_joint_query(const QueryRound& round, std::size_t i, std::size_t j,
                                 const CombinationPolicy& policy,
                                 std::vector<std::size_t>* chosen = nullptr);

// Scalar cost values only; the caller never sees a gradient.
OracleAnswer answer_queries(const GameSpec& spec, const QueryRound& round,
                            const CombinationPolicy& policy);

// The system-wide oracle as an object: owns the game and the combination
// policy, answers complete rounds with cost values.
class ZeroOrderOracle {
 public:
  ZeroOrderOracle(std::shared_ptr<const GameSpec> spec, CombinationPolicy policy)
      : spec_(std::move(spec)), policy_(std::move(policy)) {}

  OracleAnswer answer(const QueryRound& round) const {
    return answer_queries(*spec_, round, policy_);
  }
  const CombinationPolicy& policy() const { return policy_; }

 private:
  std::shared_ptr<const GameSpec> spec_;
  CombinationPolicy policy_;
};

}  // namespace clustergame
