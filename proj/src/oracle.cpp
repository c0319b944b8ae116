#include "clustergame/oracle.hpp"

#include <fmt/format.h>

#include "clustergame/errors.hpp"
#include "clustergame/rng.hpp"

namespace clustergame {

std::string to_string(CombinationMode mode) {
  switch (mode) {
    case CombinationMode::kUniformRandom:
      return "uniform-random";
    case CombinationMode::kFixedAgent:
      return "fixed-agent";
    case CombinationMode::kRoundRobin:
      return "round-robin";
  }
  return "unknown";
}

std::optional<CombinationMode> parse_combination_mode(const std::string& name) {
  if (name == "uniform-random") return CombinationMode::kUniformRandom;
  if (name == "fixed-agent") return CombinationMode::kFixedAgent;
  if (name == "round-robin") return CombinationMode::kRoundRobin;
  return std::nullopt;
}

std::size_t choose_representative(const CombinationPolicy& policy, std::uint64_t t,
                                  std::size_t i, std::size_t j, std::size_t k,
                                  std::size_t cluster_size) {
  if (cluster_size == 0) throw UsageError("representative of an empty cluster");
  switch (policy.mode) {
    case CombinationMode::kFixedAgent: {
      if (k >= policy.fixed.size()) {
        throw UsageError(fmt::format("fixed-agent policy names no agent for cluster {}", k));
      }
      const auto a = policy.fixed[k];
      if (a >= cluster_size) {
        throw UsageError(fmt::format(
            "fixed-agent policy picks agent {} but cluster {} has {} agents", a, k,
            cluster_size));
      }
      return a;
    }
    case CombinationMode::kRoundRobin:
      return static_cast<std::size_t>(t % cluster_size);
    case CombinationMode::kUniformRandom: {
      CounterRng rng(policy.seed, StreamTag::kRepresentative, {t, i, j, k});
      return static_cast<std::size_t>(rng.below(cluster_size));
    }
  }
  throw UsageError("unknown combination mode");
}

QueryRound::QueryRound(std::vector<std::size_t> cluster_sizes, std::uint64_t iteration)
    : iteration_(iteration) {
  if (cluster_sizes.empty()) throw UsageError("query round needs at least one cluster");
  for (auto n : cluster_sizes) {
    if (n == 0) throw UsageError("query round: empty cluster");
    queries_.emplace_back(n);
  }
}

void QueryRound::submit(std::size_t i, std::size_t j, Vector query) {
  if (i >= queries_.size() || j >= queries_[i].size()) {
    throw UsageError(fmt::format("query round: no agent ({}, {})", i, j));
  }
  if (static_cast<std::size_t>(query.size()) != queries_[i].size()) {
    throw UsageError(fmt::format("query of agent ({}, {}) has length {}, expected {}", i, j,
                                 query.size(), queries_[i].size()));
  }
  queries_[i][j] = std::move(query);
}

bool QueryRound::complete() const {
  for (const auto& c : queries_)
    for (const auto& q : c)
      if (!q) return false;
  return true;
}

const Vector& QueryRound::query(std::size_t i, std::size_t j) const {
  if (i >= queries_.size() || j >= queries_[i].size()) {
    throw UsageError(fmt::format("query round: no agent ({}, {})", i, j));
  }
  if (!queries_[i][j]) {
    throw ProtocolError(fmt::format(
        "round {} is incomplete: agent ({}, {}) has not submitted", iteration_, i, j));
  }
  return *queries_[i][j];
}

JointAction assemble_joint_query(const QueryRound& round, std::size_t i, std::size_t j,
                                 const CombinationPolicy& policy,
                                 std::vector<std::size_t>* chosen) {
  if (!round.complete()) {
    throw ProtocolError(fmt::format("round {} is incomplete", round.iteration()));
  }
  if (i >= round.cluster_count() || j >= round.agent_count(i)) {
    throw UsageError(fmt::format("no agent ({}, {}) in the round", i, j));
  }
  std::size_t dim = 0;
  for (std::size_t k = 0; k < round.cluster_count(); ++k) dim += round.agent_count(k);
  JointAction x(static_cast<Eigen::Index>(dim));
  if (chosen) chosen->assign(round.cluster_count(), 0);
  Eigen::Index off = 0;
  for (std::size_t k = 0; k < round.cluster_count(); ++k) {
    const std::size_t rep =
        (k == i) ? j
                 : choose_representative(policy, round.iteration(), i, j, k,
                                         round.agent_count(k));
    if (chosen) (*chosen)[k] = rep;
    const Vector& q = round.query(k, rep);
    x.segment(off, q.size()) = q;
    off += q.size();
  }
  return x;
}

OracleAnswer answer_queries(const GameSpec& spec, const QueryRound& round,
                            const CombinationPolicy& policy) {
  if (round.cluster_count() != spec.cluster_count()) {
    throw UsageError(fmt::format("round has {} clusters, game has {}", round.cluster_count(),
                                 spec.cluster_count()));
  }
  for (std::size_t i = 0; i < spec.cluster_count(); ++i) {
    if (round.agent_count(i) != spec.agent_count(i)) {
      throw UsageError(fmt::format("round cluster {} has {} agents, game has {}", i,
                                   round.agent_count(i), spec.agent_count(i)));
    }
  }
  if (!round.complete()) {
    throw ProtocolError(fmt::format("round {} is incomplete", round.iteration()));
  }
  // Every submission is checked before any value is produced.
  for (std::size_t i = 0; i < spec.cluster_count(); ++i) {
    for (std::size_t j = 0; j < spec.agent_count(i); ++j) {
      if (!spec.cluster(i).contains(round.query(i, j))) {
        throw FeasibilityError(fmt::format(
            "agent ({}, {}) submitted a query outside its cluster box at round {}", i, j,
            round.iteration()));
      }
    }
  }
  OracleAnswer answer;
  answer.values.resize(spec.cluster_count());
  answer.representatives.resize(spec.cluster_count());
  for (std::size_t i = 0; i < spec.cluster_count(); ++i) {
    const std::size_t n = spec.agent_count(i);
    answer.values[i].resize(n);
    answer.representatives[i].resize(n);
    for (std::size_t j = 0; j < n; ++j) {
      const JointAction x =
          assemble_joint_query(round, i, j, policy, &answer.representatives[i][j]);
      answer.values[i][j] = eval_local_cost(spec, i, j, x);
    }
  }
  return answer;
}

}  // namespace clustergame
