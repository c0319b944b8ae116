#include "clustergame/engine.hpp"

#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "clustergame/errors.hpp"
#include "clustergame/estimator.hpp"
#include "clustergame/rng.hpp"

namespace clustergame {

JointAction EngineState::joint_action() const {
  std::size_t dim = 0;
  for (const auto& c : estimates) dim += c.size();
  JointAction x(static_cast<Eigen::Index>(dim));
  Eigen::Index off = 0;
  for (const auto& c : estimates) {
    for (std::size_t j = 0; j < c.size(); ++j) x[off + static_cast<Eigen::Index>(j)] =
        c[j][static_cast<Eigen::Index>(j)];
    off += static_cast<Eigen::Index>(c.size());
  }
  return x;
}

bool EngineState::operator==(const EngineState& other) const {
  if (steps != other.steps || estimates.size() != other.estimates.size()) return false;
  for (std::size_t i = 0; i < estimates.size(); ++i) {
    if (estimates[i].size() != other.estimates[i].size()) return false;
    for (std::size_t j = 0; j < estimates[i].size(); ++j) {
      if (estimates[i][j].size() != other.estimates[i][j].size()) return false;
      if (estimates[i][j] != other.estimates[i][j]) return false;
    }
  }
  return true;
}

std::string to_string(InitialStateMode mode) {
  switch (mode) {
    case InitialStateMode::kMidpoint:
      return "midpoint";
    case InitialStateMode::kLower:
      return "lower";
    case InitialStateMode::kUpper:
      return "upper";
    case InitialStateMode::kRandom:
      return "random";
    case InitialStateMode::kExplicit:
      return "explicit";
  }
  return "unknown";
}

std::optional<InitialStateMode> parse_initial_state_mode(const std::string& name) {
  if (name == "midpoint") return InitialStateMode::kMidpoint;
  if (name == "lower") return InitialStateMode::kLower;
  if (name == "upper") return InitialStateMode::kUpper;
  if (name == "random") return InitialStateMode::kRandom;
  if (name == "explicit") return InitialStateMode::kExplicit;
  return std::nullopt;
}

double consensus_error(const std::vector<Vector>& states) {
  if (states.empty()) throw UsageError("consensus error of an empty cluster");
  Vector mean = Vector::Zero(states.front().size());
  for (const auto& s : states) mean += s;
  mean /= static_cast<double>(states.size());
  double worst = 0.0;
  for (const auto& s : states) worst = std::max(worst, (s - mean).norm());
  return worst;
}

GradientPlayEngine::GradientPlayEngine(std::shared_ptr<const GameSpec> spec,
                                       std::vector<MixingMatrix> mixing, Schedule schedule,
                                       CombinationPolicy policy, std::uint64_t seed)
    : spec_(std::move(spec)),
      mixing_(std::move(mixing)),
      schedule_(schedule),
      policy_(std::move(policy)),
      seed_(seed),
      oracle_(spec_, [&] {
        CombinationPolicy p = policy_;
        p.seed = seed;
        return p;
      }()) {
  policy_.seed = seed;
  if (!spec_) throw UsageError("engine needs a game");
  if (mixing_.size() != spec_->cluster_count()) {
    throw UsageError(fmt::format("engine: {} mixing matrices for {} clusters", mixing_.size(),
                                 spec_->cluster_count()));
  }
  for (std::size_t i = 0; i < mixing_.size(); ++i) {
    if (mixing_[i].size() != spec_->agent_count(i)) {
      throw UsageError(fmt::format("engine: mixing matrix {} is {}x{}, cluster has {} agents",
                                   i, mixing_[i].size(), mixing_[i].size(),
                                   spec_->agent_count(i)));
    }
  }
  const auto report = validate_schedule(schedule_, *spec_);
  if (!report.ok()) throw ScheduleViolation("invalid schedule:\n" + report.to_string());
}

EngineState GradientPlayEngine::initial_state(InitialStateMode mode,
                                              const std::optional<JointAction>& point) const {
  EngineState s;
  s.estimates.resize(spec_->cluster_count());
  for (std::size_t i = 0; i < spec_->cluster_count(); ++i) {
    const auto& c = spec_->cluster(i);
    for (std::size_t j = 0; j < c.agent_count(); ++j) {
      Vector v;
      switch (mode) {
        case InitialStateMode::kMidpoint:
          v = c.midpoint();
          break;
        case InitialStateMode::kLower:
          v = c.lower();
          break;
        case InitialStateMode::kUpper:
          v = c.upper();
          break;
        case InitialStateMode::kRandom: {
          CounterRng rng(seed_, StreamTag::kInitialState, {i, j});
          v.resize(static_cast<Eigen::Index>(c.agent_count()));
          for (std::size_t k = 0; k < c.agent_count(); ++k) {
            v[static_cast<Eigen::Index>(k)] =
                rng.uniform(c.interval(k).lower, c.interval(k).upper);
          }
          break;
        }
        case InitialStateMode::kExplicit:
          if (!point) throw UsageError("explicit initial state needs a joint action");
          spec_->require_feasible(*point);
          v = spec_->block(*point, i);
          break;
      }
      s.estimates[i].push_back(std::move(v));
    }
  }
  return s;
}

EngineState GradientPlayEngine::step(const EngineState& state, StepAudit* audit) const {
  const std::size_t n_clusters = spec_->cluster_count();
  if (state.estimates.size() != n_clusters) throw UsageError("step: state/game mismatch");
  const std::uint64_t t = schedule_.t_offset + state.steps;
  const double alpha = schedule_.alpha(t);
  const double sigma = schedule_.sigma(t);

  std::vector<std::size_t> sizes(n_clusters);
  for (std::size_t i = 0; i < n_clusters; ++i) sizes[i] = spec_->agent_count(i);

  // (1) mix iteration-t estimates, (2) build and submit queries.
  std::vector<std::vector<Vector>> mixed(n_clusters);
  std::vector<std::vector<SphereSample>> samples(n_clusters);
  QueryRound round(sizes, t);
  for (std::size_t i = 0; i < n_clusters; ++i) {
    const auto& cluster = spec_->cluster(i);
    const auto& xs = state.estimates[i];
    if (xs.size() != sizes[i]) throw UsageError("step: cluster size mismatch");
    mixed[i] = mix(mixing_[i], xs);
    if (audit) {
      Vector before = Vector::Zero(static_cast<Eigen::Index>(sizes[i]));
      Vector after = before;
      for (std::size_t j = 0; j < sizes[i]; ++j) {
        before += xs[j];
        after += mixed[i][j];
      }
      const double drift =
          ((after - before) / static_cast<double>(sizes[i])).lpNorm<Eigen::Infinity>();
      audit->max_mix_drift = std::max(audit->max_mix_drift, drift);
    }
    samples[i].reserve(sizes[i]);
    for (std::size_t j = 0; j < sizes[i]; ++j) {
      CounterRng rng(seed_, StreamTag::kSphere, {t, i, j});
      samples[i].push_back(sample_unit_sphere(sizes[i], rng));
      Vector q = build_query_point(xs[j], samples[i][j], sigma, cluster);
      if (audit) {
        ++audit->queries;
        if (!cluster.contains(q)) ++audit->query_violations;
      }
      round.submit(i, j, std::move(q));
    }
  }

  // (3) oracle barrier, (4) one-point estimates, (5) projected step.
  const OracleAnswer answer = oracle_.answer(round);
  EngineState next;
  next.steps = state.steps + 1;
  next.estimates.resize(n_clusters);
  for (std::size_t i = 0; i < n_clusters; ++i) {
    const auto& cluster = spec_->cluster(i);
    next.estimates[i].reserve(sizes[i]);
    for (std::size_t j = 0; j < sizes[i]; ++j) {
      const GradientEstimate g =
          estimate_gradient(answer.values[i][j], samples[i][j], sigma, sizes[i]);
      if (audit) ++audit->oracle_values;
      Vector x = project_cluster(cluster, mixed[i][j] - alpha * g.d);
      if (audit && !cluster.contains(x)) ++audit->state_violations;
      next.estimates[i].push_back(std::move(x));
    }
  }
  return next;
}

RecordEntry GradientPlayEngine::make_entry(const EngineState& s,
                                           const std::optional<JointAction>& reference) const {
  RecordEntry e;
  e.iteration = s.steps;
  const std::uint64_t t = schedule_.t_offset + s.steps;
  e.alpha = schedule_.alpha(t);
  e.sigma = schedule_.sigma(t);
  e.x = s.joint_action();
  e.err_to_ne = reference ? (e.x - *reference).norm()
                          : std::numeric_limits<double>::quiet_NaN();
  e.consensus.reserve(s.estimates.size());
  for (const auto& c : s.estimates) e.consensus.push_back(consensus_error(c));
  return e;
}

RunRecord GradientPlayEngine::run(const EngineState& init, std::uint64_t iterations,
                                  std::uint64_t record_every,
                                  const std::optional<JointAction>& reference) const {
  if (record_every == 0) throw UsageError("record_every must be positive");
  if (reference && static_cast<std::size_t>(reference->size()) != spec_->dimension()) {
    throw UsageError("reference equilibrium has the wrong dimension");
  }
  RunRecord rec;
  rec.seed = seed_;
  rec.policy = to_string(policy_.mode);
  for (std::size_t i = 0; i < spec_->cluster_count(); ++i)
    rec.cluster_sizes.push_back(spec_->agent_count(i));
  EngineState state = init;
  rec.entries.push_back(make_entry(state, reference));
  for (std::uint64_t k = 1; k <= iterations; ++k) {
    state = step(state, &rec.audit);
    if (k % record_every == 0 || k == iterations) {
      rec.entries.push_back(make_entry(state, reference));
    }
  }
  rec.final_state = std::move(state);
  return rec;
}

}  // namespace clustergame
