#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "clustergame/engine.hpp"
#include "clustergame/errors.hpp"
#include "clustergame/game.hpp"
#include "clustergame/games.hpp"
#include "clustergame/graph.hpp"
#include "clustergame/oracle.hpp"
#include "clustergame/schedule.hpp"

namespace clustergame {

struct SourcePosition {
  std::string file;
  std::uint32_t line = 0;
  std::uint32_t column = 0;

  std::string to_string() const;
};

// Base of all scenario-file errors; `where` points at the offending node.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& message, SourcePosition where)
      : Error(message), where_(std::move(where)) {}
  const SourcePosition& where() const { return where_; }

 private:
  SourcePosition where_;
};

class ConfigSyntaxError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

class UnknownFieldError : public ConfigError {
 public:
  UnknownFieldError(const std::string& message, SourcePosition where,
                    std::vector<std::string> fields)
      : ConfigError(message, std::move(where)), fields_(std::move(fields)) {}
  const std::vector<std::string>& fields() const { return fields_; }

 private:
  std::vector<std::string> fields_;
};

class MissingFieldError : public ConfigError {
 public:
  MissingFieldError(const std::string& message, SourcePosition where,
                    std::vector<std::string> fields)
      : ConfigError(message, std::move(where)), fields_(std::move(fields)) {}
  const std::vector<std::string>& fields() const { return fields_; }

 private:
  std::vector<std::string> fields_;
};

// Wrong value type or a value that breaks a model constraint.
class ConstraintViolationError : public ConfigError {
 public:
  ConstraintViolationError(const std::string& message, SourcePosition where,
                           ValidationReport report)
      : ConfigError(message, std::move(where)), report_(std::move(report)) {}
  const ValidationReport& report() const { return report_; }

 private:
  ValidationReport report_;
};

struct GraphConfig {
  std::string preset = "complete";  // used when `edges` is empty
  std::vector<std::pair<std::size_t, std::size_t>> edges;

  bool operator==(const GraphConfig&) const = default;
};

struct ClusterConfig {
  // Cournot coefficients (kind = "cournot").
  std::vector<double> a, b, c;
  // Equilibrium targets (kind = "quadratic-separable").
  std::vector<double> target;
  std::vector<double> lower, upper;
  std::optional<std::vector<double>> safety_center;
  std::optional<double> safety_radius;
  GraphConfig graph;

  bool operator==(const ClusterConfig&) const = default;
};

struct GameConfig {
  std::string kind;  // "cournot" or "quadratic-separable"
  double price_constant = 0.0;
  std::vector<ClusterConfig> clusters;

  bool operator==(const GameConfig&) const = default;
};

struct SolverConfig {
  double tol = 1e-8;
  std::uint64_t max_iter = 1'000'000;

  bool operator==(const SolverConfig&) const = default;
};

struct ScenarioConfig {
  std::string name;
  GameConfig game;
  Schedule schedule;
  CombinationMode policy = CombinationMode::kUniformRandom;
  std::vector<std::size_t> fixed_agents;
  std::uint64_t iterations = 0;
  std::vector<std::uint64_t> seeds;
  std::uint64_t record_every = 100;
  InitialStateMode initial_state = InitialStateMode::kMidpoint;
  std::vector<double> initial_point;
  SolverConfig solver;

  bool operator==(const ScenarioConfig&) const = default;
};

// Parses and fully validates a scenario: field presence and types, then the
// game, the schedule (validate_schedule) and every mixing matrix
// (validate_mixing). Throws one of the ConfigError subclasses.
ScenarioConfig parse_scenario(const std::filesystem::path& path);
ScenarioConfig parse_scenario_string(std::string_view text,
                                     const std::string& source = "<string>");

// Canonical TOML: fixed key order, every default spelled out, shortest
// round-trip number formatting.
std::string write_scenario(const ScenarioConfig& config);

// FNV-1a over the canonical form, as 16 hex digits.
std::string scenario_hash(const ScenarioConfig& config);

// A config turned into runnable objects.
struct Scenario {
  ScenarioConfig config;
  std::shared_ptr<const GameSpec> game;
  std::vector<UndirectedGraph> graphs;
  std::vector<MixingMatrix> mixing;
  std::string hash;
};

// Throws ConstraintViolationError when the game or graphs cannot be built.
Scenario build_scenario(const ScenarioConfig& config);

// Every check that `validate` runs: schedule, graphs, mixing matrices, safety
// balls, Cournot price positivity. Never throws.
ValidationReport validate_scenario(const Scenario& scenario);

GradientPlayEngine make_engine(const Scenario& scenario, std::uint64_t seed);
EngineState make_initial_state(const Scenario& scenario, const GradientPlayEngine& engine);

// The Cournot parameters described by a "cournot" config.
CournotParams cournot_params(const GameConfig& game);

}  // namespace clustergame
