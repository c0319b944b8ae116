#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "clustergame/engine.hpp"
#include "clustergame/schedule.hpp"
#include "clustergame/solver.hpp"

#include "json.hpp"

namespace clustergame {

// Header: iteration,alpha,sigma,err_to_ne,consensus_c1..cn,x_1_1,..,x_n_{n_n}.
// Numbers use 17 significant digits so a reread is bit-exact. Throws IoError.
void write_trajectory_csv(const RunRecord& record, const std::filesystem::path& path);
std::string trajectory_csv(const RunRecord& record);

// Recovers cluster_sizes and entries; the other RunRecord fields are left
// default. Throws IoError on unreadable or malformed input.
RunRecord read_trajectory_csv(const std::filesystem::path& path);

struct RunSummary {
  double final_error = 0.0;  // NaN without a reference equilibrium
  std::vector<double> consensus;
  double wall_clock = 0.0;  // seconds
  std::uint64_t seed = 0;
  std::uint64_t iterations = 0;
  Schedule schedule;
  std::string policy;
  std::string scenario_hash;
  StepAudit audit;
  JointAction final_x;
};

RunSummary summarize(const RunRecord& record, const Schedule& schedule,
                     const std::optional<JointAction>& reference, double wall_clock);

// The summary leaves wall_clock out so that reruns compare byte-identical;
// timing is kept in a separate file.
nlohmann::json summary_to_json(const RunSummary& summary);
void write_summary_json(const RunSummary& summary, const std::filesystem::path& path);
void write_timing_json(const RunSummary& summary, const std::filesystem::path& path);

// Static SVG: per-agent trajectories colored by cluster with the reference
// components dashed, and a log-scale error panel below. The records must come
// from the same scenario.
void emit_convergence_plot(const std::vector<RunRecord>& records,
                           const std::optional<JointAction>& reference,
                           const std::filesystem::path& path);
std::string convergence_svg(const std::vector<RunRecord>& records,
                            const std::optional<JointAction>& reference);

void write_text_file(const std::filesystem::path& path, const std::string& text);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace clustergame
