#include "clustergame/output.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <fmt/format.h>

#include "clustergame/errors.hpp"

namespace clustergame {

namespace {

std::string num17(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return fmt::format("{:.17g}", v);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

// RFC 4180 record splitter; `pos` advances past the record terminator.
std::vector<std::string> csv_record(const std::string& text, std::size_t& pos) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  while (pos < text.size()) {
    const char ch = text[pos++];
    if (quoted) {
      if (ch == '"') {
        if (pos < text.size() && text[pos] == '"') {
          cur += '"';
          ++pos;
        } else {
          quoted = false;
        }
      } else {
        cur += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else if (ch == '\r' || ch == '\n') {
      if (ch == '\r' && pos < text.size() && text[pos] == '\n') ++pos;
      break;
    } else {
      cur += ch;
    }
  }
  if (quoted) throw IoError("unterminated quoted CSV field");
  fields.push_back(std::move(cur));
  return fields;
}

double parse_double(const std::string& s) {
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  double v = 0.0;
  auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || end != s.data() + s.size()) {
    throw IoError(fmt::format("malformed number '{}' in CSV", s));
  }
  return v;
}

std::uint64_t parse_u64(const std::string& s) {
  std::uint64_t v = 0;
  auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || end != s.data() + s.size()) {
    throw IoError(fmt::format("malformed integer '{}' in CSV", s));
  }
  return v;
}

}  // namespace

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(fmt::format("cannot open '{}' for writing", path.string()));
  out << text;
  out.flush();
  if (!out) throw IoError(fmt::format("write to '{}' failed", path.string()));
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(fmt::format("cannot open '{}'", path.string()));
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string trajectory_csv(const RunRecord& record) {
  if (record.entries.empty()) throw UsageError("trajectory CSV needs at least one entry");
  std::vector<std::string> header{"iteration", "alpha", "sigma", "err_to_ne"};
  for (std::size_t i = 0; i < record.cluster_sizes.size(); ++i)
    header.push_back(fmt::format("consensus_c{}", i + 1));
  for (std::size_t i = 0; i < record.cluster_sizes.size(); ++i)
    for (std::size_t j = 0; j < record.cluster_sizes[i]; ++j)
      header.push_back(fmt::format("x_{}_{}", i + 1, j + 1));

  std::string out;
  auto emit = [&](const std::vector<std::string>& fields) {
    for (std::size_t k = 0; k < fields.size(); ++k) {
      if (k) out += ',';
      out += csv_field(fields[k]);
    }
    out += "\r\n";
  };
  emit(header);
  for (const auto& e : record.entries) {
    std::vector<std::string> row{std::to_string(e.iteration), num17(e.alpha), num17(e.sigma),
                                 num17(e.err_to_ne)};
    for (double c : e.consensus) row.push_back(num17(c));
    for (Eigen::Index k = 0; k < e.x.size(); ++k) row.push_back(num17(e.x[k]));
    if (row.size() != header.size()) throw UsageError("record entry does not match its header");
    emit(row);
  }
  return out;
}

void write_trajectory_csv(const RunRecord& record, const std::filesystem::path& path) {
  write_text_file(path, trajectory_csv(record));
}

RunRecord read_trajectory_csv(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  std::size_t pos = 0;
  const auto header = csv_record(text, pos);
  if (header.size() < 4 || header[0] != "iteration" || header[3] != "err_to_ne") {
    throw IoError(fmt::format("'{}' is not a trajectory CSV", path.string()));
  }
  RunRecord record;
  std::size_t clusters = 0;
  std::size_t col = 4;
  while (col < header.size() && header[col].rfind("consensus_c", 0) == 0) {
    ++clusters;
    ++col;
  }
  record.cluster_sizes.assign(clusters, 0);
  for (; col < header.size(); ++col) {
    unsigned i = 0, j = 0;
    if (std::sscanf(header[col].c_str(), "x_%u_%u", &i, &j) != 2 || i == 0 || i > clusters) {
      throw IoError(fmt::format("unexpected CSV column '{}'", header[col]));
    }
    record.cluster_sizes[i - 1] += 1;
  }
  while (pos < text.size()) {
    const auto row = csv_record(text, pos);
    if (row.size() == 1 && row[0].empty()) continue;
    if (row.size() != header.size()) {
      throw IoError(fmt::format("CSV row has {} fields, header has {}", row.size(),
                                header.size()));
    }
    RecordEntry e;
    e.iteration = parse_u64(row[0]);
    e.alpha = parse_double(row[1]);
    e.sigma = parse_double(row[2]);
    e.err_to_ne = parse_double(row[3]);
    for (std::size_t i = 0; i < clusters; ++i) e.consensus.push_back(parse_double(row[4 + i]));
    const std::size_t first = 4 + clusters;
    e.x.resize(static_cast<Eigen::Index>(row.size() - first));
    for (std::size_t k = first; k < row.size(); ++k)
      e.x[static_cast<Eigen::Index>(k - first)] = parse_double(row[k]);
    record.entries.push_back(std::move(e));
  }
  return record;
}

RunSummary summarize(const RunRecord& record, const Schedule& schedule,
                     const std::optional<JointAction>& reference, double wall_clock) {
  if (record.entries.empty()) throw UsageError("cannot summarize an empty record");
  const RecordEntry& last = record.entries.back();
  RunSummary s;
  s.final_x = last.x;
  s.final_error = reference ? (last.x - *reference).norm()
                            : std::numeric_limits<double>::quiet_NaN();
  s.consensus = last.consensus;
  s.wall_clock = wall_clock;
  s.seed = record.seed;
  s.iterations = last.iteration;
  s.schedule = schedule;
  s.policy = record.policy;
  s.scenario_hash = record.scenario_hash;
  s.audit = record.audit;
  return s;
}

nlohmann::json summary_to_json(const RunSummary& s) {
  nlohmann::json out;
  out["scenario_hash"] = s.scenario_hash;
  out["seed"] = s.seed;
  out["iterations"] = s.iterations;
  out["policy"] = s.policy;
  if (std::isnan(s.final_error)) {
    out["final_error"] = nullptr;
  } else {
    out["final_error"] = s.final_error;
  }
  out["consensus"] = s.consensus;
  out["final_x"] = std::vector<double>(s.final_x.data(), s.final_x.data() + s.final_x.size());
  out["schedule"] = {{"alpha0", s.schedule.alpha0},
                     {"sigma0", s.schedule.sigma0},
                     {"a", s.schedule.a},
                     {"b", s.schedule.b},
                     {"t_offset", s.schedule.t_offset}};
  out["audit"] = {{"queries", s.audit.queries},
                  {"query_violations", s.audit.query_violations},
                  {"oracle_values", s.audit.oracle_values},
                  {"state_violations", s.audit.state_violations},
                  {"max_mix_drift", s.audit.max_mix_drift}};
  return out;
}

void write_summary_json(const RunSummary& summary, const std::filesystem::path& path) {
  write_text_file(path, summary_to_json(summary).dump(2) + "\n");
}

void write_timing_json(const RunSummary& summary, const std::filesystem::path& path) {
  nlohmann::json j{{"seed", summary.seed}, {"wall_clock_seconds", summary.wall_clock}};
  write_text_file(path, j.dump(2) + "\n");
}

namespace {

constexpr double kWidth = 960, kTopH = 420, kBotH = 240, kMargin = 60, kGap = 50;
const char* const kClusterColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                      "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

std::string color_of(std::size_t i) { return kClusterColors[i % std::size(kClusterColors)]; }

struct Axis {
  double lo, hi, px_lo, px_hi;
  double operator()(double v) const {
    const double span = hi - lo;
    return px_lo + (span > 0 ? (v - lo) / span : 0.5) * (px_hi - px_lo);
  }
};

std::string f2(double v) { return fmt::format("{:.2f}", v); }

}  // namespace

std::string convergence_svg(const std::vector<RunRecord>& records,
                            const std::optional<JointAction>& reference) {
  if (records.empty()) throw UsageError("convergence plot needs at least one record");
  for (const auto& r : records) {
    if (r.entries.empty()) throw UsageError("convergence plot needs nonempty records");
    if (r.cluster_sizes != records.front().cluster_sizes ||
        r.scenario_hash != records.front().scenario_hash) {
      throw UsageError("records in one plot must share a scenario");
    }
  }
  const auto& sizes = records.front().cluster_sizes;

  double t_max = 1, y_lo = std::numeric_limits<double>::infinity(), y_hi = -y_lo;
  double e_lo = y_lo, e_hi = -y_lo;
  for (const auto& r : records) {
    t_max = std::max(t_max, static_cast<double>(r.entries.back().iteration));
    for (const auto& e : r.entries) {
      if (e.x.size()) {
        y_lo = std::min(y_lo, e.x.minCoeff());
        y_hi = std::max(y_hi, e.x.maxCoeff());
      }
      if (std::isfinite(e.err_to_ne) && e.err_to_ne > 0) {
        e_lo = std::min(e_lo, std::log10(e.err_to_ne));
        e_hi = std::max(e_hi, std::log10(e.err_to_ne));
      }
    }
  }
  if (reference && reference->size()) {
    y_lo = std::min(y_lo, reference->minCoeff());
    y_hi = std::max(y_hi, reference->maxCoeff());
  }
  if (!std::isfinite(y_lo)) y_lo = 0, y_hi = 1;
  const double pad = 0.05 * std::max(1e-9, y_hi - y_lo);
  y_lo -= pad;
  y_hi += pad;
  const bool has_error = std::isfinite(e_lo);
  if (has_error) {
    e_lo = std::floor(e_lo);
    e_hi = std::max(std::ceil(e_hi), e_lo + 1);
  }

  const double height = kTopH + kGap + kBotH + 2 * kMargin;
  const Axis tx{0, t_max, kMargin, kWidth - kMargin - 140};
  const Axis ty{y_lo, y_hi, kMargin + kTopH, kMargin};
  const double bot_top = kMargin + kTopH + kGap;
  const Axis ey{e_lo, e_hi, bot_top + kBotH, bot_top};

  std::string svg;
  svg += fmt::format(
      "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" "
      "viewBox=\"0 0 {} {}\" font-family=\"sans-serif\" font-size=\"12\">\n",
      kWidth, height, kWidth, height);
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  auto frame = [&](double top, double h, const std::string& title, const std::string& ylabel) {
    svg += fmt::format(
        "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"black\"/>\n",
        f2(tx.px_lo), f2(top), f2(tx.px_hi - tx.px_lo), f2(h));
    svg += fmt::format("<text x=\"{}\" y=\"{}\" font-size=\"14\">{}</text>\n", f2(tx.px_lo),
                       f2(top - 8), title);
    svg += fmt::format(
        "<text x=\"{}\" y=\"{}\" transform=\"rotate(-90 {} {})\" text-anchor=\"middle\">{}"
        "</text>\n",
        f2(18), f2(top + h / 2), f2(18), f2(top + h / 2), ylabel);
    for (int k = 0; k <= 5; ++k) {
      const double t = t_max * k / 5.0;
      svg += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{:g}</text>\n",
                         f2(tx(t)), f2(top + h + 16), t);
    }
  };

  frame(kMargin, kTopH, "Agent actions", "x");
  for (int k = 0; k <= 4; ++k) {
    const double v = y_lo + (y_hi - y_lo) * k / 4.0;
    svg += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"end\">{:.3g}</text>\n",
                       f2(tx.px_lo - 4), f2(ty(v) + 4), v);
  }

  // Dashed reference lines first so trajectories draw over them.
  if (reference) {
    std::size_t k = 0;
    for (std::size_t i = 0; i < sizes.size(); ++i) {
      for (std::size_t j = 0; j < sizes[i]; ++j, ++k) {
        const double v = (*reference)[static_cast<Eigen::Index>(k)];
        svg += fmt::format(
            "<line class=\"reference\" data-value=\"{}\" x1=\"{}\" y1=\"{}\" x2=\"{}\" "
            "y2=\"{}\" stroke=\"{}\" stroke-dasharray=\"6 4\" stroke-width=\"1\"/>\n",
            num17(v), f2(tx.px_lo), f2(ty(v)), f2(tx.px_hi), f2(ty(v)), color_of(i));
      }
    }
  }

  for (std::size_t r = 0; r < records.size(); ++r) {
    const auto& rec = records[r];
    const double opacity = records.size() > 1 ? 0.75 : 1.0;
    std::size_t k = 0;
    for (std::size_t i = 0; i < sizes.size(); ++i) {
      for (std::size_t j = 0; j < sizes[i]; ++j, ++k) {
        std::string d;
        for (const auto& e : rec.entries) {
          d += fmt::format("{}{},{}", d.empty() ? "M" : " L", f2(tx(double(e.iteration))),
                           f2(ty(e.x[static_cast<Eigen::Index>(k)])));
        }
        svg += fmt::format(
            "<path class=\"trajectory\" data-seed=\"{}\" data-agent=\"{}.{}\" d=\"{}\" "
            "fill=\"none\" stroke=\"{}\" stroke-width=\"1.2\" stroke-opacity=\"{}\"/>\n",
            rec.seed, i + 1, j + 1, d, color_of(i), opacity);
      }
    }
  }

  frame(bot_top, kBotH, "Error to reference equilibrium", "log10 ||x - x*||");
  if (has_error) {
    for (double v = e_lo; v <= e_hi + 1e-9; v += 1) {
      svg += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"end\">1e{:g}</text>\n",
                         f2(tx.px_lo - 4), f2(ey(v) + 4), v);
    }
    const char* const dashes[] = {"", "4 2", "1 2", "8 3 2 3"};
    for (std::size_t r = 0; r < records.size(); ++r) {
      std::string d;
      for (const auto& e : records[r].entries) {
        if (!(std::isfinite(e.err_to_ne) && e.err_to_ne > 0)) continue;
        d += fmt::format("{}{},{}", d.empty() ? "M" : " L", f2(tx(double(e.iteration))),
                         f2(ey(std::log10(e.err_to_ne))));
      }
      if (d.empty()) continue;
      const char* dash = dashes[r % std::size(dashes)];
      svg += fmt::format(
          "<path class=\"error\" data-seed=\"{}\" d=\"{}\" fill=\"none\" stroke=\"black\" "
          "stroke-width=\"1.2\"{}/>\n",
          records[r].seed, d, *dash ? fmt::format(" stroke-dasharray=\"{}\"", dash) : "");
    }
  } else {
    svg += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">no reference "
                       "equilibrium</text>\n",
                       f2((tx.px_lo + tx.px_hi) / 2), f2(bot_top + kBotH / 2));
  }
  svg += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">iteration</text>\n",
                     f2((tx.px_lo + tx.px_hi) / 2), f2(bot_top + kBotH + 34));

  // Legend: clusters, then seeds.
  double ly = kMargin + 10;
  const double lx = tx.px_hi + 16;
  for (std::size_t i = 0; i < sizes.size(); ++i, ly += 18) {
    svg += fmt::format(
        "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{}\" stroke-width=\"2\"/>"
        "<text x=\"{}\" y=\"{}\">cluster {}</text>\n",
        f2(lx), f2(ly), f2(lx + 20), f2(ly), color_of(i), f2(lx + 26), f2(ly + 4), i + 1);
  }
  if (reference) {
    svg += fmt::format(
        "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"gray\" "
        "stroke-dasharray=\"6 4\"/><text x=\"{}\" y=\"{}\">x*</text>\n",
        f2(lx), f2(ly), f2(lx + 20), f2(ly), f2(lx + 26), f2(ly + 4));
    ly += 18;
  }
  ly += 8;
  for (const auto& r : records) {
    svg += fmt::format("<text class=\"legend-seed\" x=\"{}\" y=\"{}\">seed {}</text>\n", f2(lx),
                       f2(ly + 4), r.seed);
    ly += 16;
  }
  svg += "</svg>\n";
  return svg;
}

void emit_convergence_plot(const std::vector<RunRecord>& records,
                           const std::optional<JointAction>& reference,
                           const std::filesystem::path& path) {
  write_text_file(path, convergence_svg(records, reference));
}

}  // namespace clustergame
