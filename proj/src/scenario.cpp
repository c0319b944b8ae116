#include "clustergame/scenario.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "clustergame/games.hpp"

#define TOML_EXCEPTIONS 1
#include "toml.hpp"

namespace clustergame {

std::string SourcePosition::to_string() const {
  if (line == 0) return file;
  return fmt::format("{}:{}:{}", file, line, column);
}

namespace {

struct Issues {
  std::string file;
  std::vector<std::pair<std::string, SourcePosition>> missing;
  std::vector<std::pair<std::string, SourcePosition>> unknown;
  ValidationReport invalid;
  std::optional<SourcePosition> first_invalid;

  SourcePosition at(const toml::source_region& r) const {
    return {file, r.begin.line, r.begin.column};
  }
  void bad(const std::string& code, const SourcePosition& where, const std::string& msg) {
    if (!first_invalid) first_invalid = where;
    invalid.add(code, where.to_string() + ": " + msg);
  }
};

// One TOML table plus bookkeeping of which keys were consumed.
class Section {
 public:
  Section(const toml::table* table, std::string path, Issues& issues, SourcePosition where)
      : table_(table), path_(std::move(path)), issues_(&issues), where_(std::move(where)) {}

  bool present() const { return table_ != nullptr; }
  const SourcePosition& where() const { return where_; }
  std::string path(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

  const toml::node* get(const std::string& key, bool required) {
    used_.insert(key);
    const toml::node* n = table_ ? table_->get(key) : nullptr;
    if (!n && required) issues_->missing.emplace_back(path(key), where_);
    return n;
  }

  std::optional<double> real(const std::string& key, bool required) {
    const toml::node* n = get(key, required);
    if (!n) return std::nullopt;
    if (auto v = n->value<double>(); v && (n->is_floating_point() || n->is_integer())) {
      return *v;
    }
    type_error(key, *n, "a number");
    return std::nullopt;
  }

  std::optional<std::int64_t> integer(const std::string& key, bool required) {
    const toml::node* n = get(key, required);
    if (!n) return std::nullopt;
    if (n->is_integer()) return n->as_integer()->get();
    type_error(key, *n, "an integer");
    return std::nullopt;
  }

  std::optional<std::uint64_t> count(const std::string& key, bool required) {
    auto v = integer(key, required);
    if (!v) return std::nullopt;
    if (*v < 0) {
      issues_->bad("value", issues_->at(table_->get(key)->source()),
                   fmt::format("{} must be nonnegative, got {}", path(key), *v));
      return std::nullopt;
    }
    return static_cast<std::uint64_t>(*v);
  }

  std::optional<std::string> string(const std::string& key, bool required) {
    const toml::node* n = get(key, required);
    if (!n) return std::nullopt;
    if (n->is_string()) return n->as_string()->get();
    type_error(key, *n, "a string");
    return std::nullopt;
  }

  std::optional<std::vector<double>> reals(const std::string& key, bool required) {
    const toml::node* n = get(key, required);
    if (!n) return std::nullopt;
    const toml::array* arr = n->as_array();
    if (!arr) {
      type_error(key, *n, "an array of numbers");
      return std::nullopt;
    }
    std::vector<double> out;
    for (const auto& el : *arr) {
      if (!(el.is_floating_point() || el.is_integer())) {
        type_error(key, el, "an array of numbers");
        return std::nullopt;
      }
      out.push_back(*el.value<double>());
    }
    return out;
  }

  std::optional<std::vector<std::int64_t>> integers(const std::string& key, bool required) {
    const toml::node* n = get(key, required);
    if (!n) return std::nullopt;
    const toml::array* arr = n->as_array();
    if (!arr) {
      type_error(key, *n, "an array of integers");
      return std::nullopt;
    }
    std::vector<std::int64_t> out;
    for (const auto& el : *arr) {
      if (!el.is_integer()) {
        type_error(key, el, "an array of integers");
        return std::nullopt;
      }
      out.push_back(el.as_integer()->get());
    }
    return out;
  }

  const toml::array* array(const std::string& key, bool required) {
    const toml::node* n = get(key, required);
    if (!n) return nullptr;
    if (!n->is_array()) {
      type_error(key, *n, "an array");
      return nullptr;
    }
    return n->as_array();
  }

  Section table(const std::string& key) {
    const toml::node* n = get(key, false);
    if (n && !n->is_table()) {
      type_error(key, *n, "a table");
      n = nullptr;
    }
    const SourcePosition where = n ? issues_->at(n->source()) : where_;
    return Section(n ? n->as_table() : nullptr, path(key), *issues_, where);
  }

  // Array of tables such as [[game.clusters]].
  std::vector<Section> tables(const std::string& key, bool required) {
    std::vector<Section> out;
    const toml::array* arr = array(key, required);
    if (!arr) return out;
    std::size_t idx = 0;
    for (const auto& el : *arr) {
      if (!el.is_table()) {
        type_error(key, el, "an array of tables");
        return {};
      }
      out.emplace_back(el.as_table(), fmt::format("{}[{}]", path(key), idx++), *issues_,
                       issues_->at(el.source()));
    }
    return out;
  }

  void finish() {
    if (!table_) return;
    for (const auto& [k, v] : *table_) {
      if (!used_.count(std::string(k.str()))) {
        issues_->unknown.emplace_back(path(std::string(k.str())), issues_->at(k.source()));
      }
    }
  }

  Issues& issues() { return *issues_; }

 private:
  void type_error(const std::string& key, const toml::node& n, const char* expected) {
    issues_->bad("type", issues_->at(n.source()),
                 fmt::format("{} must be {}", path(key), expected));
  }

  const toml::table* table_;
  std::string path_;
  Issues* issues_;
  SourcePosition where_;
  std::set<std::string> used_;
};

ClusterConfig read_cluster(Section& s, const std::string& kind) {
  ClusterConfig c;
  const bool cournot = kind == "cournot";
  const bool quadratic = kind == "quadratic-separable";
  if (cournot) {
    c.a = s.reals("a", true).value_or(std::vector<double>{});
    c.b = s.reals("b", true).value_or(std::vector<double>{});
    c.c = s.reals("c", true).value_or(std::vector<double>{});
  }
  if (quadratic) c.target = s.reals("target", true).value_or(std::vector<double>{});
  if (!cournot && !quadratic) {
    // The kind itself is reported; its coefficient arrays are not unknown.
    for (const char* key : {"a", "b", "c", "target"}) s.get(key, false);
  }
  c.lower = s.reals("lower", true).value_or(std::vector<double>{});
  c.upper = s.reals("upper", true).value_or(std::vector<double>{});
  c.safety_center = s.reals("safety_center", false);
  c.safety_radius = s.real("safety_radius", false);

  const auto preset = s.string("graph", false);
  const toml::array* edges = s.array("edges", false);
  if (preset && edges) {
    s.issues().bad("graph", s.where(),
                   fmt::format("{}: give either a graph preset or an edge list, not both",
                               s.path("graph")));
  }
  if (preset) {
    if (!UndirectedGraph::is_preset(*preset)) {
      s.issues().bad("graph", s.where(),
                     fmt::format("{}: unknown graph preset '{}' (complete, ring, path, star)",
                                 s.path("graph"), *preset));
    }
    c.graph.preset = *preset;
  }
  if (edges) {
    c.graph.preset.clear();
    for (const auto& el : *edges) {
      const toml::array* pair = el.as_array();
      if (!pair || pair->size() != 2 || !(*pair)[0].is_integer() || !(*pair)[1].is_integer() ||
          (*pair)[0].as_integer()->get() < 0 || (*pair)[1].as_integer()->get() < 0) {
        s.issues().bad("type", s.issues().at(el.source()),
                       fmt::format("{}: each edge is a pair of agent indices [k, j]",
                                   s.path("edges")));
        continue;
      }
      c.graph.edges.emplace_back(static_cast<std::size_t>((*pair)[0].as_integer()->get()),
                                 static_cast<std::size_t>((*pair)[1].as_integer()->get()));
    }
  }
  s.finish();

  auto expect_len = [&](const std::vector<double>& v, const char* key) {
    if (v.size() != c.lower.size()) {
      s.issues().bad("length", s.where(),
                     fmt::format("{} has {} entries but lower has {}", s.path(key), v.size(),
                                 c.lower.size()));
    }
  };
  if (c.lower.empty() && !c.upper.empty()) {
    s.issues().bad("length", s.where(), s.path("lower") + " must not be empty");
  }
  expect_len(c.upper, "upper");
  if (cournot) {
    expect_len(c.a, "a");
    expect_len(c.b, "b");
    expect_len(c.c, "c");
  }
  if (quadratic) expect_len(c.target, "target");
  if (c.safety_center) expect_len(*c.safety_center, "safety_center");
  return c;
}

ScenarioConfig read_config(const toml::table& root, Issues& issues) {
  ScenarioConfig cfg;
  Section top(&root, "", issues, SourcePosition{issues.file, 1, 1});
  cfg.name = top.string("name", false).value_or("");

  Section game = top.table("game");
  const auto kind = game.string("kind", true);
  if (kind) {
    if (*kind != "cournot" && *kind != "quadratic-separable") {
      issues.bad("kind", game.where(),
                 fmt::format("game.kind '{}' is not a known game (cournot, "
                             "quadratic-separable)",
                             *kind));
    }
    cfg.game.kind = *kind;
  }
  if (cfg.game.kind == "cournot") {
    cfg.game.price_constant = game.real("price_constant", true).value_or(0.0);
  }
  for (auto& cs : game.tables("clusters", true)) {
    cfg.game.clusters.push_back(read_cluster(cs, cfg.game.kind));
  }
  if (game.present() && game.get("clusters", false) && cfg.game.clusters.empty()) {
    issues.bad("clusters", game.where(), "game.clusters must contain at least one cluster");
  }
  game.finish();

  Section sched = top.table("schedule");
  cfg.schedule.alpha0 = sched.real("alpha0", true).value_or(0.0);
  cfg.schedule.sigma0 = sched.real("sigma0", true).value_or(0.0);
  cfg.schedule.a = sched.real("a", true).value_or(0.0);
  cfg.schedule.b = sched.real("b", true).value_or(0.0);
  cfg.schedule.t_offset = sched.count("t_offset", false).value_or(1);
  sched.finish();

  Section policy = top.table("policy");
  if (auto mode = policy.string("mode", false)) {
    if (auto m = parse_combination_mode(*mode)) {
      cfg.policy = *m;
    } else {
      issues.bad("policy", policy.where(),
                 fmt::format("policy.mode '{}' is not one of uniform-random, fixed-agent, "
                             "round-robin",
                             *mode));
    }
  }
  const bool fixed = cfg.policy == CombinationMode::kFixedAgent;
  if (auto agents = policy.integers("fixed", fixed)) {
    for (auto a : *agents) {
      if (a < 0) issues.bad("policy", policy.where(), "policy.fixed entries must be >= 0");
      cfg.fixed_agents.push_back(static_cast<std::size_t>(std::max<std::int64_t>(a, 0)));
    }
  }
  policy.finish();

  Section run = top.table("run");
  cfg.iterations = run.count("iterations", true).value_or(0);
  if (auto seeds = run.integers("seeds", true)) {
    if (seeds->empty()) issues.bad("seeds", run.where(), "run.seeds must not be empty");
    for (auto s : *seeds) {
      if (s < 0) issues.bad("seeds", run.where(), "run.seeds entries must be >= 0");
      cfg.seeds.push_back(static_cast<std::uint64_t>(s));
    }
  }
  cfg.record_every = run.count("record_every", false).value_or(100);
  if (auto mode = run.string("initial_state", false)) {
    if (auto m = parse_initial_state_mode(*mode)) {
      cfg.initial_state = *m;
    } else {
      issues.bad("initial_state", run.where(),
                 fmt::format("run.initial_state '{}' is not one of midpoint, lower, upper, "
                             "random, explicit",
                             *mode));
    }
  }
  const bool explicit_init = cfg.initial_state == InitialStateMode::kExplicit;
  cfg.initial_point = run.reals("initial_point", explicit_init).value_or(std::vector<double>{});
  run.finish();

  Section solver = top.table("solver");
  cfg.solver.tol = solver.real("tol", false).value_or(1e-8);
  cfg.solver.max_iter = solver.count("max_iter", false).value_or(1'000'000);
  solver.finish();

  top.finish();
  return cfg;
}

template <class Pairs>
std::string join_paths(const Pairs& items) {
  std::string out;
  for (const auto& [path, where] : items) {
    if (!out.empty()) out += ", ";
    out += path;
  }
  return out;
}

template <class Pairs>
std::vector<std::string> paths_of(const Pairs& items) {
  std::vector<std::string> out;
  for (const auto& [path, where] : items) out.push_back(path);
  return out;
}

// Model-level checks that need the whole config: they run only once the file
// is structurally complete.
void check_model(const ScenarioConfig& cfg, const std::string& file) {
  const SourcePosition where{file, 0, 0};
  Scenario sc = build_scenario(cfg);
  ValidationReport report = validate_scenario(sc);
  if (!report.ok()) {
    throw ConstraintViolationError(
        fmt::format("{}: scenario violates {} constraint(s):\n{}", file,
                    report.violations.size(), report.to_string()),
        where, report);
  }
}

ScenarioConfig parse_impl(std::string_view text, const std::string& source) {
  toml::table root;
  try {
    root = toml::parse(text, std::string_view(source));
  } catch (const toml::parse_error& err) {
    const SourcePosition where{source, err.source().begin.line, err.source().begin.column};
    throw ConfigSyntaxError(
        fmt::format("{}: syntax error: {}", where.to_string(), err.description()), where);
  }
  Issues issues;
  issues.file = source;
  ScenarioConfig cfg = read_config(root, issues);

  if (!issues.unknown.empty()) {
    std::string detail;
    for (const auto& [path, where] : issues.unknown)
      detail += fmt::format("\n  {}: unknown field '{}'", where.to_string(), path);
    throw UnknownFieldError(fmt::format("{}: unknown field(s): {}{}", source,
                                        join_paths(issues.unknown), detail),
                            issues.unknown.front().second, paths_of(issues.unknown));
  }
  if (!issues.missing.empty()) {
    std::string detail;
    for (const auto& [path, where] : issues.missing)
      detail += fmt::format("\n  {}: missing required field '{}'", where.to_string(), path);
    throw MissingFieldError(fmt::format("{}: missing required field(s): {}{}", source,
                                        join_paths(issues.missing), detail),
                            issues.missing.front().second, paths_of(issues.missing));
  }
  if (!issues.invalid.ok()) {
    throw ConstraintViolationError(
        fmt::format("{}: invalid value(s):\n{}", source, issues.invalid.to_string()),
        *issues.first_invalid, issues.invalid);
  }
  check_model(cfg, source);
  return cfg;
}

std::string format_real(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  std::string s(buf, end);
  if (std::isfinite(v) && s.find_first_of(".eE") == std::string::npos) s += ".0";
  if (std::isinf(v)) s = v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) s = "nan";
  return s;
}

std::string format_reals(const std::vector<double>& v) {
  std::string s = "[";
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (k) s += ", ";
    s += format_real(v[k]);
  }
  return s + "]";
}

template <class Int>
std::string format_ints(const std::vector<Int>& v) {
  std::string s = "[";
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (k) s += ", ";
    s += std::to_string(v[k]);
  }
  return s + "]";
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch;
  }
  return out + "\"";
}

std::vector<ActionInterval> intervals_of(const ClusterConfig& c, std::size_t i) {
  std::vector<ActionInterval> ivs;
  for (std::size_t j = 0; j < c.lower.size(); ++j) {
    try {
      ivs.emplace_back(c.lower[j], c.upper[j]);
    } catch (const UsageError& e) {
      throw UsageError(fmt::format("cluster {} agent {}: {}", i, j, e.what()));
    }
  }
  return ivs;
}

}  // namespace

ScenarioConfig parse_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(fmt::format("cannot open scenario file '{}'", path.string()));
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_impl(buf.str(), path.string());
}

ScenarioConfig parse_scenario_string(std::string_view text, const std::string& source) {
  return parse_impl(text, source);
}

std::string write_scenario(const ScenarioConfig& cfg) {
  std::string out;
  auto line = [&](const std::string& s) { out += s + "\n"; };
  line("name = " + quote(cfg.name));
  line("");
  line("[game]");
  line("kind = " + quote(cfg.game.kind));
  if (cfg.game.kind == "cournot") line("price_constant = " + format_real(cfg.game.price_constant));
  for (const auto& c : cfg.game.clusters) {
    line("");
    line("[[game.clusters]]");
    if (cfg.game.kind == "cournot") {
      line("a = " + format_reals(c.a));
      line("b = " + format_reals(c.b));
      line("c = " + format_reals(c.c));
    }
    if (cfg.game.kind == "quadratic-separable") line("target = " + format_reals(c.target));
    line("lower = " + format_reals(c.lower));
    line("upper = " + format_reals(c.upper));
    if (c.safety_center) line("safety_center = " + format_reals(*c.safety_center));
    if (c.safety_radius) line("safety_radius = " + format_real(*c.safety_radius));
    if (c.graph.edges.empty()) {
      line("graph = " + quote(c.graph.preset));
    } else {
      std::string e = "edges = [";
      for (std::size_t k = 0; k < c.graph.edges.size(); ++k) {
        if (k) e += ", ";
        e += fmt::format("[{}, {}]", c.graph.edges[k].first, c.graph.edges[k].second);
      }
      line(e + "]");
    }
  }
  line("");
  line("[schedule]");
  line("alpha0 = " + format_real(cfg.schedule.alpha0));
  line("sigma0 = " + format_real(cfg.schedule.sigma0));
  line("a = " + format_real(cfg.schedule.a));
  line("b = " + format_real(cfg.schedule.b));
  line("t_offset = " + std::to_string(cfg.schedule.t_offset));
  line("");
  line("[policy]");
  line("mode = " + quote(to_string(cfg.policy)));
  if (!cfg.fixed_agents.empty()) line("fixed = " + format_ints(cfg.fixed_agents));
  line("");
  line("[run]");
  line("iterations = " + std::to_string(cfg.iterations));
  line("seeds = " + format_ints(cfg.seeds));
  line("record_every = " + std::to_string(cfg.record_every));
  line("initial_state = " + quote(to_string(cfg.initial_state)));
  if (!cfg.initial_point.empty()) line("initial_point = " + format_reals(cfg.initial_point));
  line("");
  line("[solver]");
  line("tol = " + format_real(cfg.solver.tol));
  line("max_iter = " + std::to_string(cfg.solver.max_iter));
  return out;
}

std::string scenario_hash(const ScenarioConfig& config) {
  const std::string canonical = write_scenario(config);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : canonical) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return fmt::format("{:016x}", h);
}

CournotParams cournot_params(const GameConfig& game) {
  CournotParams p;
  p.price_constant = game.price_constant;
  for (const auto& c : game.clusters) {
    auto& agents = p.clusters.emplace_back();
    for (std::size_t j = 0; j < c.lower.size(); ++j) {
      agents.push_back({c.a.at(j), c.b.at(j), c.c.at(j), c.lower[j], c.upper[j]});
    }
  }
  return p;
}

Scenario build_scenario(const ScenarioConfig& cfg) {
  Scenario sc;
  sc.config = cfg;
  sc.hash = scenario_hash(cfg);
  const SourcePosition where{cfg.name, 0, 0};
  auto fail = [&](const std::string& code, const std::string& msg) {
    ValidationReport r;
    r.add(code, msg);
    throw ConstraintViolationError(msg, where, r);
  };
  try {
    std::vector<std::optional<SafetyBall>> balls;
    std::vector<std::vector<ActionInterval>> intervals;
    for (std::size_t i = 0; i < cfg.game.clusters.size(); ++i) {
      const auto& c = cfg.game.clusters[i];
      intervals.push_back(intervals_of(c, i));
      if (c.safety_center || c.safety_radius) {
        SafetyBall ball = default_safety_ball(intervals.back());
        if (c.safety_center) {
          ball.center = Eigen::Map<const Vector>(c.safety_center->data(),
                                                 static_cast<Eigen::Index>(c.safety_center->size()));
          if (!c.safety_radius) {
            double slack = std::numeric_limits<double>::infinity();
            for (std::size_t j = 0; j < intervals.back().size(); ++j) {
              slack = std::min({slack, ball.center[static_cast<Eigen::Index>(j)] -
                                           intervals.back()[j].lower,
                                intervals.back()[j].upper -
                                    ball.center[static_cast<Eigen::Index>(j)]});
            }
            ball.radius = slack;
          }
        }
        if (c.safety_radius) ball.radius = *c.safety_radius;
        balls.emplace_back(std::move(ball));
      } else {
        balls.emplace_back(std::nullopt);
      }
    }
    if (cfg.game.kind == "cournot") {
      sc.game = std::make_shared<const GameSpec>(make_cournot(cournot_params(cfg.game), balls));
    } else if (cfg.game.kind == "quadratic-separable") {
      QuadraticParams qp;
      qp.intervals = intervals;
      for (const auto& c : cfg.game.clusters) {
        qp.targets.push_back(
            Eigen::Map<const Vector>(c.target.data(), static_cast<Eigen::Index>(c.target.size())));
      }
      sc.game = std::make_shared<const GameSpec>(make_quadratic_separable(qp, balls));
    } else {
      fail("kind", fmt::format("unknown game kind '{}'", cfg.game.kind));
    }
  } catch (const UsageError& e) {
    fail("game", e.what());
  }

  for (std::size_t i = 0; i < cfg.game.clusters.size(); ++i) {
    const auto& g = cfg.game.clusters[i].graph;
    const std::size_t n = sc.game->agent_count(i);
    try {
      sc.graphs.push_back(g.edges.empty()
                              ? UndirectedGraph::preset(g.preset, n)
                              : UndirectedGraph(n, g.edges));
    } catch (const UsageError& e) {
      fail("graph", fmt::format("cluster {} graph: {}", i, e.what()));
    }
    if (!sc.graphs.back().is_connected()) {
      fail("connectivity", fmt::format("cluster {} communication graph is not connected", i));
    }
    sc.mixing.push_back(build_metropolis_weights(sc.graphs.back()));
  }
  return sc;
}

ValidationReport validate_scenario(const Scenario& sc) {
  ValidationReport report;
  const auto& cfg = sc.config;
  report.merge(validate_schedule(cfg.schedule, *sc.game), "schedule: ");
  for (std::size_t i = 0; i < sc.mixing.size(); ++i) {
    report.merge(validate_mixing(sc.mixing[i], sc.graphs[i]),
                 fmt::format("cluster {} mixing: ", i));
  }
  if (cfg.record_every == 0) report.add("record_every", "run.record_every must be positive");
  if (cfg.policy == CombinationMode::kFixedAgent) {
    if (cfg.fixed_agents.size() != sc.game->cluster_count()) {
      report.add("policy", fmt::format("policy.fixed needs one agent per cluster ({}), got {}",
                                       sc.game->cluster_count(), cfg.fixed_agents.size()));
    } else {
      for (std::size_t k = 0; k < cfg.fixed_agents.size(); ++k) {
        if (cfg.fixed_agents[k] >= sc.game->agent_count(k)) {
          report.add("policy", fmt::format("policy.fixed[{}] = {} is not an agent of cluster {}",
                                           k, cfg.fixed_agents[k], k));
        }
      }
    }
  }
  if (cfg.initial_state == InitialStateMode::kExplicit) {
    if (cfg.initial_point.size() != sc.game->dimension()) {
      report.add("initial_point",
                 fmt::format("run.initial_point has {} entries, the game has dimension {}",
                             cfg.initial_point.size(), sc.game->dimension()));
    } else {
      const Vector x = Eigen::Map<const Vector>(cfg.initial_point.data(),
                                                static_cast<Eigen::Index>(cfg.initial_point.size()));
      if (!sc.game->contains(x)) report.add("initial_point", "run.initial_point is infeasible");
    }
  }
  if (!(cfg.solver.tol > 0.0)) report.add("solver", "solver.tol must be positive");
  if (cfg.game.kind == "cournot") {
    // Price positivity over the whole box: the minimum price sits at the
    // upper corner.
    const double min_price = cfg.game.price_constant - sc.game->upper().sum();
    if (!(min_price > 0.0)) {
      report.add("price", fmt::format("P(x) > 0 requires P_c > total capacity {}",
                                      sc.game->upper().sum()));
    }
  }
  return report;
}

GradientPlayEngine make_engine(const Scenario& sc, std::uint64_t seed) {
  CombinationPolicy policy;
  policy.mode = sc.config.policy;
  policy.fixed = sc.config.fixed_agents;
  return GradientPlayEngine(sc.game, sc.mixing, sc.config.schedule, policy, seed);
}

EngineState make_initial_state(const Scenario& sc, const GradientPlayEngine& engine) {
  std::optional<JointAction> point;
  if (sc.config.initial_state == InitialStateMode::kExplicit) {
    point = Eigen::Map<const Vector>(sc.config.initial_point.data(),
                                     static_cast<Eigen::Index>(sc.config.initial_point.size()));
  }
  return engine.initial_state(sc.config.initial_state, point);
}

}  // namespace clustergame
