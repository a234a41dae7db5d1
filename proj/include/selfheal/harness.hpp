#pragma once

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <deque>
#include <fstream>
#include <limits>
#include <memory>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "adversary.hpp"
#include "dash.hpp"
#include "forgiving_graph.hpp"
#include "forgiving_tree.hpp"
#include "graph.hpp"
#include "healer.hpp"

namespace selfheal::sim {

using json = nlohmann::json;

struct BadParams : std::invalid_argument {
  explicit BadParams(const std::string& what) : std::invalid_argument(what) {}
};

// ---- generators ----

inline std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{std::uint32_t(seed), std::uint32_t(seed >> 32), std::uint32_t(stream)};
  std::uint32_t parts[2];
  seq.generate(parts, parts + 2);
  return (std::uint64_t(parts[0]) << 32) | parts[1];
}

// Seeded with a clique on m+1 nodes; node v picks m distinct targets proportionally to degree.
inline Graph gen_pref_attach(std::size_t n, std::size_t m, std::uint64_t seed) {
  if (m < 1 || n <= m) throw BadParams("pref-attach needs n > m >= 1");
  std::mt19937_64 rng(seed);
  Graph g;
  std::vector<NodeId> ends;
  for (NodeId v = 0; v <= m; ++v) g.add_node(v);
  for (NodeId a = 0; a <= m; ++a)
    for (NodeId b = a + 1; b <= m; ++b) {
      g.add_edge(a, b);
      ends.push_back(a);
      ends.push_back(b);
    }
  for (NodeId v = NodeId(m + 1); v < n; ++v) {
    std::set<NodeId> picked;
    std::uniform_int_distribution<std::size_t> d(0, ends.size() - 1);
    while (picked.size() < m) picked.insert(ends[d(rng)]);
    g.add_node(v);
    for (NodeId u : picked) {
      g.add_edge(v, u);
      ends.push_back(v);
      ends.push_back(u);
    }
  }
  return g;
}

inline Graph gen_star(std::size_t n) {
  if (n < 1) throw BadParams("star needs n >= 1");
  Graph g;
  g.add_node(0);
  for (NodeId v = 1; v < n; ++v) {
    g.add_node(v);
    g.add_edge(0, v);
  }
  return g;
}

inline Graph gen_path(std::size_t n) {
  if (n < 1) throw BadParams("path needs n >= 1");
  Graph g;
  g.add_node(0);
  for (NodeId v = 1; v < n; ++v) {
    g.add_node(v);
    g.add_edge(v - 1, v);
  }
  return g;
}

inline Graph gen_kary_tree(std::size_t k, std::size_t depth) {
  if (k < 1) throw BadParams("k-ary tree needs k >= 1");
  Graph g;
  g.add_node(0);
  std::size_t n = adversary::kary_size(k, depth);
  for (NodeId v = 1; v < n; ++v) {
    g.add_node(v);
    g.add_edge(static_cast<NodeId>((v - 1) / k), v);
  }
  return g;
}

// Random recursive tree: each node hangs off a uniformly chosen earlier node with spare degree.
inline Graph gen_random_tree(std::size_t n, std::size_t max_degree, std::uint64_t seed) {
  if (n < 1 || max_degree < 2) throw BadParams("random tree needs n >= 1 and max degree >= 2");
  std::mt19937_64 rng(seed);
  Graph g;
  g.add_node(0);
  std::vector<NodeId> open{0};
  for (NodeId v = 1; v < n; ++v) {
    std::uniform_int_distribution<std::size_t> d(0, open.size() - 1);
    std::size_t i = d(rng);
    NodeId p = open[i];
    g.add_node(v);
    g.add_edge(p, v);
    if (g.degree(p) >= max_degree) {
      open[i] = open.back();
      open.pop_back();
    }
    open.push_back(v);
  }
  return g;
}

// {"nodes": [...], "edges": [[u, v], ...]}
inline Graph graph_from_json(const json& j) {
  Graph g;
  if (j.contains("nodes"))
    for (auto& v : j.at("nodes")) g.add_node(v.get<NodeId>());
  for (auto& e : j.at("edges")) {
    NodeId a = e.at(0).get<NodeId>(), b = e.at(1).get<NodeId>();
    if (!g.has_node(a)) g.add_node(a);
    if (!g.has_node(b)) g.add_node(b);
    g.add_edge(a, b);
  }
  return g;
}

inline json graph_to_json(const Graph& g) {
  json e = json::array();
  for (auto& [a, b] : g.edges()) e.push_back({a, b});
  return {{"nodes", g.nodes()}, {"edges", e}};
}

inline Graph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw BadParams("cannot read " + path);
  return graph_from_json(json::parse(in));
}

// BFS forest rooted at the lowest id of each component.
inline Graph bfs_spanning_tree(const Graph& g) {
  Graph t;
  for (NodeId v : g.nodes()) t.add_node(v);
  std::set<NodeId> seen;
  for (NodeId r : g.nodes()) {
    if (!seen.insert(r).second) continue;
    std::deque<NodeId> q{r};
    while (!q.empty()) {
      NodeId v = q.front();
      q.pop_front();
      for (NodeId u : g.neighbors(v))
        if (seen.insert(u).second) {
          t.add_edge(v, u);
          q.push_back(u);
        }
    }
  }
  return t;
}

// ---- distance metrics ----

namespace detail {
struct Dense {
  std::vector<NodeId> ids;
  std::map<NodeId, std::uint32_t> index;
  std::vector<std::vector<std::uint32_t>> adj;

  explicit Dense(const Graph& g) {
    for (auto& [v, a] : g.adjacency()) {
      index[v] = std::uint32_t(ids.size());
      ids.push_back(v);
    }
    adj.resize(ids.size());
    for (auto& [v, a] : g.adjacency())
      for (NodeId u : a) adj[index[v]].push_back(index[u]);
  }

  std::vector<std::int32_t> bfs(std::uint32_t s) const {
    std::vector<std::int32_t> d(ids.size(), -1);
    std::vector<std::uint32_t> q{s};
    d[s] = 0;
    for (std::size_t i = 0; i < q.size(); ++i)
      for (std::uint32_t u : adj[q[i]])
        if (d[u] < 0) {
          d[u] = d[q[i]] + 1;
          q.push_back(u);
        }
    return d;
  }
};
}  // namespace detail

constexpr double kInf = std::numeric_limits<double>::infinity();

// Diameter as a double; infinity if disconnected, 0 for an empty graph.
inline double diameter_value(const Graph& g) {
  detail::Dense d(g);
  std::int32_t best = 0;
  for (std::uint32_t s = 0; s < d.ids.size(); ++s)
    for (std::int32_t x : d.bfs(s)) {
      if (x < 0) return kInf;
      best = std::max(best, x);
    }
  return best;
}

// Max over actual-graph pairs reachable in the reference of the distance ratio.
inline double compute_stretch(const Graph& actual, const Graph& reference) {
  detail::Dense a(actual), r(reference);
  double worst = 1.0;
  for (std::uint32_t s = 0; s < a.ids.size(); ++s) {
    auto da = a.bfs(s);
    auto dr = r.bfs(r.index.at(a.ids[s]));
    for (std::uint32_t t = 0; t < a.ids.size(); ++t) {
      if (t == s) continue;
      std::int32_t ref = dr[r.index.at(a.ids[t])];
      if (ref <= 0) continue;
      if (da[t] < 0) return kInf;
      worst = std::max(worst, double(da[t]) / ref);
    }
  }
  return worst;
}

// ---- configuration ----

enum class TopologyKind { PrefAttach, Star, KaryTree, Path, RandomTree, File };

struct Topology {
  TopologyKind kind = TopologyKind::PrefAttach;
  std::size_t m = 2;       // pref-attach edges per node, or tree arity
  std::size_t depth = 0;   // k-ary tree depth; 0 = deepest complete tree within n0
  std::size_t max_degree = 16;
  std::string path;
};

struct AttackSpec {
  std::string kind = "nmax";  // max, nmax, random, level, loglog, star, script, mixed
  std::size_t level_m = 2;    // level attack works on (M+2)-ary trees
  long loglog_target = 0;
  double alpha = 2;
  std::vector<Event> script;
  double insert_prob = 0.45;
  std::size_t attach = 2;
  std::size_t max_nodes = 128;
};

struct SimConfig {
  std::size_t n0 = 64;
  Topology topology;
  std::string healer = "dash";
  AttackSpec attack;
  std::size_t rounds = 0;  // 0 = until the adversary is done
  std::uint64_t seed = 1;
  CheckLevel checks = CheckLevel::Fast;
  bool spanning_tree = false;
  bool distances = true;  // diameter and stretch cost an APSP per round
  dash::IdMode ids = dash::IdMode::Integer;
};

inline const std::vector<std::string>& healer_names() {
  static const std::vector<std::string> n{"dash", "sdash", "line", "binheal", "graphheal", "ftree", "fgraph"};
  return n;
}

inline std::unique_ptr<Healer> make_healer(const SimConfig& c) {
  using dash::Variant;
  std::uint64_t hs = stream_seed(c.seed, 2);
  if (c.healer == "dash") return std::make_unique<dash::DashHealer>(Variant::Dash, c.ids, hs);
  if (c.healer == "sdash") return std::make_unique<dash::DashHealer>(Variant::SDash, c.ids, hs);
  if (c.healer == "line") return std::make_unique<dash::DashHealer>(Variant::LineHeal, c.ids, hs);
  if (c.healer == "binheal") return std::make_unique<dash::DashHealer>(Variant::BinaryTreeHeal, c.ids, hs);
  if (c.healer == "graphheal") return std::make_unique<dash::DashHealer>(Variant::GraphHeal, c.ids, hs);
  if (c.healer == "ftree") return std::make_unique<ftree::ForgivingTreeHealer>();
  if (c.healer == "fgraph") return std::make_unique<fgraph::ForgivingGraphHealer>();
  throw BadParams("unknown healer " + c.healer);
}

inline Graph initial_graph(const SimConfig& c) {
  const Topology& t = c.topology;
  Graph g;
  switch (t.kind) {
    case TopologyKind::PrefAttach: g = gen_pref_attach(c.n0, t.m, stream_seed(c.seed, 0)); break;
    case TopologyKind::Star: g = gen_star(c.n0); break;
    case TopologyKind::Path: g = gen_path(c.n0); break;
    case TopologyKind::RandomTree: g = gen_random_tree(c.n0, t.max_degree, stream_seed(c.seed, 0)); break;
    case TopologyKind::File: g = load_graph(t.path); break;
    case TopologyKind::KaryTree: {
      std::size_t d = t.depth;
      if (d == 0)
        while (adversary::kary_size(t.m, d + 1) <= c.n0 && t.m > 1) ++d;
      g = gen_kary_tree(t.m, d);
      break;
    }
  }
  if (c.spanning_tree) g = bfs_spanning_tree(g);
  return g;
}

inline std::unique_ptr<adversary::Policy> make_policy(const SimConfig& c, const Graph& g0) {
  using namespace adversary;
  const AttackSpec& a = c.attack;
  std::uint64_t as = stream_seed(c.seed, 1);
  if (a.kind == "max") return std::make_unique<MaxNode>();
  if (a.kind == "nmax") return std::make_unique<NeighborOfMax>(as);
  if (a.kind == "random") return std::make_unique<UniformRandom>(as);
  if (a.kind == "script") return std::make_unique<Scripted>(a.script);
  if (a.kind == "mixed") return std::make_unique<MixedRandom>(as, a.insert_prob, a.attach, a.max_nodes);
  if (a.kind == "star") return std::make_unique<StarAttack>(a.alpha);
  if (a.kind == "loglog") return std::make_unique<LogLogAttack>(a.loglog_target);
  if (a.kind == "level") {
    std::size_t k = a.level_m + 2, depth = 0;
    while (kary_size(k, depth) < g0.node_count()) ++depth;
    return std::make_unique<LevelAttack>(a.level_m, depth);
  }
  throw BadParams("unknown attack " + a.kind);
}

// ---- traces ----

struct MetricsRow {
  std::size_t round = 0;
  std::string action;
  NodeId node = 0;
  long max_delta_add = 0;
  double max_delta_ratio = 0;
  double diameter = std::nan("");
  double stretch = std::nan("");
  std::size_t msgs_total = 0;
  std::size_t msgs_max_node = 0;
  std::size_t id_changes_max = 0;
  std::size_t latency = 0;
};

struct Violation {
  std::size_t round;
  std::string what;
};

struct Trace {
  json config;
  std::vector<Event> events;
  std::vector<MetricsRow> rows;
  Graph final_actual, final_reference;
  std::vector<Violation> violations;
  std::string error;  // set when a module error aborted the run
};

inline json event_to_json(const Event& e) {
  if (e.kind == Event::Kind::Delete) return {{"op", "delete"}, {"node", e.node}};
  return {{"op", "insert"}, {"node", e.node}, {"neighbors", e.neighbors}};
}

inline Event event_from_json(const json& j) {
  std::string op = j.at("op").get<std::string>();
  NodeId v = j.at("node").get<NodeId>();
  if (op == "delete") return Event::del(v);
  if (op == "insert") return Event::ins(v, j.value("neighbors", std::vector<NodeId>{}));
  throw BadParams("unknown event op " + op);
}

// Accepts a trace object or a bare event list.
inline std::vector<Event> events_from_json(const json& j) {
  const json& list = j.is_object() ? j.at("events") : j;
  std::vector<Event> out;
  for (auto& e : list) out.push_back(event_from_json(e));
  return out;
}

inline std::string check_name(CheckLevel c) {
  return c == CheckLevel::All ? "all" : c == CheckLevel::Fast ? "fast" : "off";
}

inline std::string topology_name(TopologyKind k) {
  switch (k) {
    case TopologyKind::PrefAttach: return "pa";
    case TopologyKind::Star: return "star";
    case TopologyKind::KaryTree: return "tree";
    case TopologyKind::Path: return "path";
    case TopologyKind::RandomTree: return "rtree";
    case TopologyKind::File: return "file";
  }
  return "?";
}

inline json config_to_json(const SimConfig& c) {
  return {{"n0", c.n0},
          {"topology",
           {{"kind", topology_name(c.topology.kind)},
            {"m", c.topology.m},
            {"depth", c.topology.depth},
            {"max_degree", c.topology.max_degree},
            {"path", c.topology.path}}},
          {"healer", c.healer},
          {"attack", {{"kind", c.attack.kind}, {"level_m", c.attack.level_m}, {"alpha", c.attack.alpha}}},
          {"rounds", c.rounds},
          {"seed", c.seed},
          {"checks", check_name(c.checks)},
          {"spanning_tree", c.spanning_tree},
          {"ids", c.ids == dash::IdMode::Integer ? "integer" : "real"}};
}

inline std::string fmt_double(double x) {
  if (std::isinf(x)) return "inf";
  if (std::isnan(x)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

inline const char* kCsvHeader =
    "round,action,node,max_delta_add,max_delta_ratio,diameter,stretch,msgs_total,msgs_max_node,id_changes_max,latency";

inline void write_csv(std::ostream& os, const std::vector<MetricsRow>& rows) {
  os << kCsvHeader << '\n';
  for (auto& r : rows)
    os << r.round << ',' << r.action << ',' << r.node << ',' << r.max_delta_add << ',' << fmt_double(r.max_delta_ratio)
       << ',' << fmt_double(r.diameter) << ',' << fmt_double(r.stretch) << ',' << r.msgs_total << ',' << r.msgs_max_node
       << ',' << r.id_changes_max << ',' << r.latency << '\n';
}

inline std::string csv_string(const std::vector<MetricsRow>& rows) {
  std::ostringstream os;
  write_csv(os, rows);
  return os.str();
}

// Doubles that are not finite become strings so the JSON stays valid.
inline json num_or_tag(double x) {
  if (std::isfinite(x)) return x;
  return fmt_double(x);
}

inline json row_to_json(const MetricsRow& r) {
  return {{"round", r.round},
          {"action", r.action},
          {"node", r.node},
          {"max_delta_add", r.max_delta_add},
          {"max_delta_ratio", num_or_tag(r.max_delta_ratio)},
          {"diameter", num_or_tag(r.diameter)},
          {"stretch", num_or_tag(r.stretch)},
          {"msgs_total", r.msgs_total},
          {"msgs_max_node", r.msgs_max_node},
          {"id_changes_max", r.id_changes_max},
          {"latency", r.latency}};
}

inline json trace_to_json(const Trace& t) {
  json ev = json::array(), rows = json::array(), bad = json::array();
  for (auto& e : t.events) ev.push_back(event_to_json(e));
  for (auto& r : t.rows) rows.push_back(row_to_json(r));
  for (auto& v : t.violations) bad.push_back({{"round", v.round}, {"what", v.what}});
  json j{{"config", t.config},
         {"events", ev},
         {"rows", rows},
         {"violations", bad},
         {"final", {{"actual", graph_to_json(t.final_actual)}, {"reference", graph_to_json(t.final_reference)}}}};
  if (!t.error.empty()) j["error"] = t.error;
  return j;
}

// ---- the round loop ----

inline MetricsRow measure(const GraphPair& gp, const Healer& h, const Event& e, std::size_t round,
                          const HealReport& rep, bool distances) {
  MetricsRow r;
  r.round = round;
  r.action = e.kind == Event::Kind::Delete ? "delete" : "insert";
  r.node = e.node;
  bool first = true;
  for (NodeId v : gp.actual.nodes()) {
    long d = gp.delta(v);
    r.max_delta_add = first ? d : std::max(r.max_delta_add, d);
    first = false;
    std::size_t ref = gp.reference.degree(v);
    if (ref > 0) r.max_delta_ratio = std::max(r.max_delta_ratio, double(gp.actual.degree(v)) / double(ref));
  }
  if (distances) {
    r.diameter = diameter_value(gp.actual);
    r.stretch = compute_stretch(gp.actual, gp.reference);
  }
  r.msgs_total = rep.messages;
  r.msgs_max_node = rep.max_node_messages();
  r.id_changes_max = h.id_changes_max();
  r.latency = rep.latency;
  return r;
}

class Runner : public adversary::Stepper {
 public:
  Runner(const SimConfig& c, Healer& h, GraphPair& gp, Trace& t) : c_(c), h_(h), gp_(gp), t_(t) {}

  const GraphPair& state() const override { return gp_; }

  void apply(const Event& e) override {
    if (c_.rounds && round_ >= c_.rounds) throw adversary::StopRun{};
    ++round_;
    t_.events.push_back(e);
    HealReport rep;
    if (e.kind == Event::Kind::Insert) {
      if (!h_.supports_insert()) throw BadParams(h_.name() + " does not support insertions");
      apply_insert(gp_, e.node, e.neighbors);
      rep = h_.on_insert(gp_, e.node, e.neighbors);
    } else {
      auto ctx = delete_with_context(gp_, e.node);
      rep = h_.on_delete(gp_, ctx);
    }
    for (auto& what : h_.check(gp_, c_.checks)) t_.violations.push_back({round_, what});
    t_.rows.push_back(measure(gp_, h_, e, round_, rep, c_.distances));
  }

 private:
  const SimConfig& c_;
  Healer& h_;
  GraphPair& gp_;
  Trace& t_;
  std::size_t round_ = 0;
};

inline bool is_tree_healer(const std::string& name) { return name == "ftree"; }

// Runs one simulation; configuration errors throw, module errors end the run with `error` set.
inline Trace run(const SimConfig& c) {
  Trace t;
  t.config = config_to_json(c);
  Graph g0 = initial_graph(c);
  if (is_tree_healer(c.healer) && !is_tree(g0)) throw BadParams("ftree needs a tree topology (use --spanning-tree)");
  auto healer = make_healer(c);
  auto policy = make_policy(c, g0);
  GraphPair gp = GraphPair::from_initial(g0);
  healer->init(gp);
  Runner runner(c, *healer, gp, t);
  try {
    policy->drive(runner);
  } catch (const adversary::StopRun&) {
  } catch (const adversary::WrongTopology&) {
    throw;
  } catch (const std::exception& ex) {
    t.error = ex.what();
  }
  t.final_actual = gp.actual;
  t.final_reference = gp.reference;
  return t;
}

// Same configuration with the recorded events fed back as a script.
inline Trace replay(SimConfig c, const Trace& t) {
  c.attack.kind = "script";
  c.attack.script = t.events;
  return run(c);
}

}  // namespace selfheal::sim
