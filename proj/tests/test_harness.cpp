#include <gtest/gtest.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "selfheal/harness.hpp"
#include "selfheal/presets.hpp"

using namespace selfheal;
using namespace selfheal::sim;

namespace {

// Floyd-Warshall over the id set of `g`.
std::map<std::pair<NodeId, NodeId>, double> apsp(const Graph& g) {
  auto ids = g.nodes();
  std::map<std::pair<NodeId, NodeId>, double> d;
  for (NodeId a : ids)
    for (NodeId b : ids) d[{a, b}] = a == b ? 0 : g.has_edge(a, b) ? 1 : kInf;
  for (NodeId k : ids)
    for (NodeId a : ids)
      for (NodeId b : ids) d[{a, b}] = std::min(d[{a, b}], d[{a, k}] + d[{k, b}]);
  return d;
}

double stretch_oracle(const Graph& actual, const Graph& reference) {
  auto da = apsp(actual), dr = apsp(reference);
  double worst = 1;
  for (NodeId a : actual.nodes())
    for (NodeId b : actual.nodes()) {
      if (a == b || dr.at({a, b}) == kInf) continue;
      worst = std::max(worst, da.at({a, b}) / dr.at({a, b}));
    }
  return worst;
}

int run_cli(const std::string& args) {
  std::string cmd = std::string(CLI_PATH) + " " + args + " > /dev/null 2>&1";
  int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

}  // namespace

TEST(Csv, Header) {
  std::ostringstream os;
  write_csv(os, {});
  EXPECT_EQ(os.str(),
            "round,action,node,max_delta_add,max_delta_ratio,diameter,stretch,msgs_total,msgs_max_node,id_changes_max,"
            "latency\n");
}

TEST(Csv, SpecialValues) {
  EXPECT_EQ(fmt_double(kInf), "inf");
  EXPECT_EQ(fmt_double(std::nan("")), "nan");
  EXPECT_EQ(fmt_double(1.5), "1.5");
  MetricsRow r;
  r.action = "delete";
  auto line = csv_string({r});
  EXPECT_NE(line.find(",nan,nan,"), std::string::npos);
}

TEST(Stretch, Identity) {
  Graph g = gen_pref_attach(30, 2, 4);
  EXPECT_EQ(compute_stretch(g, g), 1.0);
}

TEST(Stretch, MatchesOracle) {
  Graph ref = gen_path(8);
  Graph act = ref;
  act.remove_node(3);
  act.add_edge(2, 7);
  double want = stretch_oracle(act, ref);
  EXPECT_DOUBLE_EQ(compute_stretch(act, ref), want);
  EXPECT_DOUBLE_EQ(want, 2.0);  // 2 and 4 go from two hops to four
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    Graph a = gen_pref_attach(25, 2, seed), b = gen_random_tree(25, 4, seed);
    // Same ids, different edges.
    EXPECT_DOUBLE_EQ(compute_stretch(b, a), stretch_oracle(b, a)) << seed;
  }
}

TEST(Stretch, DisconnectedIsInfinite) {
  Graph ref = gen_path(3);
  Graph act = ref;
  act.remove_node(1);
  EXPECT_EQ(compute_stretch(act, ref), kInf);
  EXPECT_EQ(diameter_value(act), kInf);
  EXPECT_EQ(diameter_value(Graph{}), 0.0);
}

TEST(PrefAttach, SmallestIsClique) {
  Graph g = gen_pref_attach(4, 3, 1);
  EXPECT_EQ(g.edge_count(), 6u);
  EXPECT_THROW(gen_pref_attach(3, 3, 1), BadParams);
  EXPECT_THROW(gen_pref_attach(5, 0, 1), BadParams);
}

TEST(PrefAttach, EdgeCount) {
  Graph g = gen_pref_attach(100, 2, 9);
  EXPECT_EQ(g.edge_count(), 2u * 97 + 3);
  EXPECT_TRUE(is_connected(g));
}

TEST(PrefAttach, HeavyTail) {
  int heavy = 0;
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    Graph g = gen_pref_attach(200, 2, seed);
    std::vector<std::size_t> deg;
    for (NodeId v : g.nodes()) deg.push_back(g.degree(v));
    std::sort(deg.begin(), deg.end());
    if (deg.back() > 2 * deg[deg.size() / 2]) ++heavy;
  }
  EXPECT_EQ(heavy, 30);
}

TEST(PrefAttach, Deterministic) {
  EXPECT_EQ(gen_pref_attach(80, 3, 5), gen_pref_attach(80, 3, 5));
  EXPECT_NE(gen_pref_attach(80, 3, 5), gen_pref_attach(80, 3, 6));
}

TEST(Generators, Shapes) {
  EXPECT_EQ(gen_kary_tree(3, 2).node_count(), 13u);
  EXPECT_TRUE(is_tree(gen_random_tree(50, 3, 2)));
  Graph t = gen_random_tree(50, 3, 2);
  for (NodeId v : t.nodes()) EXPECT_LE(t.degree(v), 3u);
  Graph pa = gen_pref_attach(40, 2, 1);
  Graph bt = bfs_spanning_tree(pa);
  EXPECT_TRUE(is_tree(bt));
  EXPECT_EQ(bt.node_count(), 40u);
}

TEST(GraphJson, RoundTrip) {
  Graph g = gen_pref_attach(20, 2, 3);
  EXPECT_EQ(graph_from_json(graph_to_json(g)), g);
}

TEST(Run, SingleNode) {
  SimConfig c;
  c.n0 = 1;
  c.topology.kind = TopologyKind::Path;
  auto t = run(c);
  ASSERT_EQ(t.rows.size(), 1u);
  EXPECT_EQ(t.rows[0].diameter, 0.0);
  EXPECT_TRUE(t.final_actual.empty());
}

TEST(Run, RoundLimit) {
  SimConfig c;
  c.rounds = 5;
  auto t = run(c);
  EXPECT_EQ(t.rows.size(), 5u);
  EXPECT_EQ(t.events.size(), 5u);
}

TEST(Run, ReplayIsByteIdentical) {
  for (auto healer : {"dash", "sdash", "fgraph"}) {
    SimConfig c;
    c.n0 = 40;
    c.healer = healer;
    c.attack.kind = std::string(healer) == "fgraph" ? "mixed" : "random";
    c.rounds = 60;
    c.seed = 3;
    auto t = run(c);
    auto again = replay(c, t);
    EXPECT_EQ(csv_string(t.rows), csv_string(again.rows)) << healer;
  }
}

TEST(Run, SeedsSelectRuns) {
  SimConfig c;
  c.n0 = 40;
  c.attack.kind = "random";
  auto a = run(c);
  c.seed = 2;
  EXPECT_NE(a.events, run(c).events);
}

TEST(TraceJson, EventsRoundTrip) {
  SimConfig c;
  c.n0 = 30;
  c.healer = "fgraph";
  c.attack.kind = "mixed";
  c.rounds = 40;
  auto t = run(c);
  json j = trace_to_json(t);
  EXPECT_EQ(events_from_json(j), t.events);
  EXPECT_EQ(events_from_json(j.at("events")), t.events);
  EXPECT_EQ(j.at("rows").size(), t.rows.size());
  EXPECT_THROW(event_from_json(json{{"op", "swap"}, {"node", 1}}), BadParams);
}

TEST(Harness, RejectsBadConfigs) {
  SimConfig c;
  c.healer = "ftree";
  EXPECT_THROW(run(c), BadParams);
  c.spanning_tree = true;
  EXPECT_NO_THROW(run(c));
  SimConfig d;
  d.healer = "nope";
  EXPECT_THROW(run(d), BadParams);
}

TEST(Presets, Expand) {
  SimConfig base;
  base.seed = 10;
  auto cs = expand(make_preset("degree-vs-n", 3), base);
  ASSERT_EQ(cs.size(), 3u * 5 * 3);
  EXPECT_EQ(cs[0].n0, 50u);
  EXPECT_EQ(cs[0].healer, "dash");
  EXPECT_EQ(cs[2].seed, 12u);
  EXPECT_FALSE(cs[0].distances);
  EXPECT_EQ(make_preset("timeline", 30).reps, 1u);
  EXPECT_THROW(make_preset("nope", 1), BadParams);
}

TEST(Presets, MeanStd) {
  auto m = mean_std({2, 4, 4, 4, 5, 5, 7, 9});
  EXPECT_DOUBLE_EQ(m.mean, 5.0);
  EXPECT_NEAR(m.std, 2.138089935, 1e-9);
  EXPECT_EQ(mean_std({3}).std, 0.0);
}

TEST(Presets, DegreeTable) {
  Preset p{"degree-vs-n", {30}, {"dash", "line"}, "nmax", 2};
  std::ostringstream os;
  auto res = run_preset(p, SimConfig{}, os);
  EXPECT_TRUE(res.violations.empty());
  std::istringstream in(os.str());
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(in, line)) lines.push_back(line);
  ASSERT_EQ(lines.size(), 3u);
  EXPECT_EQ(lines[0], "n,algo,mean_max_delta,std");
  EXPECT_EQ(lines[1].rfind("30,dash,", 0), 0u);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run_cli("--algo ftree --topology pa --n 20"), 1);
  EXPECT_EQ(run_cli("--algo nope"), 1);
  EXPECT_EQ(run_cli("--algo dash --n 20 --seed 2"), 0);
  EXPECT_EQ(run_cli("--algo ftree --topology pa --spanning-tree --n 20"), 0);
}

TEST(Cli, WritesCsv) {
  std::string path = ::testing::TempDir() + "selfheal_cli_out.csv";
  ASSERT_EQ(run_cli("--algo sdash --n 20 --out " + path), 0);
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, kCsvHeader);
  std::remove(path.c_str());
}
