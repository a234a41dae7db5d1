#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "selfheal/harness.hpp"
#include "selfheal/presets.hpp"

using namespace selfheal;
using namespace selfheal::sim;

namespace {

struct Usage : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// "name=value" -> {name, value}
std::pair<std::string, std::string> split_eq(const std::string& s) {
  auto p = s.find('=');
  if (p == std::string::npos) return {s, ""};
  return {s.substr(0, p), s.substr(p + 1)};
}

void parse_topology(const std::string& arg, SimConfig& c) {
  auto [name, value] = split_eq(arg);
  static const std::map<std::string, TopologyKind> kinds{{"pa", TopologyKind::PrefAttach}, {"star", TopologyKind::Star},
                                                         {"tree", TopologyKind::KaryTree},  {"path", TopologyKind::Path},
                                                         {"rtree", TopologyKind::RandomTree}, {"file", TopologyKind::File}};
  auto it = kinds.find(name);
  if (it == kinds.end()) throw Usage("unknown topology " + name);
  c.topology.kind = it->second;
  if (c.topology.kind == TopologyKind::File) {
    if (value.empty()) throw Usage("file topology needs file=PATH");
    c.topology.path = value;
  }
}

void parse_attack(const std::string& arg, SimConfig& c) {
  auto [name, value] = split_eq(arg);
  static const std::set<std::string> known{"max", "nmax", "random", "level", "loglog", "star", "script", "mixed"};
  if (!known.count(name)) throw Usage("unknown attack " + name);
  c.attack.kind = name;
  if (name == "script") {
    if (value.empty()) throw Usage("script attack needs script=FILE");
    std::ifstream in(value);
    if (!in) throw Usage("cannot read " + value);
    c.attack.script = events_from_json(json::parse(in));
  }
}

void report(const std::vector<Violation>& bad, const std::vector<std::string>& errors) {
  for (auto& v : bad) std::cerr << "violation at round " << v.round << ": " << v.what << '\n';
  for (auto& e : errors) std::cerr << "error: " << e << '\n';
}

std::ostream& open_out(const std::string& path, std::ofstream& file) {
  if (path.empty() || path == "-") return std::cout;
  file.open(path);
  if (!file) throw Usage("cannot write " + path);
  return file;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Self-healing network simulator"};
  SimConfig c;
  std::string algo = "dash", attack = "nmax", topology = "pa", checks = "fast", out, format = "csv", preset, ids = "integer";
  std::size_t reps = 30;
  bool no_distances = false;

  app.add_option("--algo", algo, "Healer")->check(CLI::IsMember(healer_names()));
  app.add_option("--attack", attack, "max|nmax|random|level|loglog|star|mixed|script=FILE");
  app.add_option("--topology", topology, "pa|star|tree|path|rtree|file=PATH");
  app.add_option("--n", c.n0, "Initial node count");
  app.add_option("--m", c.topology.m, "Pref-attach edges per node, or tree arity");
  app.add_option("--depth", c.topology.depth, "Tree depth (0 = largest complete tree within --n)");
  app.add_option("--max-degree", c.topology.max_degree, "Degree cap for rtree");
  app.add_option("--rounds", c.rounds, "Round limit (0 = run until the attack ends)");
  app.add_option("--seed", c.seed, "Seed");
  app.add_option("--reps", reps, "Repetitions per preset point");
  app.add_option("--checks", checks, "Invariant checks")->check(CLI::IsMember({"all", "fast", "off"}));
  app.add_option("--out", out, "Output path (default stdout)");
  app.add_option("--format", format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--preset", preset, "Experiment preset")->check(CLI::IsMember(preset_names()));
  app.add_option("--ids", ids, "DASH component ids")->check(CLI::IsMember({"integer", "real"}));
  app.add_option("--alpha", c.attack.alpha, "Degree cap for the star bound");
  app.add_option("--level-m", c.attack.level_m, "Level attack on (M+2)-ary trees");
  app.add_option("--insert-prob", c.attack.insert_prob, "Insertion probability for the mixed attack");
  app.add_option("--max-nodes", c.attack.max_nodes, "Id budget for the mixed attack");
  app.add_flag("--spanning-tree", c.spanning_tree, "Replace the topology by its BFS spanning tree");
  app.add_flag("--no-distances", no_distances, "Skip diameter and stretch (written as nan)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    c.healer = algo;
    c.checks = checks == "all" ? CheckLevel::All : checks == "off" ? CheckLevel::Off : CheckLevel::Fast;
    c.ids = ids == "real" ? dash::IdMode::RandomReal : dash::IdMode::Integer;
    c.distances = !no_distances;
    parse_topology(topology, c);
    parse_attack(attack, c);
    if (algo == "ftree" && c.topology.kind == TopologyKind::PrefAttach && !c.spanning_tree)
      throw Usage("ftree needs a tree topology; pass --spanning-tree to use a BFS tree of it");

    std::ofstream file;
    std::ostream& os = open_out(out, file);

    if (!preset.empty()) {
      auto res = run_preset(make_preset(preset, reps), c, os);
      report(res.violations, res.errors);
      return res.violations.empty() && res.errors.empty() ? 0 : 2;
    }

    Trace t = run(c);
    if (format == "json") {
      os << trace_to_json(t).dump(1) << '\n';
    } else {
      write_csv(os, t.rows);
    }
    report(t.violations, t.error.empty() ? std::vector<std::string>{} : std::vector<std::string>{t.error});
    return t.violations.empty() && t.error.empty() ? 0 : 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 1;
  } catch (const json::exception& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 1;
  }
}
