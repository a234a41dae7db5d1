#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "graph.hpp"

namespace selfheal {

using Edge = std::pair<NodeId, NodeId>;

inline Edge norm_edge(NodeId a, NodeId b) { return a < b ? Edge{a, b} : Edge{b, a}; }

enum class CheckLevel { Off, Fast, All };

// What the healer learns when a node disappears.
struct DeleteContext {
  NodeId node = 0;
  Graph::AdjSet neighbors;          // actual-graph neighbors at deletion time
  Graph::AdjSet healing_neighbors;  // neighbors in the healing forest
};

struct HealReport {
  std::vector<Edge> added;
  std::vector<Edge> dropped;
  std::size_t messages = 0;
  std::map<NodeId, std::size_t> node_messages;  // messages sent, per sender
  std::size_t latency = 0;

  void send(NodeId from, std::size_t count = 1) {
    messages += count;
    node_messages[from] += count;
  }
  std::size_t max_node_messages() const {
    std::size_t m = 0;
    for (auto& [v, c] : node_messages) m = std::max(m, c);
    return m;
  }
};

// Removes v from the pair and captures what its neighbors observe.
inline DeleteContext delete_with_context(GraphPair& gp, NodeId v) {
  DeleteContext ctx;
  ctx.node = v;
  if (gp.healing.has_node(v)) ctx.healing_neighbors = gp.healing.neighbors(v);
  ctx.neighbors = apply_delete(gp, v);
  return ctx;
}

class Healer {
 public:
  virtual ~Healer() = default;
  virtual std::string name() const = 0;
  virtual bool supports_insert() const { return true; }
  // Called once, after the initial topology is in place.
  virtual void init(GraphPair& gp) = 0;
  // gp already contains v and its edges.
  virtual HealReport on_insert(GraphPair& gp, NodeId v, const std::vector<NodeId>& neighbors) = 0;
  // gp.actual no longer contains ctx.node.
  virtual HealReport on_delete(GraphPair& gp, const DeleteContext& ctx) = 0;
  // Returns human-readable violations; empty means all enabled checks passed.
  virtual std::vector<std::string> check(const GraphPair& gp, CheckLevel level) = 0;
  virtual std::size_t id_changes_max() const { return 0; }
};

// Connected components as a node -> smallest member map.
inline std::map<NodeId, NodeId> component_labels(const Graph& g) {
  std::map<NodeId, NodeId> lab;
  for (NodeId v : g.nodes()) {
    if (lab.count(v)) continue;
    for (auto& [u, d] : bfs_distances(g, v)) lab[u] = v;
  }
  return lab;
}

// Every pair of alive nodes joined in the reference graph must stay joined in the actual graph.
inline bool preserves_connectivity(const GraphPair& gp) {
  auto act = component_labels(gp.actual);
  auto ref = component_labels(gp.reference);
  std::map<NodeId, NodeId> ref_to_act;
  for (auto& [v, a] : act) {
    auto [it, fresh] = ref_to_act.emplace(ref.at(v), a);
    if (!fresh && it->second != a) return false;
  }
  return true;
}

inline std::size_t ceil_log2(std::size_t x) {
  std::size_t r = 0;
  while ((std::size_t{1} << r) < x) ++r;
  return r;
}

// Pushes edges a–b into actual (and healing when given); records the ones that were new.
inline void add_heal_edge(GraphPair& gp, HealReport& rep, NodeId a, NodeId b, bool healing) {
  if (gp.actual.add_edge(a, b)) rep.added.push_back(norm_edge(a, b));
  if (healing) gp.healing.add_edge(a, b);
}

// Makes gp.actual's edge set equal `target`, reporting the difference.
inline void sync_actual(GraphPair& gp, const Graph& target, HealReport& rep) {
  for (auto& e : gp.actual.edges())
    if (!target.has_edge(e.first, e.second)) {
      gp.actual.remove_edge(e.first, e.second);
      rep.dropped.push_back(e);
    }
  for (auto& e : target.edges())
    if (gp.actual.add_edge(e.first, e.second)) rep.added.push_back(e);
}

}  // namespace selfheal
