#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace selfheal {

using NodeId = std::uint32_t;

struct DuplicateNode : std::invalid_argument {
  explicit DuplicateNode(NodeId v) : std::invalid_argument("duplicate node " + std::to_string(v)) {}
};
struct UnknownNeighbor : std::invalid_argument {
  explicit UnknownNeighbor(NodeId v) : std::invalid_argument("unknown neighbor " + std::to_string(v)) {}
};
struct UnknownNode : std::out_of_range {
  explicit UnknownNode(NodeId v) : std::out_of_range("unknown node " + std::to_string(v)) {}
};
struct EmptyGraph : std::invalid_argument {
  EmptyGraph() : std::invalid_argument("empty graph") {}
};

// Simple undirected graph. Ordered containers keep every traversal deterministic.
class Graph {
 public:
  using AdjSet = std::set<NodeId>;

  bool has_node(NodeId v) const { return adj_.count(v) != 0; }
  bool has_edge(NodeId u, NodeId v) const {
    auto it = adj_.find(u);
    return it != adj_.end() && it->second.count(v) != 0;
  }
  std::size_t node_count() const { return adj_.size(); }
  std::size_t edge_count() const {
    std::size_t s = 0;
    for (auto& [v, a] : adj_) s += a.size();
    return s / 2;
  }
  bool empty() const { return adj_.empty(); }

  void add_node(NodeId v) {
    if (!adj_.emplace(v, AdjSet{}).second) throw DuplicateNode(v);
  }
  // Returns false when the edge already existed.
  bool add_edge(NodeId u, NodeId v) {
    if (u == v) throw std::invalid_argument("self-loop on " + std::to_string(u));
    auto iu = adj_.find(u);
    if (iu == adj_.end()) throw UnknownNode(u);
    auto iv = adj_.find(v);
    if (iv == adj_.end()) throw UnknownNode(v);
    bool fresh = iu->second.insert(v).second;
    iv->second.insert(u);
    return fresh;
  }
  bool remove_edge(NodeId u, NodeId v) {
    auto iu = adj_.find(u);
    auto iv = adj_.find(v);
    if (iu == adj_.end() || iv == adj_.end()) return false;
    bool had = iu->second.erase(v) != 0;
    iv->second.erase(u);
    return had;
  }
  // Removes v and its edges; returns the former neighbor set.
  AdjSet remove_node(NodeId v) {
    auto it = adj_.find(v);
    if (it == adj_.end()) throw UnknownNode(v);
    AdjSet nb = std::move(it->second);
    adj_.erase(it);
    for (NodeId u : nb) adj_.at(u).erase(v);
    return nb;
  }

  const AdjSet& neighbors(NodeId v) const {
    auto it = adj_.find(v);
    if (it == adj_.end()) throw UnknownNode(v);
    return it->second;
  }
  std::size_t degree(NodeId v) const { return neighbors(v).size(); }

  std::vector<NodeId> nodes() const {
    std::vector<NodeId> out;
    out.reserve(adj_.size());
    for (auto& [v, a] : adj_) out.push_back(v);
    return out;
  }
  // Edges as (u,v) with u<v, lexicographically sorted.
  std::vector<std::pair<NodeId, NodeId>> edges() const {
    std::vector<std::pair<NodeId, NodeId>> out;
    for (auto& [v, a] : adj_)
      for (NodeId u : a)
        if (v < u) out.emplace_back(v, u);
    return out;
  }

  bool symmetric() const {
    for (auto& [v, a] : adj_) {
      if (a.count(v)) return false;
      for (NodeId u : a) {
        auto it = adj_.find(u);
        if (it == adj_.end() || !it->second.count(v)) return false;
      }
    }
    return true;
  }

  const std::map<NodeId, AdjSet>& adjacency() const { return adj_; }

  friend bool operator==(const Graph& a, const Graph& b) { return a.adj_ == b.adj_; }

 private:
  std::map<NodeId, AdjSet> adj_;
};

// BFS hop counts from src; unreachable nodes are absent.
inline std::map<NodeId, std::size_t> bfs_distances(const Graph& g, NodeId src) {
  if (!g.has_node(src)) throw UnknownNode(src);
  std::map<NodeId, std::size_t> dist{{src, 0}};
  std::deque<NodeId> q{src};
  while (!q.empty()) {
    NodeId v = q.front();
    q.pop_front();
    std::size_t d = dist[v];
    for (NodeId u : g.neighbors(v))
      if (dist.emplace(u, d + 1).second) q.push_back(u);
  }
  return dist;
}

// nullopt means unreachable.
inline std::optional<std::size_t> distance(const Graph& g, NodeId x, NodeId y) {
  if (!g.has_node(y)) throw UnknownNode(y);
  auto d = bfs_distances(g, x);
  auto it = d.find(y);
  if (it == d.end()) return std::nullopt;
  return it->second;
}

// nullopt means infinite (disconnected).
inline std::optional<std::size_t> diameter(const Graph& g) {
  if (g.empty()) throw EmptyGraph();
  std::size_t best = 0;
  for (NodeId v : g.nodes()) {
    auto d = bfs_distances(g, v);
    if (d.size() != g.node_count()) return std::nullopt;
    for (auto& [u, h] : d) best = std::max(best, h);
  }
  return best;
}

inline bool is_connected(const Graph& g) {
  if (g.node_count() <= 1) return true;
  return bfs_distances(g, g.nodes().front()).size() == g.node_count();
}

inline bool is_forest(const Graph& g) {
  // A forest has exactly |V| - (#components) edges.
  std::set<NodeId> seen;
  std::size_t comps = 0;
  for (NodeId v : g.nodes()) {
    if (seen.count(v)) continue;
    ++comps;
    for (auto& [u, d] : bfs_distances(g, v)) seen.insert(u);
  }
  return g.edge_count() + comps == g.node_count();
}

inline bool is_tree(const Graph& g) { return !g.empty() && is_connected(g) && is_forest(g); }

struct Event {
  enum class Kind { Delete, Insert };
  Kind kind = Kind::Delete;
  NodeId node = 0;
  std::vector<NodeId> neighbors;  // Insert only

  static Event del(NodeId v) { return Event{Kind::Delete, v, {}}; }
  static Event ins(NodeId v, std::vector<NodeId> nb) { return Event{Kind::Insert, v, std::move(nb)}; }
  friend bool operator==(const Event&, const Event&) = default;
};

// Actual graph G_t next to the insertions-only reference graph G'_t.
struct GraphPair {
  Graph actual;
  Graph reference;
  Graph healing;  // healing-edge forest, only maintained by the DASH family
  NodeId next_id = 0;

  static GraphPair from_initial(const Graph& g0) {
    GraphPair gp;
    gp.actual = g0;
    gp.reference = g0;
    for (NodeId v : g0.nodes()) {
      gp.healing.add_node(v);
      gp.next_id = std::max<NodeId>(gp.next_id, v + 1);
    }
    return gp;
  }

  // Degree change relative to the reference graph; may be negative.
  long delta(NodeId v) const {
    return static_cast<long>(actual.degree(v)) - static_cast<long>(reference.degree(v));
  }
};

inline void apply_insert(GraphPair& gp, NodeId v, const std::vector<NodeId>& neighbors) {
  if (gp.reference.has_node(v)) throw DuplicateNode(v);
  for (NodeId u : neighbors)
    if (!gp.actual.has_node(u)) throw UnknownNeighbor(u);
  gp.actual.add_node(v);
  gp.reference.add_node(v);
  gp.healing.add_node(v);
  for (NodeId u : neighbors) {
    gp.actual.add_edge(v, u);
    gp.reference.add_edge(v, u);
  }
  gp.next_id = std::max<NodeId>(gp.next_id, v + 1);
}

// Removes v from the actual graph only; returns its neighbors at deletion time.
inline Graph::AdjSet apply_delete(GraphPair& gp, NodeId v) {
  if (!gp.actual.has_node(v)) throw UnknownNode(v);
  if (gp.healing.has_node(v)) gp.healing.remove_node(v);
  return gp.actual.remove_node(v);
}

}  // namespace selfheal
