#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "healer.hpp"

namespace selfheal::dash {

struct NodeState {
  double id_value = 0;  // component id; only ever decreases
  long weight = 1;
  std::size_t id_change_count = 0;
};

enum class Variant { Dash, SDash, GraphHeal, BinaryTreeHeal, LineHeal };
enum class IdMode { Integer, RandomReal };

inline std::string variant_name(Variant v) {
  switch (v) {
    case Variant::Dash: return "dash";
    case Variant::SDash: return "sdash";
    case Variant::GraphHeal: return "graphheal";
    case Variant::BinaryTreeHeal: return "binheal";
    case Variant::LineHeal: return "line";
  }
  return "?";
}

using States = std::map<NodeId, NodeState>;

// One lowest-id neighbor per distinct component id, skipping the deleted node's own
// component, plus every healing-forest neighbor of the deleted node.
inline std::vector<NodeId> reconnection_set(const States& st, const DeleteContext& ctx, double deleted_id) {
  std::map<double, NodeId> reps;
  for (NodeId u : ctx.neighbors) {
    double c = st.at(u).id_value;
    if (c == deleted_id) continue;
    auto it = reps.find(c);
    if (it == reps.end() || u < it->second) reps[c] = u;
  }
  std::set<NodeId> out(ctx.healing_neighbors.begin(), ctx.healing_neighbors.end());
  for (auto& [c, u] : reps) out.insert(u);
  return {out.begin(), out.end()};
}

// Parent index for slot i of a complete binary tree filled top-down, left to right.
inline std::vector<Edge> complete_tree_edges(const std::vector<NodeId>& order) {
  std::vector<Edge> out;
  for (std::size_t i = 1; i < order.size(); ++i) out.emplace_back(order[(i - 1) / 2], order[i]);
  return out;
}

inline std::vector<Edge> line_edges(const std::vector<NodeId>& order) {
  std::vector<Edge> out;
  for (std::size_t i = 1; i < order.size(); ++i) out.emplace_back(order[i - 1], order[i]);
  return out;
}

// Orders by (delta, id) ascending for the DASH layout.
inline std::vector<NodeId> by_delta(const GraphPair& gp, std::vector<NodeId> set) {
  std::sort(set.begin(), set.end(), [&](NodeId a, NodeId b) {
    long da = gp.delta(a), db = gp.delta(b);
    return da != db ? da < db : a < b;
  });
  return set;
}

inline std::vector<Edge> dash_edges(const GraphPair& gp, const std::vector<NodeId>& set) {
  return complete_tree_edges(by_delta(gp, set));
}

// Surrogate choice: the lowest-delta member w (ties by id) if delta(w)+|set|-1 stays within the
// current maximum; otherwise nullopt.
inline std::optional<NodeId> sdash_center(const GraphPair& gp, const std::vector<NodeId>& set) {
  if (set.size() < 2) return std::nullopt;
  auto order = by_delta(gp, set);
  long dmax = gp.delta(order.back());
  NodeId w = order.front();
  if (gp.delta(w) + static_cast<long>(set.size()) - 1 <= dmax) return w;
  return std::nullopt;
}

inline std::vector<Edge> sdash_edges(const GraphPair& gp, const std::vector<NodeId>& set) {
  if (auto w = sdash_center(gp, set)) {
    std::vector<Edge> out;
    for (NodeId u : set)
      if (u != *w) out.emplace_back(*w, u);
    return out;
  }
  return dash_edges(gp, set);
}

struct Propagation {
  std::size_t changed = 0;
  std::size_t messages = 0;
  std::size_t depth = 0;
};

// Spreads the minimum component id over the healing tree containing `start`.
inline Propagation propagate_min_id(const GraphPair& gp, States& st, NodeId start, HealReport* rep = nullptr) {
  auto tree = bfs_distances(gp.healing, start);
  double best = st.at(start).id_value;
  NodeId holder = start;
  for (auto& [u, d] : tree)
    if (st.at(u).id_value < best || (st.at(u).id_value == best && u < holder)) {
      best = st.at(u).id_value;
      holder = u;
    }
  Propagation p;
  auto from_holder = bfs_distances(gp.healing, holder);
  for (auto& [u, d] : tree) {
    auto& s = st.at(u);
    if (s.id_value == best) continue;
    s.id_value = best;
    ++s.id_change_count;
    ++p.changed;
    std::size_t deg = gp.actual.degree(u);
    p.messages += deg;
    if (rep) rep->send(u, deg);
    p.depth = std::max(p.depth, from_holder.at(u));
  }
  return p;
}

// rem(v): total weight of the healing-forest subtrees hanging off v, minus the heaviest,
// plus v's own weight. Brute force.
inline long rem(const Graph& healing, const States& st, NodeId v) {
  if (!healing.has_node(v)) throw UnknownNode(v);
  long sum = 0, mx = 0;
  std::set<NodeId> seen{v};
  for (NodeId u : healing.neighbors(v)) {
    long w = 0;
    std::vector<NodeId> stack{u};
    seen.insert(u);
    while (!stack.empty()) {
      NodeId x = stack.back();
      stack.pop_back();
      w += st.at(x).weight;
      for (NodeId y : healing.neighbors(x))
        if (seen.insert(y).second) stack.push_back(y);
    }
    sum += w;
    mx = std::max(mx, w);
  }
  return sum - mx + st.at(v).weight;
}

class DashHealer : public Healer {
 public:
  explicit DashHealer(Variant variant = Variant::Dash, IdMode mode = IdMode::Integer, std::uint64_t seed = 0)
      : variant_(variant), mode_(mode), rng_(seed) {}

  std::string name() const override { return variant_name(variant_); }

  void init(GraphPair& gp) override {
    for (NodeId v : gp.reference.nodes()) fresh(v);
  }

  HealReport on_insert(GraphPair&, NodeId v, const std::vector<NodeId>&) override {
    fresh(v);
    return {};
  }

  HealReport on_delete(GraphPair& gp, const DeleteContext& ctx) override {
    HealReport rep;
    NodeState dead = st_.at(ctx.node);
    st_.erase(ctx.node);

    std::vector<NodeId> set;
    if (variant_ == Variant::GraphHeal)
      set.assign(ctx.neighbors.begin(), ctx.neighbors.end());
    else
      set = reconnection_set(st_, ctx, dead.id_value);

    if (uses_healing()) pass_weight(ctx, set, dead.weight);

    std::vector<Edge> edges;
    switch (variant_) {
      case Variant::Dash: edges = dash_edges(gp, set); break;
      case Variant::SDash: edges = sdash_edges(gp, set); break;
      case Variant::GraphHeal:
      case Variant::BinaryTreeHeal: edges = complete_tree_edges(set); break;
      case Variant::LineHeal: edges = line_edges(set); break;
    }
    for (auto& [a, b] : edges) add_heal_edge(gp, rep, a, b, uses_healing());

    if (set.empty()) return rep;
    rep.latency = 1;
    if (uses_healing()) {
      auto p = propagate_min_id(gp, st_, set.front(), &rep);
      rep.latency += p.depth;
    }
    return rep;
  }

  std::vector<std::string> check(const GraphPair& gp, CheckLevel level) override {
    std::vector<std::string> bad;
    if (level == CheckLevel::Off) return bad;
    std::size_t n = gp.reference.node_count();
    if (variant_ == Variant::Dash) {
      long bound = 2 * static_cast<long>(ceil_log2(n));
      for (NodeId v : gp.actual.nodes())
        if (gp.delta(v) > bound)
          bad.push_back("dash degree bound: node " + std::to_string(v) + " delta " + std::to_string(gp.delta(v)));
    }
    if (!preserves_connectivity(gp)) bad.push_back("connectivity lost");
    if (uses_healing() && !is_forest(gp.healing)) bad.push_back("healing edges contain a cycle");
    if (level == CheckLevel::All && uses_healing()) potential_checks(gp, bad);
    return bad;
  }

  std::size_t id_changes_max() const override {
    std::size_t m = 0;
    for (auto& [v, s] : st_) m = std::max(m, s.id_change_count);
    return m;
  }

  const States& states() const { return st_; }
  long lost_weight() const { return lost_weight_; }

 private:
  bool uses_healing() const { return variant_ != Variant::GraphHeal; }

  void fresh(NodeId v) {
    NodeState s;
    s.id_value = mode_ == IdMode::Integer ? static_cast<double>(v) : std::uniform_real_distribution<double>(0, 1)(rng_);
    st_[v] = s;
  }

  void pass_weight(const DeleteContext& ctx, const std::vector<NodeId>& set, long w) {
    if (!ctx.healing_neighbors.empty())
      st_.at(*ctx.healing_neighbors.begin()).weight += w;
    else if (!set.empty())
      st_.at(set.front()).weight += w;
    else
      lost_weight_ += w;
  }

  // Potential-function checks; only affordable on small graphs.
  void potential_checks(const GraphPair& gp, std::vector<std::string>& bad) {
    std::size_t n = gp.reference.node_count();
    if (n > 64) return;
    long total = lost_weight_;
    std::map<NodeId, long> now;
    for (NodeId v : gp.actual.nodes()) {
      long r = rem(gp.healing, st_, v);
      now[v] = r;
      total += st_.at(v).weight;
      double lower = std::pow(2.0, static_cast<double>(gp.delta(v)) / 2.0);
      if (static_cast<double>(r) < lower) bad.push_back("rem below 2^(delta/2) at " + std::to_string(v));
      if (r > static_cast<long>(n)) bad.push_back("rem above n at " + std::to_string(v));
      auto it = last_rem_.find(v);
      if (it != last_rem_.end() && r < it->second) bad.push_back("rem decreased at " + std::to_string(v));
    }
    if (total != static_cast<long>(n)) bad.push_back("weight not conserved");
    last_rem_ = std::move(now);
  }

  Variant variant_;
  IdMode mode_;
  std::mt19937_64 rng_;
  States st_;
  long lost_weight_ = 0;
  std::map<NodeId, long> last_rem_;
};

}  // namespace selfheal::dash
