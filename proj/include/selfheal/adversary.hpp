#pragma once

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "graph.hpp"

namespace selfheal::adversary {

struct WrongTopology : std::invalid_argument {
  explicit WrongTopology(const std::string& what) : std::invalid_argument("wrong topology: " + what) {}
};

// Thrown by a stepper when the run should end (round budget spent).
struct StopRun {};

// Executes one adversarial event plus the healer's response.
class Stepper {
 public:
  virtual ~Stepper() = default;
  virtual const GraphPair& state() const = 0;
  virtual void apply(const Event& e) = 0;
};

class Policy {
 public:
  virtual ~Policy() = default;
  virtual std::string name() const = 0;
  // Pull interface: the next event, or nullopt when done.
  virtual std::optional<Event> next_event(const GraphPair& gp) = 0;
  // Push interface; lower-bound programs override this to interleave queries and deletions.
  virtual void drive(Stepper& s) {
    while (auto e = next_event(s.state())) s.apply(*e);
  }
};

inline NodeId max_degree_node(const Graph& g) {
  NodeId best = 0;
  std::size_t bd = 0;
  bool any = false;
  for (auto& [v, a] : g.adjacency())
    if (!any || a.size() > bd) {
      best = v;
      bd = a.size();
      any = true;
    }
  if (!any) throw EmptyGraph();
  return best;
}

template <class Rng>
NodeId pick_uniform(const std::vector<NodeId>& v, Rng& rng) {
  std::uniform_int_distribution<std::size_t> d(0, v.size() - 1);
  return v[d(rng)];
}

class MaxNode : public Policy {
 public:
  std::string name() const override { return "max"; }
  std::optional<Event> next_event(const GraphPair& gp) override {
    if (gp.actual.empty()) return std::nullopt;
    return Event::del(max_degree_node(gp.actual));
  }
};

class NeighborOfMax : public Policy {
 public:
  explicit NeighborOfMax(std::uint64_t seed) : rng_(seed) {}
  std::string name() const override { return "nmax"; }
  std::optional<Event> next_event(const GraphPair& gp) override {
    if (gp.actual.empty()) return std::nullopt;
    NodeId m = max_degree_node(gp.actual);
    const auto& nb = gp.actual.neighbors(m);
    if (nb.empty()) return Event::del(m);
    return Event::del(pick_uniform(std::vector<NodeId>(nb.begin(), nb.end()), rng_));
  }

 private:
  std::mt19937_64 rng_;
};

class UniformRandom : public Policy {
 public:
  explicit UniformRandom(std::uint64_t seed) : rng_(seed) {}
  std::string name() const override { return "random"; }
  std::optional<Event> next_event(const GraphPair& gp) override {
    if (gp.actual.empty()) return std::nullopt;
    return Event::del(pick_uniform(gp.actual.nodes(), rng_));
  }

 private:
  std::mt19937_64 rng_;
};

class Scripted : public Policy {
 public:
  explicit Scripted(std::vector<Event> events) : events_(std::move(events)) {}
  std::string name() const override { return "script"; }
  std::optional<Event> next_event(const GraphPair&) override {
    if (i_ >= events_.size()) return std::nullopt;
    return events_[i_++];
  }

 private:
  std::vector<Event> events_;
  std::size_t i_ = 0;
};

// Random insertions and deletions; insertions attach to `attach` random live nodes and stop
// once `max_nodes` ids have been handed out.
class MixedRandom : public Policy {
 public:
  MixedRandom(std::uint64_t seed, double insert_prob, std::size_t attach, std::size_t max_nodes)
      : rng_(seed), p_(insert_prob), attach_(attach), max_nodes_(max_nodes) {}
  std::string name() const override { return "mixed"; }
  std::optional<Event> next_event(const GraphPair& gp) override {
    bool can_insert = gp.reference.node_count() < max_nodes_;
    bool insert = can_insert && (gp.actual.empty() || std::bernoulli_distribution(p_)(rng_));
    if (insert) {
      std::vector<NodeId> pool = gp.actual.nodes();
      std::shuffle(pool.begin(), pool.end(), rng_);
      pool.resize(std::min(pool.size(), attach_));
      std::sort(pool.begin(), pool.end());
      return Event::ins(gp.next_id, pool);
    }
    if (gp.actual.empty()) return std::nullopt;
    return Event::del(pick_uniform(gp.actual.nodes(), rng_));
  }

 private:
  std::mt19937_64 rng_;
  double p_;
  std::size_t attach_, max_nodes_;
};

// Shared helpers for the tree-shaped lower-bound programs.
class TreeProgram : public Policy {
 public:
  std::optional<Event> next_event(const GraphPair&) override {
    throw std::logic_error(name() + " must be driven");
  }

  std::size_t non_leaf_prune_deletions() const { return bad_prunes_; }

 protected:
  static long delta(const Stepper& s, NodeId v) { return s.state().delta(v); }

  // Nodes of the component holding `from` once `cut` is removed.
  static std::vector<NodeId> side(const Graph& g, NodeId cut, NodeId from) {
    std::vector<NodeId> out{from};
    std::set<NodeId> seen{cut, from};
    for (std::size_t i = 0; i < out.size(); ++i)
      for (NodeId u : g.neighbors(out[i]))
        if (seen.insert(u).second) out.push_back(u);
    return out;
  }

  // Deletes the subtree headed by s (as seen from r) leaves first.
  void prune(Stepper& s, NodeId r, NodeId sub) {
    auto order = side(s.state().actual, r, sub);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      if (!s.state().actual.has_node(*it)) continue;
      if (s.state().actual.degree(*it) > 1) ++bad_prunes_;
      s.apply(Event::del(*it));
    }
  }

  // Makes r and t adjacent by deleting the path between them, pruning side branches first.
  void graft(Stepper& s, NodeId r, NodeId t) {
    for (;;) {
      const Graph& g = s.state().actual;
      if (!g.has_node(r) || !g.has_node(t) || g.has_edge(r, t)) return;
      auto path = shortest_path(g, r, t);
      if (path.size() < 3) return;
      NodeId x = path[1];
      std::vector<NodeId> nb(g.neighbors(x).begin(), g.neighbors(x).end());
      for (NodeId y : nb) {
        if (y == path[0] || y == path[2]) continue;
        if (!s.state().actual.has_node(y)) continue;
        auto comp = side(s.state().actual, x, y);
        if (std::find(comp.begin(), comp.end(), r) != comp.end() || std::find(comp.begin(), comp.end(), t) != comp.end())
          continue;
        prune(s, x, y);
      }
      s.apply(Event::del(x));
    }
  }

  static std::vector<NodeId> shortest_path(const Graph& g, NodeId a, NodeId b) {
    std::map<NodeId, NodeId> prev{{a, a}};
    std::deque<NodeId> q{a};
    while (!q.empty()) {
      NodeId v = q.front();
      q.pop_front();
      if (v == b) break;
      for (NodeId u : g.neighbors(v))
        if (prev.emplace(u, v).second) q.push_back(u);
    }
    if (!prev.count(b)) return {};
    std::vector<NodeId> path{b};
    while (path.back() != a) path.push_back(prev.at(path.back()));
    std::reverse(path.begin(), path.end());
    return path;
  }

  static long max_delta(const Stepper& s) {
    long m = 0;
    for (NodeId v : s.state().actual.nodes()) m = std::max(m, delta(s, v));
    return m;
  }

  std::size_t bad_prunes_ = 0;
};

// Complete k-ary tree numbering: root 0, children of i are k*i+1 .. k*i+k.
inline std::size_t kary_size(std::size_t k, std::size_t depth) {
  std::size_t n = 0, layer = 1;
  for (std::size_t d = 0; d <= depth; ++d, layer *= k) n += layer;
  return n;
}

inline std::size_t kary_level(std::size_t k, NodeId v) {
  std::size_t lvl = 0;
  while (v != 0) {
    v = static_cast<NodeId>((v - 1) / k);
    ++lvl;
  }
  return lvl;
}

inline bool is_complete_kary(const Graph& g, std::size_t k, std::size_t depth) {
  std::size_t n = kary_size(k, depth);
  if (g.node_count() != n || g.edge_count() != n - 1) return false;
  for (NodeId v = 1; v < n; ++v)
    if (!g.has_edge(v, static_cast<NodeId>((v - 1) / k))) return false;
  return true;
}

// Level-by-level attack on a complete (M+2)-ary tree of the given depth.
class LevelAttack : public TreeProgram {
 public:
  LevelAttack(std::size_t m, std::size_t depth) : m_(m), depth_(depth) {}
  std::string name() const override { return "level"; }

  void drive(Stepper& s) override {
    std::size_t k = m_ + 2;
    if (!is_complete_kary(s.state().reference, k, depth_)) throw WrongTopology("level attack needs a complete (M+2)-ary tree");
    std::size_t n = kary_size(k, depth_);
    for (std::size_t lvl = depth_; lvl-- > 0;) {
      for (NodeId v = 0; v < n; ++v) {
        if (kary_level(k, v) != lvl || !s.state().actual.has_node(v)) continue;
        std::optional<NodeId> parent;
        if (v != 0) parent = static_cast<NodeId>((v - 1) / k);
        std::vector<NodeId> kids;
        for (NodeId u : s.state().actual.neighbors(v))
          if (!parent || u != *parent) kids.push_back(u);
        if (kids.size() > k) {
          std::sort(kids.begin(), kids.end(), [&](NodeId a, NodeId b) {
            long da = delta(s, a), db = delta(s, b);
            return da != db ? da < db : a < b;
          });
          for (std::size_t i = 0; i + k < kids.size(); ++i) prune(s, v, kids[i]);
        }
        s.apply(Event::del(v));
      }
    }
  }

 private:
  std::size_t m_, depth_;
};

// Recursive degree-raising attack on a complete ternary tree (Strategy-1 plus DegreeUp).
class LogLogAttack : public TreeProgram {
 public:
  // target = 0 picks ceil(log2 log3 n).
  explicit LogLogAttack(long target = 0) : target_(target) {}
  std::string name() const override { return "loglog"; }

  void drive(Stepper& s) override {
    const Graph& ref = s.state().reference;
    std::size_t n = ref.node_count();
    std::size_t depth = 0;
    while (kary_size(3, depth) < n) ++depth;
    if (!is_complete_kary(ref, 3, depth) || depth < 2) throw WrongTopology("loglog attack needs a complete ternary tree of >= 3 levels");
    n_ = n;
    long goal = target_ > 0 ? target_ : static_cast<long>(std::ceil(std::log2(std::log(double(n)) / std::log(3.0))));
    NodeId v = strategy1(s, 0, std::nullopt);
    while (alive(s, v) && delta(s, v) < goal && max_delta(s) < goal) {
      auto next = degree_up(s, v, delta(s, v), std::nullopt);
      if (!next) break;
      v = *next;
    }
  }

  // Runs only the 3-level strategy from the root.
  NodeId run_strategy1(Stepper& s) {
    n_ = s.state().reference.node_count();
    return strategy1(s, 0, std::nullopt);
  }

 private:
  static bool alive(const Stepper& s, NodeId v) { return s.state().actual.has_node(v); }

  static void del(Stepper& s, NodeId v) { s.apply(Event::del(v)); }

  // Original ternary children of v whose subtrees are still exactly as built.
  std::vector<NodeId> virgin_children(const Stepper& s, NodeId v) const {
    std::vector<NodeId> out;
    for (NodeId c = 3 * v + 1; c <= 3 * v + 3 && c < n_; ++c)
      if (untouched(s.state(), c)) out.push_back(c);
    return out;
  }
  bool untouched(const GraphPair& gp, NodeId c) const {
    if (!gp.actual.has_node(c) || gp.actual.neighbors(c) != gp.reference.neighbors(c)) return false;
    for (NodeId g = 3 * c + 1; g <= 3 * c + 3 && g < n_; ++g)
      if (!untouched(gp, g)) return false;
    return true;
  }

  static NodeId best_on_side(Stepper& s, const std::vector<NodeId>& cand) {
    NodeId best = cand.front();
    for (NodeId u : cand)
      if (delta(s, u) > delta(s, best) || (delta(s, u) == delta(s, best) && u < best)) best = u;
    return best;
  }

  // A node with delta >= level on v's side of `up` (anywhere when there is no `up`).
  static std::optional<NodeId> hit(Stepper& s, NodeId v, long level, const std::optional<NodeId>& up) {
    std::vector<NodeId> pool = up && alive(s, *up) ? side(s.state().actual, *up, v) : s.state().actual.nodes();
    for (NodeId u : pool)
      if (alive(s, u) && delta(s, u) >= level && (!up || u != *up)) return u;
    return std::nullopt;
  }

  // Raises some node below v to delta 2 using v's three original children and their children.
  NodeId strategy1(Stepper& s, NodeId v, std::optional<NodeId> up) {
    for (NodeId c : virgin_children(s, v)) {
      if (auto h = hit(s, v, 2, up)) return *h;
      del(s, c);
    }
    if (auto h = hit(s, v, 2, up)) return *h;
    for (;;) {
      std::optional<NodeId> zero;
      for (NodeId u : s.state().actual.neighbors(v))
        if ((!up || u != *up) && delta(s, u) == 0) {
          zero = u;
          break;
        }
      if (!zero) break;
      del(s, *zero);
      if (auto h = hit(s, v, 2, up)) return *h;
    }
    std::vector<NodeId> nb;
    for (NodeId u : s.state().actual.neighbors(v))
      if (!up || u != *up) nb.push_back(u);
    del(s, v);
    if (nb.empty()) return v;
    return best_on_side(s, nb);
  }

  std::optional<NodeId> degree_up(Stepper& s, NodeId v, long i, std::optional<NodeId> up) {
    if (i == 0) return strategy1(s, v, up);
    std::vector<NodeId> grafted;
    for (NodeId c : virgin_children(s, v)) {
      NodeId w = c;
      while (alive(s, w) && delta(s, w) < i) {
        auto nw = degree_up(s, w, delta(s, w), v);
        if (!nw || !alive(s, *nw)) return std::nullopt;
        w = *nw;
        graft(s, v, w);
      }
      if (alive(s, w)) grafted.push_back(w);
      if (grafted.size() == 3) break;
    }
    if (grafted.empty()) return std::nullopt;
    std::vector<NodeId> nb(s.state().actual.neighbors(v).begin(), s.state().actual.neighbors(v).end());
    for (NodeId y : nb) {
      if ((up && y == *up) || std::find(grafted.begin(), grafted.end(), y) != grafted.end()) continue;
      if (alive(s, y)) prune(s, v, y);
    }
    std::vector<NodeId> keep;
    for (NodeId u : s.state().actual.neighbors(v))
      if (!up || u != *up) keep.push_back(u);
    del(s, v);
    if (keep.empty()) return std::nullopt;
    return best_on_side(s, keep);
  }

  long target_;
  std::size_t n_ = 0;
};

// Deletes the center of a star.
class StarAttack : public Policy {
 public:
  explicit StarAttack(double alpha) : alpha_(alpha) {}
  std::string name() const override { return "star"; }
  double alpha() const { return alpha_; }
  std::optional<Event> next_event(const GraphPair& gp) override {
    if (done_) return std::nullopt;
    const Graph& g = gp.reference;
    NodeId c = max_degree_node(g);
    if (g.edge_count() != g.node_count() - 1 || g.degree(c) != g.node_count() - 1 || g.node_count() < 3)
      throw WrongTopology("star attack needs a star");
    done_ = true;
    return Event::del(c);
  }

 private:
  double alpha_;
  bool done_ = false;
};

// Stretch a degree-capped healer must accept on a star with max degree `max_degree`
// (additive cap alpha).
inline double star_beta_additive(double max_degree, double alpha) {
  return 0.5 * (std::log(max_degree) / std::log(alpha + 1) - 1);
}
// Same for a multiplicative cap alpha on a star with n nodes.
inline double star_beta_multiplicative(double n, double alpha) {
  return 0.5 * (std::log(n - 1) / std::log(alpha) - 1);
}

struct StarVerdict {
  double required_beta = 0;
  double observed_beta = 0;
  bool degree_capped = false;
  bool consistent = true;  // a capped healer must show at least the required stretch
};

// Evaluates the healed star: `multiplicative` picks the degree-ratio form.
inline StarVerdict check_star(const GraphPair& gp, double alpha, bool multiplicative) {
  StarVerdict v;
  std::size_t n = gp.reference.node_count();
  double worst_add = 0, worst_ratio = 0;
  for (NodeId u : gp.actual.nodes()) {
    double d = double(gp.actual.degree(u)), r = double(gp.reference.degree(u));
    worst_add = std::max(worst_add, d - r);
    if (r > 0) worst_ratio = std::max(worst_ratio, d / r);
  }
  if (multiplicative) {
    v.required_beta = star_beta_multiplicative(double(n), alpha);
    v.degree_capped = worst_ratio <= alpha;
  } else {
    v.required_beta = star_beta_additive(double(n - 1), alpha);
    v.degree_capped = worst_add <= alpha;
  }
  // Leaves were at distance 2 through the center.
  auto d = gp.actual.empty() ? std::optional<std::size_t>(0) : diameter(gp.actual);
  v.observed_beta = d ? double(*d) / 2.0 : INFINITY;
  v.consistent = !v.degree_capped || v.observed_beta >= v.required_beta;
  return v;
}

}  // namespace selfheal::adversary
