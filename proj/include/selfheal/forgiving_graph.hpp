#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "haft.hpp"
#include "healer.hpp"

namespace selfheal::fgraph {

struct RepresentativeUnavailable : std::logic_error {
  RepresentativeUnavailable() : std::logic_error("representative already simulates a helper") {}
};

// Edge (owner, other) of the reference graph as seen by `owner`.
struct EdgeKey {
  NodeId owner = 0;
  NodeId other = 0;
  auto operator<=>(const EdgeKey&) const = default;
};

// A reconstruction-tree vertex: the leaf slot of an edge, or the helper kept for it.
struct TKey {
  bool helper = false;
  EdgeKey e;
  auto operator<=>(const TKey&) const = default;
  NodeId processor() const { return e.owner; }
};
inline TKey leaf_key(NodeId p, NodeId x) { return {false, {p, x}}; }
inline TKey helper_key(EdgeKey e) { return {true, e}; }

struct TNode {
  std::optional<TKey> parent;
  std::optional<TKey> left, right;
  unsigned height = 0;
  std::size_t desc = 1;
  EdgeKey rep;  // leaf slot that will simulate the next helper above this subtree
  std::uint64_t serial = 0;

  bool complete() const { return desc == (std::size_t{1} << height); }
};

// View of the per-edge state a processor keeps.
struct EdgeState {
  std::optional<NodeId> endpoint_real;
  std::optional<TKey> endpoint_rt;  // RT parent of the leaf slot, when the other end is gone
  bool hashelper = false;
  NodeId representative = 0;
  std::optional<TKey> hparent, hleftchild, hrightchild;
  unsigned height = 0;
  std::size_t desccount = 0;
  std::optional<EdgeKey> helper_representative;
};

struct PrRoot {
  TKey node;
  unsigned height = 0;
  std::size_t desccount = 0;
  EdgeKey representative;
};

struct RepairStats {
  std::size_t nset = 0;
  std::size_t levels = 0;
  std::map<std::string, std::size_t> messages;  // by class
  std::map<NodeId, std::size_t> node_messages;
  std::size_t helpers_created = 0, helpers_destroyed = 0;
  std::size_t max_probes_per_fragment = 0;
  std::size_t max_probes_per_walk = 0;
  std::size_t unanchored_fragments = 0;
  std::size_t latency = 0;

  std::size_t total() const {
    std::size_t s = 0;
    for (auto& [k, c] : messages) s += c;
    return s;
  }
  void send(const std::string& cls, NodeId from, std::size_t count = 1) {
    messages[cls] += count;
    node_messages[from] += count;
  }
};

inline bool test_primary_root(const TNode& y, const TNode* parent) {
  if (!y.complete()) return false;
  return parent == nullptr || !parent->complete();
}

class ForgivingGraph {
 public:
  // Optional permutation of intra-level processing order (for order-independence tests).
  void set_shuffle_seed(std::optional<std::uint64_t> s) { shuffle_ = s; }

  void init(const Graph& g0) {
    ref_ = g0;
    alive_.clear();
    rt_.clear();
    rep_log_.clear();
    for (NodeId v : g0.nodes()) alive_.insert(v);
  }

  void insert(NodeId v, const std::vector<NodeId>& neighbors) {
    if (ref_.has_node(v)) throw DuplicateNode(v);
    for (NodeId u : neighbors)
      if (!alive_.count(u)) throw UnknownNeighbor(u);
    ref_.add_node(v);
    for (NodeId u : neighbors) ref_.add_edge(v, u);
    alive_.insert(v);
  }

  bool alive(NodeId v) const { return alive_.count(v) != 0; }
  const Graph& reference() const { return ref_; }
  const std::map<TKey, TNode>& rt_nodes() const { return rt_; }

  EdgeState edge_state(NodeId v, NodeId x) const {
    if (!ref_.has_edge(v, x)) throw UnknownNode(x);
    EdgeState s;
    s.representative = v;
    if (alive_.count(x)) {
      s.endpoint_real = x;
    } else if (auto it = rt_.find(leaf_key(v, x)); it != rt_.end()) {
      s.endpoint_rt = it->second.parent;
    }
    if (auto it = rt_.find(helper_key({v, x})); it != rt_.end()) {
      s.hashelper = true;
      s.hparent = it->second.parent;
      s.hleftchild = it->second.left;
      s.hrightchild = it->second.right;
      s.height = it->second.height;
      s.desccount = it->second.desc;
      s.helper_representative = it->second.rep;
    }
    return s;
  }

  // Homomorphic image: every RT vertex collapses onto its processor.
  Graph project() const {
    Graph g;
    for (NodeId v : alive_) g.add_node(v);
    for (auto& [a, b] : ref_.edges())
      if (alive_.count(a) && alive_.count(b)) g.add_edge(a, b);
    for (auto& [k, n] : rt_)
      if (n.parent && n.parent->processor() != k.processor()) g.add_edge(k.processor(), n.parent->processor());
    return g;
  }

  RepairStats delete_fix(NodeId v) {
    if (!alive_.count(v)) throw UnknownNode(v);
    RepairStats st;
    std::vector<NodeId> nb(ref_.neighbors(v).begin(), ref_.neighbors(v).end());
    alive_.erase(v);

    // Vertices that vanish with v: its leaf slots and helpers.
    std::set<TKey> removed;
    for (NodeId x : nb) {
      if (rt_.count(leaf_key(v, x))) removed.insert(leaf_key(v, x));
      if (rt_.count(helper_key({v, x}))) removed.insert(helper_key({v, x}));
    }

    // Nset: real neighbors become fresh leaf slots; RT neighbours of the lost vertices stay put.
    std::set<TKey> anchors;
    for (NodeId x : nb) {
      if (alive_.count(x)) {
        TKey k = leaf_key(x, v);
        TNode n;
        n.rep = k.e;
        rt_[k] = n;
        anchors.insert(k);
        continue;
      }
      if (auto it = rt_.find(leaf_key(v, x)); it != rt_.end() && it->second.parent && !removed.count(*it->second.parent))
        anchors.insert(*it->second.parent);
      if (auto it = rt_.find(helper_key({v, x})); it != rt_.end()) {
        auto& h = it->second;
        if (h.parent && !removed.count(*h.parent)) anchors.insert(*h.parent);
        if (h.right && !removed.count(*h.right)) anchors.insert(*h.right);
      }
    }

    // Surviving vertices that touched a removed one; each fragment needs an anchor among them.
    std::set<TKey> touched;
    for (auto& k : removed) {
      const TNode& n = rt_.at(k);
      for (auto& o : {n.parent, n.left, n.right})
        if (o && !removed.count(*o)) touched.insert(*o);
    }
    for (auto& k : removed) {
      unlink(k);
      rt_.erase(k);
      if (k.helper) ++st.helpers_destroyed;
    }

    for (auto& t : touched) {
      auto frag = fragment_of(t);
      bool ok = std::any_of(frag.begin(), frag.end(), [&](const TKey& k) { return anchors.count(k) != 0; });
      if (!ok) {
        ++st.unanchored_fragments;
        anchors.insert(t);
      }
    }
    st.nset = anchors.size();
    if (anchors.empty()) return st;

    // BT_v: complete binary tree over anchors ordered by (processor, edge).
    std::vector<TKey> order(anchors.begin(), anchors.end());
    std::sort(order.begin(), order.end(), [](const TKey& a, const TKey& b) {
      return std::tie(a.e.owner, a.e.other, a.helper) < std::tie(b.e.owner, b.e.other, b.helper);
    });
    std::size_t m = order.size();
    for (std::size_t i = 1; i < m; ++i) st.send("bt", order[i].processor());
    st.latency = m > 1 ? 1 : 0;

    // Level 0: every anchor finds the primary roots of its part of the fragment.
    std::vector<Position> pos(m);
    for (std::size_t i = 0; i < m; ++i) pos[i].anchor = order[i];
    find_pr_roots_all(pos, anchors, st);

    // Bottom-up merge over the BT_v shape.
    std::vector<bool> gone(m, false);
    auto children = [&](std::size_t i) {
      std::vector<std::size_t> c;
      for (std::size_t j : {2 * i + 1, 2 * i + 2})
        if (j < m && !gone[j]) c.push_back(j);
      return c;
    };
    for (;;) {
      std::vector<std::size_t> ready;
      for (std::size_t i = 0; i < m; ++i) {
        if (gone[i]) continue;
        auto c = children(i);
        if (c.empty()) continue;
        bool all_leaves = std::all_of(c.begin(), c.end(), [&](std::size_t j) { return children(j).empty(); });
        if (all_leaves) ready.push_back(i);
      }
      if (ready.empty()) break;
      if (shuffle_) {
        std::mt19937_64 g(*shuffle_ + st.levels);
        std::shuffle(ready.begin(), ready.end(), g);
      }
      std::size_t level_lat = 0;
      for (std::size_t y : ready) {
        auto c = children(y);
        level_lat = std::max(level_lat, haft_merge(pos, y, c, st));
        for (std::size_t j : c) gone[j] = true;
      }
      ++st.levels;
      st.latency += level_lat;
    }
    if (pos[0].roots.size() > 1) {
      std::vector<std::size_t> none;
      st.latency += haft_merge(pos, 0, none, st);
    }
    for (std::size_t i = 1; i < m; ++i) st.send("bt", order[i].processor());
    return st;
  }

  // Probe walk from `start` over non-complete vertices; returns primary roots found and hop
  // distances. Walks stop at other anchors.
  std::map<TKey, std::size_t> find_pr_roots(const TKey& start, const std::set<TKey>& anchors, std::size_t* probes) const {
    std::map<TKey, std::size_t> found;
    std::map<TKey, std::size_t> dist{{start, 0}};
    std::vector<TKey> q{start};
    for (std::size_t i = 0; i < q.size(); ++i) {
      TKey k = q[i];
      const TNode& n = rt_.at(k);
      const TNode* par = n.parent ? &rt_.at(*n.parent) : nullptr;
      if (test_primary_root(n, par)) found[k] = dist[k];
      if (n.complete()) {
        // Inside a complete subtree only the parent can lead to more spine.
        if (par && !par->complete()) try_visit(*n.parent, k, dist, anchors, q, probes);
        continue;
      }
      for (auto& o : {n.parent, n.left, n.right})
        if (o) try_visit(*o, k, dist, anchors, q, probes);
    }
    return found;
  }

  // Structure checks: returns the problems found.
  std::vector<std::string> validate() const {
    std::vector<std::string> bad;
    for (auto& [k, n] : rt_) {
      if (!alive_.count(k.processor())) bad.push_back("vertex simulated by a dead processor");
      if (!ref_.has_edge(k.e.owner, k.e.other) || alive_.count(k.e.other)) bad.push_back("vertex for a live edge");
      if (k.helper && (!n.left || !n.right)) bad.push_back("helper with missing child");
      if (!k.helper && (n.left || n.right)) bad.push_back("leaf with children");
      if (k.helper) {
        auto it = rep_log_.find(n.serial);
        if (it == rep_log_.end() || !(it->second == n.rep)) bad.push_back("representative changed");
        if (!in_subtree(leaf_key(k.e.owner, k.e.other), n.left ? *n.left : k)) bad.push_back("helper not above its own leaf");
      }
    }
    for (NodeId v : alive_)
      for (NodeId x : ref_.neighbors(v))
        if (!alive_.count(x) && !rt_.count(leaf_key(v, x))) bad.push_back("missing leaf slot");
    for (auto& [k, n] : rt_) {
      if (n.parent) continue;
      auto h = to_haft(k);
      if (!h.valid()) bad.push_back("RT is not a valid haft");
      else if (!haft::Haft<std::uint64_t>::shape_equal(h.root(), shape_of(h.leaf_count()).root())) bad.push_back("RT shape differs from the unique haft");
    }
    return bad;
  }

  // Leaf-count of every RT, keyed by its root.
  std::map<TKey, std::size_t> rt_sizes() const {
    std::map<TKey, std::size_t> out;
    for (auto& [k, n] : rt_)
      if (!n.parent) out[k] = n.desc;
    return out;
  }

  haft::Haft<std::uint64_t> to_haft(const TKey& root) const {
    auto rec = [&](auto&& self, const TKey& k) -> haft::NodePtr<std::uint64_t> {
      const TNode& n = rt_.at(k);
      if (!k.helper) {
        auto leaf = haft::make_leaf<std::uint64_t>((std::uint64_t{k.e.owner} << 32) | k.e.other);
        return leaf;
      }
      auto l = self(self, *n.left);
      auto r = self(self, *n.right);
      auto j = std::make_shared<haft::Node<std::uint64_t>>(*haft::make_joint<std::uint64_t>(l, r));
      // Keep the cached counters the algorithm maintains so the validator can cross-check them.
      j->height = n.height;
      j->desc = n.desc;
      return j;
    };
    return haft::Haft<std::uint64_t>(rec(rec, root));
  }

 private:
  struct Position {
    TKey anchor;
    std::vector<TKey> roots;  // complete-tree roots held by this position
    bool merged = false;      // roots came from an earlier merge and still hang under spine helpers
    std::optional<TKey> haft_root;
  };

  static haft::Haft<std::uint64_t> shape_of(std::size_t l) {
    std::vector<std::uint64_t> p(l);
    for (std::size_t i = 0; i < l; ++i) p[i] = i;
    return haft::Haft<std::uint64_t>::build(p);
  }

  bool in_subtree(const TKey& needle, const TKey& top) const {
    std::optional<TKey> cur = needle;
    while (cur) {
      if (*cur == top) return true;
      auto it = rt_.find(*cur);
      if (it == rt_.end()) return false;
      cur = it->second.parent;
    }
    return false;
  }

  bool try_visit(const TKey& to, const TKey& from, std::map<TKey, std::size_t>& dist, const std::set<TKey>& anchors,
                 std::vector<TKey>& q, std::size_t* probes) const {
    if (dist.count(to)) return false;
    if (probes) *probes += 2;  // probe and reply
    if (anchors.count(to)) return false;  // rejected by another anchor
    dist[to] = dist[from] + 1;
    q.push_back(to);
    return true;
  }

  std::set<TKey> fragment_of(const TKey& start) const {
    std::set<TKey> seen{start};
    std::vector<TKey> st{start};
    while (!st.empty()) {
      TKey k = st.back();
      st.pop_back();
      const TNode& n = rt_.at(k);
      for (auto& o : {n.parent, n.left, n.right})
        if (o && seen.insert(*o).second) st.push_back(*o);
    }
    return seen;
  }

  void unlink(const TKey& k) {
    TNode& n = rt_.at(k);
    if (n.parent) {
      TNode& p = rt_.at(*n.parent);
      if (p.left == k) p.left.reset();
      if (p.right == k) p.right.reset();
    }
    for (auto& c : {n.left, n.right})
      if (c) rt_.at(*c).parent.reset();
    n.parent.reset();
    n.left.reset();
    n.right.reset();
  }

  std::size_t recount(const TKey& k) {
    TNode& n = rt_.at(k);
    if (!k.helper) return n.desc = 1;
    std::size_t d = 0;
    for (auto& c : {n.left, n.right})
      if (c) d += recount(*c);
    return n.desc = d;
  }

  // Assigns every primary root of every fragment to exactly one anchor: the nearest,
  // ties broken by anchor order. Non-complete vertices are dropped.
  void find_pr_roots_all(std::vector<Position>& pos, const std::set<TKey>& anchors, RepairStats& st) {
    // Descendant counts shrink where the fragment broke.
    std::set<TKey> tops;
    for (auto& p : pos) {
      TKey t = p.anchor;
      while (rt_.at(t).parent) t = *rt_.at(t).parent;
      tops.insert(t);
    }
    for (auto& t : tops) recount(t);

    std::map<TKey, std::pair<std::size_t, std::size_t>> claim;  // root -> (dist, position)
    std::map<TKey, std::size_t> probes_by_top;
    for (std::size_t i = 0; i < pos.size(); ++i) {
      std::size_t probes = 0;
      auto found = find_pr_roots(pos[i].anchor, anchors, &probes);
      st.send("probe", pos[i].anchor.processor(), probes);
      st.max_probes_per_walk = std::max(st.max_probes_per_walk, probes);
      TKey t = pos[i].anchor;
      while (rt_.at(t).parent) t = *rt_.at(t).parent;
      probes_by_top[t] += probes;
      for (auto& [r, d] : found) {
        auto it = claim.find(r);
        if (it == claim.end() || std::make_pair(d, i) < it->second) claim[r] = {d, i};
      }
    }
    for (auto& [t, p] : probes_by_top) st.max_probes_per_fragment = std::max(st.max_probes_per_fragment, p);
    for (auto& [r, di] : claim) pos[di.second].roots.push_back(r);
    for (auto& t : tops)
      for (auto& k : fragment_of(t)) {
        const TNode& n = rt_.at(k);
        if (test_primary_root(n, n.parent ? &rt_.at(*n.parent) : nullptr) && !claim.count(k)) {
          // Nobody reached this tree; hand it to the first anchor so it is not lost.
          ++st.unanchored_fragments;
          pos[0].roots.push_back(k);
        }
      }

    // Red vertices (non-complete) go away now; complete roots become free-standing.
    std::vector<TKey> red;
    for (auto& t : tops)
      for (auto& k : fragment_of(t))
        if (!rt_.at(k).complete()) red.push_back(k);
    for (auto& k : red) {
      st.send("remove", k.processor());
      unlink(k);
      rt_.erase(k);
      ++st.helpers_destroyed;
    }
    for (auto& p : pos) {
      if (!rt_.count(p.anchor)) {
        // Red anchor hands its BT_v edges to the largest primary root it found.
        if (!p.roots.empty()) {
          p.anchor = *std::max_element(p.roots.begin(), p.roots.end(), [&](const TKey& a, const TKey& b) {
            return std::make_pair(rt_.at(a).desc, a) < std::make_pair(rt_.at(b).desc, b);
          });
          st.send("handoff", p.anchor.processor(), 3);
        }
      }
      for (auto& r : p.roots) st.send("prlist", r.processor());  // anchor-to-root notice
    }
  }

  // Strips a previously merged haft back into its complete trees.
  std::size_t strip(Position& p, RepairStats& st) {
    if (!p.merged || !p.haft_root) return 0;
    std::size_t probes = 0, depth = 0;
    std::vector<TKey> roots;
    std::optional<TKey> cur = p.haft_root;
    while (cur) {
      TNode& n = rt_.at(*cur);
      probes += 2;
      ++depth;
      if (n.complete()) {
        roots.push_back(*cur);
        break;
      }
      roots.push_back(*n.left);
      std::optional<TKey> next = n.right;
      st.send("remove", cur->processor());
      unlink(*cur);
      rt_.erase(*cur);
      ++st.helpers_destroyed;
      cur = next;
    }
    st.send("probe", p.anchor.processor(), probes);
    st.max_probes_per_fragment = std::max(st.max_probes_per_fragment, probes);
    st.max_probes_per_walk = std::max(st.max_probes_per_walk, probes);
    p.roots = roots;
    p.merged = false;
    p.haft_root.reset();
    return depth;
  }

  // Haft_Merge at BT_v position y with its children; returns the latency of this step.
  std::size_t haft_merge(std::vector<Position>& pos, std::size_t y, const std::vector<std::size_t>& kids, RepairStats& st) {
    std::size_t lat = strip(pos[y], st);
    std::vector<TKey> all = pos[y].roots;
    for (std::size_t j : kids) {
      lat = std::max(lat, strip(pos[j], st));
      st.send("prlist", pos[j].anchor.processor(), pos[j].roots.size());
      st.send("prlist", pos[y].anchor.processor(), 1);
      all.insert(all.end(), pos[j].roots.begin(), pos[j].roots.end());
      pos[j].roots.clear();
    }
    lat = 2 * lat + 2;
    if (all.empty()) {
      pos[y].roots.clear();
      return lat;
    }
    TKey top = compute_haft(all, st);
    pos[y].roots = {top};
    pos[y].haft_root = top;
    pos[y].merged = !rt_.at(top).complete();
    if (pos[y].merged) {
      // Refresh the list with the primary roots of the new haft.
      std::vector<TKey> pr;
      std::optional<TKey> cur = top;
      while (cur) {
        const TNode& n = rt_.at(*cur);
        if (n.complete()) {
          pr.push_back(*cur);
          break;
        }
        pr.push_back(*n.left);
        cur = n.right;
      }
      for (auto& r : pr) st.send("prlist", r.processor());
    }
    return lat + 1;
  }

  TKey make_helper(const EdgeKey& rep_of_child, const TKey& l, const TKey& r, const EdgeKey& inherited, RepairStats& st) {
    TKey h = helper_key(rep_of_child);
    if (rt_.count(h)) throw RepresentativeUnavailable();
    TNode n;
    n.left = l;
    n.right = r;
    TNode& ln = rt_.at(l);
    TNode& rn = rt_.at(r);
    n.height = std::max(ln.height, rn.height) + 1;
    n.desc = ln.desc + rn.desc;
    n.rep = inherited;
    n.serial = ++serial_;
    rep_log_[n.serial] = inherited;
    ln.parent = h;
    rn.parent = h;
    rt_[h] = n;
    st.send("build", h.processor(), 3);
    ++st.helpers_created;
    return h;
  }

 public:
  // Joins free-standing complete trees into one haft: equal sizes pair up first (smallest
  // first, ties by vertex key), then the distinct sizes chain with the larger tree on the left.
  TKey compute_haft(std::vector<TKey> roots, RepairStats& st) {
    auto less = [&](const TKey& a, const TKey& b) {
      auto da = rt_.at(a).desc, db = rt_.at(b).desc;
      return da != db ? da < db : a < b;
    };
    std::sort(roots.begin(), roots.end(), less);
    for (;;) {
      std::size_t i = 0;
      while (i + 1 < roots.size() && rt_.at(roots[i]).desc != rt_.at(roots[i + 1]).desc) ++i;
      if (i + 1 >= roots.size()) break;
      TKey a = roots[i], b = roots[i + 1];
      roots.erase(roots.begin() + static_cast<long>(i), roots.begin() + static_cast<long>(i) + 2);
      TKey h = make_helper(rt_.at(a).rep, a, b, rt_.at(b).rep, st);
      roots.insert(std::upper_bound(roots.begin(), roots.end(), h, less), h);
    }
    TKey acc = roots.front();
    for (std::size_t i = 1; i < roots.size(); ++i) acc = make_helper(rt_.at(roots[i]).rep, roots[i], acc, rt_.at(acc).rep, st);
    return acc;
  }

  // Test hook: registers a free-standing leaf slot for (p, x).
  TKey add_leaf_slot(NodeId p, NodeId x) {
    TKey k = leaf_key(p, x);
    TNode n;
    n.rep = k.e;
    rt_[k] = n;
    return k;
  }

 private:
  Graph ref_;
  std::set<NodeId> alive_;
  std::map<TKey, TNode> rt_;
  std::map<std::uint64_t, EdgeKey> rep_log_;
  std::uint64_t serial_ = 0;
  std::optional<std::uint64_t> shuffle_;
};

class ForgivingGraphHealer : public Healer {
 public:
  std::string name() const override { return "fgraph"; }

  void init(GraphPair& gp) override { fg_.init(gp.reference); }

  HealReport on_insert(GraphPair&, NodeId v, const std::vector<NodeId>& nb) override {
    fg_.insert(v, nb);
    last_ = {};
    return {};
  }

  HealReport on_delete(GraphPair& gp, const DeleteContext& ctx) override {
    HealReport rep;
    last_degree_ = fg_.reference().degree(ctx.node);
    last_ = fg_.delete_fix(ctx.node);
    sync_actual(gp, fg_.project(), rep);
    for (auto& [v, c] : last_.node_messages) rep.send(v, c);
    rep.latency = last_.latency;
    return rep;
  }

  // Per-deletion message budget: c * d * ceil(log2 n).
  static constexpr std::size_t kMessageConstant = 40;

  std::vector<std::string> check(const GraphPair& gp, CheckLevel level) override {
    std::vector<std::string> bad;
    if (level == CheckLevel::Off) return bad;
    // Each G' edge carries at most a leaf slot plus one helper with three links.
    for (NodeId v : gp.actual.nodes())
      if (gp.actual.degree(v) > 4 * gp.reference.degree(v))
        bad.push_back("fgraph degree bound at " + std::to_string(v));
    if (!preserves_connectivity(gp)) bad.push_back("connectivity lost");
    std::size_t n = gp.reference.node_count();
    std::size_t lg = std::max<std::size_t>(1, ceil_log2(n));
    if (last_.total() > kMessageConstant * std::max<std::size_t>(1, last_degree_) * lg)
      bad.push_back("fgraph message budget exceeded");
    if (last_.unanchored_fragments) bad.push_back("fragment without anchor");
    if (level == CheckLevel::All)
      for (auto& s : fg_.validate()) bad.push_back("fgraph structure: " + s);
    return bad;
  }

  ForgivingGraph& graph() { return fg_; }
  const RepairStats& last_repair() const { return last_; }
  std::size_t last_degree() const { return last_degree_; }

 private:
  ForgivingGraph fg_;
  RepairStats last_;
  std::size_t last_degree_ = 0;
};

}  // namespace selfheal::fgraph
