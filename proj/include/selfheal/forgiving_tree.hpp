#pragma once

#include <algorithm>
#include <compare>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "healer.hpp"

namespace selfheal::ftree {

struct NotATree : std::invalid_argument {
  NotATree() : std::invalid_argument("forgiving tree needs a tree") {}
};
struct NoChildren : std::invalid_argument {
  NoChildren() : std::invalid_argument("node has no children") {}
};
struct PreconditionViolated : std::logic_error {
  using std::logic_error::logic_error;
};

// Reconstruction-tree shape a node leaves behind: leaves are child slots, internal
// nodes are helper roles labelled by the slot that will simulate them.
struct SubRt {
  struct Node {
    NodeId label = 0;
    bool leaf = true;
    int parent = -1, left = -1, right = -1;
  };
  std::vector<Node> nodes;  // dead entries are kept with label unused
  int root = -1;

  bool empty() const { return root < 0; }

  std::vector<NodeId> leaves() const {
    std::vector<NodeId> out;
    walk(root, [&](int i) {
      if (nodes[i].leaf) out.push_back(nodes[i].label);
    });
    return out;
  }
  std::vector<NodeId> internal_labels() const {
    std::vector<NodeId> out;
    walk(root, [&](int i) {
      if (!nodes[i].leaf) out.push_back(nodes[i].label);
    });
    return out;
  }
  // The slot without a helper role inherits the parent's place.
  std::optional<NodeId> heir() const {
    if (empty()) return std::nullopt;
    auto in = internal_labels();
    std::set<NodeId> s(in.begin(), in.end());
    for (NodeId l : leaves())
      if (!s.count(l)) return l;
    return std::nullopt;
  }
  int find_leaf(NodeId y) const {
    int hit = -1;
    walk(root, [&](int i) {
      if (nodes[i].leaf && nodes[i].label == y) hit = i;
    });
    return hit;
  }
  int find_internal(NodeId y) const {
    int hit = -1;
    walk(root, [&](int i) {
      if (!nodes[i].leaf && nodes[i].label == y) hit = i;
    });
    return hit;
  }

  void relabel(NodeId from, NodeId to) {
    walk(root, [&](int i) {
      if (nodes[i].label == from) nodes[i].label = to;
    });
  }

  // Drops leaf y; its SubRT parent disappears and the parent's label takes over y's
  // helper role (or becomes the new heir when y had none).
  void remove_leaf(NodeId y) {
    int li = find_leaf(y);
    if (li < 0) throw PreconditionViolated("slot not in will");
    int pi = nodes[li].parent;
    if (pi < 0) {
      root = -1;
      return;
    }
    NodeId freed = nodes[pi].label;
    int sib = nodes[pi].left == li ? nodes[pi].right : nodes[pi].left;
    int gp = nodes[pi].parent;
    nodes[sib].parent = gp;
    if (gp < 0)
      root = sib;
    else if (nodes[gp].left == pi)
      nodes[gp].left = sib;
    else
      nodes[gp].right = sib;
    if (freed != y) {
      int own = find_internal(y);
      if (own >= 0) nodes[own].label = freed;
    }
  }

  template <class F>
  void walk(int i, F&& f) const {
    if (i < 0) return;
    f(i);
    walk(nodes[i].left, f);
    walk(nodes[i].right, f);
  }
};

// Balanced search tree over the sorted slots, split at the lower median.
inline SubRt generate_sub_rt(std::vector<NodeId> children) {
  if (children.empty()) throw NoChildren();
  std::sort(children.begin(), children.end());
  SubRt t;
  auto rec = [&](auto&& self, std::size_t lo, std::size_t hi, int parent) -> int {
    int idx = static_cast<int>(t.nodes.size());
    t.nodes.push_back({});
    t.nodes[idx].parent = parent;
    if (lo == hi) {
      t.nodes[idx].label = children[lo];
      return idx;
    }
    std::size_t mid = lo + (hi - lo) / 2;
    t.nodes[idx].label = children[mid];
    t.nodes[idx].leaf = false;
    int l = self(self, lo, mid, idx);
    int r = self(self, mid + 1, hi, idx);
    t.nodes[idx].left = l;
    t.nodes[idx].right = r;
    return idx;
  };
  t.root = rec(rec, 0, children.size() - 1, -1);
  return t;
}

// Virtual-tree vertex: the real node x or the helper simulated by x.
struct VKey {
  bool helper = false;
  NodeId owner = 0;
  auto operator<=>(const VKey&) const = default;
};
inline VKey real_key(NodeId x) { return {false, x}; }
inline VKey helper_key(NodeId x) { return {true, x}; }

struct WillEntry {
  std::optional<NodeId> nextparent;
  std::optional<NodeId> nexthparent;
  std::vector<NodeId> nexthchildren;
  friend bool operator==(const WillEntry&, const WillEntry&) = default;
};

struct NodeFields {
  std::optional<NodeId> parent;
  std::vector<NodeId> children;
  std::optional<NodeId> heir;
  std::optional<NodeId> hparent;
  std::vector<NodeId> hchildren;
  std::optional<NodeId> nextparent, nexthparent;
  std::vector<NodeId> nexthchildren;
  bool ishelper = false;
  bool isreadyheir = false;

  // Number of fields that differ; each one costs a message.
  std::size_t diff(const NodeFields& o) const {
    return (parent != o.parent) + (children != o.children) + (heir != o.heir) + (hparent != o.hparent) +
           (hchildren != o.hchildren) + (nextparent != o.nextparent) + (nexthparent != o.nexthparent) +
           (nexthchildren != o.nexthchildren) + (ishelper != o.ishelper) + (isreadyheir != o.isreadyheir);
  }
};

class ForgivingTree {
 public:
  struct VNode {
    std::optional<VKey> parent;
    std::vector<VKey> children;
  };

  ForgivingTree() = default;

  // Roots the tree at `root` and hands every non-leaf its will.
  void init(const Graph& tree, NodeId root) {
    if (!is_tree(tree) || !tree.has_node(root)) throw NotATree();
    vt_.clear();
    wills_.clear();
    root_ = real_key(root);
    vt_[*root_] = {};
    std::vector<NodeId> order{root};
    std::set<NodeId> seen{root};
    for (std::size_t i = 0; i < order.size(); ++i) {
      NodeId v = order[i];
      for (NodeId u : tree.neighbors(v))
        if (seen.insert(u).second) {
          order.push_back(u);
          vt_[real_key(u)].parent = real_key(v);
          vt_[real_key(v)].children.push_back(real_key(u));
        }
    }
    for (auto& [k, n] : vt_)
      if (!n.children.empty()) wills_[k.owner] = generate_sub_rt(slots(k.owner));
  }

  bool alive(NodeId x) const { return vt_.count(real_key(x)) != 0; }
  bool has_helper(NodeId x) const { return vt_.count(helper_key(x)) != 0; }
  const std::map<VKey, VNode>& nodes() const { return vt_; }
  std::optional<VKey> root() const { return root_; }
  const SubRt* will_of(NodeId v) const {
    auto it = wills_.find(v);
    return it == wills_.end() ? nullptr : &it->second;
  }

  // Slot ids of v's virtual children: a real child counts as itself, a ready helper as its simulator.
  std::vector<NodeId> slots(NodeId v) const {
    std::vector<NodeId> out;
    for (auto& c : vt_.at(real_key(v)).children) out.push_back(c.owner);
    std::sort(out.begin(), out.end());
    return out;
  }

  NodeId image(VKey k) const { return k.owner; }

  // Real graph: every virtual edge collapsed onto the simulating processors.
  Graph project() const {
    Graph g;
    for (auto& [k, n] : vt_)
      if (!k.helper) g.add_node(k.owner);
    for (auto& [k, n] : vt_)
      for (auto& c : n.children)
        if (k.owner != c.owner) g.add_edge(k.owner, c.owner);
    return g;
  }

  void delete_node(NodeId v) {
    if (!alive(v)) throw UnknownNode(v);
    if (vt_.at(real_key(v)).children.empty())
      fix_leaf_deletion(v);
    else
      fix_node_deletion(v);
  }

  // Replaces helper(x), which must have a single child, by a direct edge.
  void bypass(NodeId x) {
    VKey h = helper_key(x);
    auto& n = vt_.at(h);
    if (n.children.size() != 1) throw PreconditionViolated("bypass needs exactly one helper child");
    VKey c = n.children.front();
    replace(h, c);
    vt_.erase(h);
  }

  // What v's slots would become if v were deleted now.
  std::map<NodeId, WillEntry> make_will(NodeId v) const {
    std::map<NodeId, WillEntry> out;
    auto it = wills_.find(v);
    if (it == wills_.end() || it->second.empty()) return out;
    const SubRt& rt = it->second;
    NodeId h = *rt.heir();
    VKey rv = real_key(v);
    std::optional<VKey> pv = vt_.at(rv).parent;
    bool vh = has_helper(v);

    // Image of the vertex occupying slot y's leaf position.
    auto leaf_image = [&](NodeId y) -> NodeId {
      VKey c = slot_vertex(v, y);
      if (!c.helper) return y;
      return vt_.at(c).children.front().owner;
    };
    auto node_image = [&](int i) { return rt.nodes[i].leaf ? leaf_image(rt.nodes[i].label) : rt.nodes[i].label; };

    std::optional<NodeId> root_parent;
    if (vh) {
      if (pv) root_parent = (*pv == helper_key(v)) ? h : pv->owner;
      auto& hv = vt_.at(helper_key(v));
      WillEntry& e = out[h];
      if (hv.parent) e.nexthparent = (*hv.parent == rv) ? node_image(rt.root) : hv.parent->owner;
      for (auto& c : hv.children) e.nexthchildren.push_back(c == rv ? node_image(rt.root) : c.owner);
    } else {
      root_parent = h;
      WillEntry& e = out[h];
      if (pv) e.nexthparent = pv->owner;
      e.nexthchildren.push_back(node_image(rt.root));
    }

    for (int i = 0; i < static_cast<int>(rt.nodes.size()); ++i) {
      bool live = false;
      rt.walk(rt.root, [&](int j) { live = live || j == i; });
      if (!live) continue;
      const auto& sn = rt.nodes[i];
      std::optional<NodeId> up = sn.parent < 0 ? root_parent : std::optional<NodeId>(rt.nodes[sn.parent].label);
      if (sn.leaf) {
        VKey c = slot_vertex(v, sn.label);
        // A ready helper slot keeps its real node where it is unless that node is the lone child.
        if (!c.helper || vt_.at(c).children.front() == real_key(sn.label)) out[sn.label].nextparent = up;
        else out[sn.label].nextparent = vt_.at(real_key(sn.label)).parent->owner;
      } else {
        WillEntry& e = out[sn.label];
        e.nexthparent = up;
        e.nexthchildren = {node_image(sn.left), node_image(sn.right)};
      }
    }
    for (auto& [y, e] : out) std::sort(e.nexthchildren.begin(), e.nexthchildren.end());
    return out;
  }

  std::map<NodeId, NodeFields> fields() const {
    std::map<NodeId, NodeFields> out;
    for (auto& [k, n] : vt_) {
      if (k.helper) continue;
      NodeFields& f = out[k.owner];
      if (n.parent) f.parent = n.parent->owner;
      for (auto& c : n.children) f.children.push_back(c.owner);
      std::sort(f.children.begin(), f.children.end());
      if (auto w = will_of(k.owner)) f.heir = w->heir();
      auto h = vt_.find(helper_key(k.owner));
      if (h != vt_.end()) {
        f.ishelper = true;
        if (h->second.parent) f.hparent = h->second.parent->owner;
        for (auto& c : h->second.children) f.hchildren.push_back(c.owner);
        std::sort(f.hchildren.begin(), f.hchildren.end());
        f.isreadyheir = h->second.children.size() == 1;
      }
    }
    for (auto& [v, w] : wills_)
      for (auto& [y, e] : make_will(v)) {
        auto& f = out.at(y);
        f.nextparent = e.nextparent;
        f.nexthparent = e.nexthparent;
        f.nexthchildren = e.nexthchildren;
      }
    return out;
  }

  // Structural invariants; returns the first problem found.
  std::optional<std::string> validate() const {
    for (auto& [k, n] : vt_) {
      if (k.helper && !vt_.count(real_key(k.owner))) return "helper without live simulator";
      if (k.helper && (n.children.empty() || n.children.size() > 2)) return "helper arity";
      for (auto& c : n.children)
        if (!vt_.count(c) || vt_.at(c).parent != k) return "broken parent link";
      if (!k.helper) {
        for (auto& c : n.children) {
          if (c.helper && vt_.at(c).children.size() != 1) return "real node has a non-ready helper child";
          if (!c.helper && has_helper(c.owner)) return "helper simulator hangs below a real node";
        }
        auto it = wills_.find(k.owner);
        std::vector<NodeId> want = slots(k.owner);
        std::vector<NodeId> have;
        if (it != wills_.end()) have = it->second.leaves();
        std::sort(have.begin(), have.end());
        if (want != have) return "will out of sync with children";
      }
    }
    return std::nullopt;
  }

 private:
  VKey slot_vertex(NodeId v, NodeId y) const {
    for (auto& c : vt_.at(real_key(v)).children)
      if (c.owner == y) return c;
    throw PreconditionViolated("unknown slot");
  }

  // `neu` takes the position of `old` under old's parent; old is left detached.
  void replace(VKey old, VKey neu) {
    auto& on = vt_.at(old);
    auto p = on.parent;
    auto& nn = vt_.at(neu);
    if (nn.parent) detach(neu);
    nn.parent = p;
    if (p) {
      auto& ch = vt_.at(*p).children;
      *std::find(ch.begin(), ch.end(), old) = neu;
    } else {
      root_ = neu;
    }
    vt_.at(old).parent.reset();
    if (p && !p->helper && old.owner != neu.owner) wills_.at(p->owner).relabel(old.owner, neu.owner);
  }

  void detach(VKey k) {
    auto& n = vt_.at(k);
    if (!n.parent) return;
    auto& ch = vt_.at(*n.parent).children;
    ch.erase(std::find(ch.begin(), ch.end(), k));
    n.parent.reset();
  }

  void relabel(VKey from, VKey to) {
    if (vt_.count(to)) throw PreconditionViolated("second helper for one node");
    VNode n = vt_.at(from);
    vt_.erase(from);
    vt_[to] = n;
    if (n.parent) {
      auto& ch = vt_.at(*n.parent).children;
      *std::find(ch.begin(), ch.end(), from) = to;
      if (!n.parent->helper) wills_.at(n.parent->owner).relabel(from.owner, to.owner);
    } else {
      root_ = to;
    }
    for (auto& c : n.children) vt_.at(c).parent = to;
  }

  VKey new_vertex(VKey k) {
    if (vt_.count(k)) throw PreconditionViolated("second helper for one node");
    vt_[k] = {};
    return k;
  }

  void attach(VKey parent, VKey child) {
    vt_.at(child).parent = parent;
    vt_.at(parent).children.push_back(child);
  }

  void fix_node_deletion(NodeId v) {
    VKey rv = real_key(v);
    SubRt rt = wills_.at(v);
    NodeId h = *rt.heir();

    // Detach every slot; a ready helper slot gives up its helper role first.
    std::map<NodeId, VKey> leaf_vertex;
    for (VKey c : std::vector<VKey>(vt_.at(rv).children)) {
      detach(c);
      if (c.helper) {
        VKey only = vt_.at(c).children.front();
        detach(only);
        vt_.erase(c);
        leaf_vertex[c.owner] = only;
      } else {
        leaf_vertex[c.owner] = c;
      }
    }

    auto build = [&](auto&& self, int i) -> VKey {
      const auto& sn = rt.nodes[i];
      if (sn.leaf) return leaf_vertex.at(sn.label);
      VKey hk = new_vertex(helper_key(sn.label));
      attach(hk, self(self, sn.left));
      attach(hk, self(self, sn.right));
      return hk;
    };
    VKey top = build(build, rt.root);

    if (has_helper(v)) {
      relabel(helper_key(v), helper_key(h));
      replace(rv, top);
    } else {
      VKey hh = new_vertex(helper_key(h));
      attach(hh, top);
      replace(rv, hh);
    }
    vt_.erase(rv);
    wills_.erase(v);
  }

  void fix_leaf_deletion(NodeId v) {
    VKey rv = real_key(v);
    std::optional<VKey> p = vt_.at(rv).parent;
    drop_child(p, rv);
    vt_.erase(rv);
    wills_.erase(v);
    if (!p) root_.reset();

    std::vector<NodeId> freed;
    while (p && p->helper) {
      VKey cur = *p;
      auto& n = vt_.at(cur);
      if (n.children.size() == 1) {
        bypass(cur.owner);
        freed.push_back(cur.owner);
        break;
      }
      // The helper lost its only child: remove it and continue upward.
      p = n.parent;
      drop_child(p, cur);
      vt_.erase(cur);
      freed.push_back(cur.owner);
      if (!p) root_.reset();
    }
    if (has_helper(v)) {
      auto it = std::find_if(freed.begin(), freed.end(), [&](NodeId f) { return f != v && !has_helper(f); });
      if (it == freed.end()) throw PreconditionViolated("orphaned helper");
      relabel(helper_key(v), helper_key(*it));
    }
  }

  void drop_child(const std::optional<VKey>& p, VKey c) {
    if (!p) return;
    detach(c);
    if (!p->helper) {
      auto& w = wills_.at(p->owner);
      w.remove_leaf(c.owner);
      if (w.empty()) wills_.erase(p->owner);
    }
  }

  std::map<VKey, VNode> vt_;
  std::map<NodeId, SubRt> wills_;
  std::optional<VKey> root_;
};

class ForgivingTreeHealer : public Healer {
 public:
  std::string name() const override { return "ftree"; }
  bool supports_insert() const override { return false; }

  void init(GraphPair& gp) override {
    const Graph& g = gp.actual;
    if (g.empty()) throw NotATree();
    ft_.init(g, g.nodes().front());
    g0_ = g;
    height0_ = 0;
    for (auto& [v, d] : bfs_distances(g, g.nodes().front())) height0_ = std::max(height0_, d);
    maxdeg0_ = 0;
    for (NodeId v : g.nodes()) maxdeg0_ = std::max(maxdeg0_, g.degree(v));
    fields_ = ft_.fields();
  }

  HealReport on_insert(GraphPair&, NodeId, const std::vector<NodeId>&) override {
    throw std::logic_error("forgiving tree does not handle insertions");
  }

  HealReport on_delete(GraphPair& gp, const DeleteContext& ctx) override {
    HealReport rep;
    Graph before = ft_.project();
    ft_.delete_node(ctx.node);
    sync_actual(gp, ft_.project(), rep);

    auto now = ft_.fields();
    std::size_t msgs = 0;
    last_reach_ = 0;
    auto near = bfs_distances(before, ctx.node);
    for (auto& [x, f] : now) {
      auto it = fields_.find(x);
      std::size_t d = it == fields_.end() ? 10 : f.diff(it->second);
      if (d) {
        rep.send(x, d);
        msgs += d;
        auto h = near.find(x);
        last_reach_ = std::max(last_reach_, h == near.end() ? SIZE_MAX : h->second);
      }
    }
    fields_ = std::move(now);
    last_degree_ = ctx.neighbors.size();
    last_msgs_ = msgs;
    rep.latency = msgs ? 2 : 0;
    return rep;
  }

  // Field-change messages per deletion stay within this multiple of the deleted degree.
  static constexpr std::size_t kMessageConstant = 12;

  std::vector<std::string> check(const GraphPair& gp, CheckLevel level) override {
    std::vector<std::string> bad;
    if (level == CheckLevel::Off) return bad;
    if (last_msgs_ > kMessageConstant * std::max<std::size_t>(1, last_degree_)) bad.push_back("ftree message budget exceeded");
    for (NodeId v : gp.actual.nodes())
      if (gp.delta(v) > 3) bad.push_back("ftree degree +3 exceeded at " + std::to_string(v));
    if (auto e = ft_.validate()) bad.push_back("ftree structure: " + *e);
    if (!preserves_connectivity(gp)) bad.push_back("connectivity lost");
    if (level == CheckLevel::All && !gp.actual.empty()) {
      auto d = diameter(gp.actual);
      std::size_t bound = 2 * (height0_ + 1) * std::max<std::size_t>(1, ceil_log2(maxdeg0_));
      if (!d || *d > bound) bad.push_back("ftree diameter bound exceeded");
    }
    return bad;
  }

  const ForgivingTree& tree() const { return ft_; }
  std::size_t last_reach() const { return last_reach_; }
  std::size_t last_degree() const { return last_degree_; }
  std::size_t initial_height() const { return height0_; }
  std::size_t initial_max_degree() const { return maxdeg0_; }

 private:
  ForgivingTree ft_;
  Graph g0_;
  std::size_t height0_ = 0, maxdeg0_ = 0;
  std::map<NodeId, NodeFields> fields_;
  std::size_t last_reach_ = 0, last_degree_ = 0, last_msgs_ = 0;
};

}  // namespace selfheal::ftree
