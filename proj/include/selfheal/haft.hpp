#pragma once

#include <algorithm>
#include <bit>
#include <functional>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace selfheal::haft {

struct ZeroLeaves : std::invalid_argument {
  ZeroLeaves() : std::invalid_argument("haft needs at least one leaf") {}
};
struct PayloadSourceExhausted : std::runtime_error {
  PayloadSourceExhausted() : std::runtime_error("spare payload source exhausted") {}
};

inline unsigned ceil_log2(std::size_t x) {
  return x <= 1 ? 0u : static_cast<unsigned>(std::bit_width(x - 1));
}
inline bool is_pow2(std::size_t x) { return x != 0 && (x & (x - 1)) == 0; }

template <class P>
struct Node {
  std::optional<P> payload;  // always set on leaves, optional on joints
  std::shared_ptr<const Node> left, right;
  unsigned height = 0;     // in edges; leaf = 0
  std::size_t desc = 1;    // leaf descendants
  P min_leaf{};            // smallest leaf payload below, for tie-breaking

  bool is_leaf() const { return !left; }
  bool is_complete() const { return desc == (std::size_t{1} << height); }
};

template <class P>
using NodePtr = std::shared_ptr<const Node<P>>;

template <class P>
NodePtr<P> make_leaf(P p) {
  auto n = std::make_shared<Node<P>>();
  n->payload = p;
  n->min_leaf = p;
  return n;
}

template <class P>
NodePtr<P> make_joint(NodePtr<P> l, NodePtr<P> r, std::optional<P> payload = std::nullopt) {
  auto n = std::make_shared<Node<P>>();
  n->payload = std::move(payload);
  n->height = std::max(l->height, r->height) + 1;
  n->desc = l->desc + r->desc;
  n->min_leaf = std::min(l->min_leaf, r->min_leaf);
  n->left = std::move(l);
  n->right = std::move(r);
  return n;
}

// Half-full tree: each internal node has two children, and its left child roots a
// complete subtree holding at least half of its leaves.
template <class P>
class Haft {
 public:
  using NodeT = Node<P>;
  using Ptr = NodePtr<P>;

  Haft() = default;
  explicit Haft(Ptr root) : root_(std::move(root)) {}

  static Haft build(const std::vector<P>& payloads) {
    if (payloads.empty()) throw ZeroLeaves();
    return Haft(build_range(payloads, 0, payloads.size()));
  }

  const Ptr& root() const { return root_; }
  std::size_t leaf_count() const { return root_ ? root_->desc : 0; }
  unsigned depth() const { return root_ ? root_->height : 0; }
  bool is_complete() const { return root_ && root_->is_complete(); }

  // Roots of the maximal complete subtrees, largest first.
  std::vector<Ptr> primary_roots() const {
    std::vector<Ptr> out;
    Ptr cur = root_;
    while (cur) {
      if (cur->is_complete()) {
        out.push_back(cur);
        break;
      }
      out.push_back(cur->left);
      cur = cur->right;
    }
    return out;
  }

  std::vector<Haft> strip() const {
    std::vector<Haft> out;
    for (auto& r : primary_roots()) out.emplace_back(r);
    return out;
  }

  std::vector<P> leaves() const {
    std::vector<P> out;
    collect(root_, out);
    return out;
  }

  // Checks the structural definition and the cached counters.
  bool valid() const { return root_ && check(root_); }

  std::string render() const {
    std::ostringstream os;
    render_rec(os, root_, 0);
    return os.str();
  }

  static bool shape_equal(const Ptr& a, const Ptr& b) {
    if (a->is_leaf() || b->is_leaf()) return a->is_leaf() && b->is_leaf();
    return shape_equal(a->left, b->left) && shape_equal(a->right, b->right);
  }

 private:
  static Ptr build_range(const std::vector<P>& p, std::size_t lo, std::size_t n) {
    if (n == 1) return make_leaf(p[lo]);
    std::size_t big = std::bit_floor(n);
    if (big == n) big = n / 2;
    // big == n/2 for powers of two, so both halves are complete.
    return make_joint<P>(build_range(p, lo, big), build_range(p, lo + big, n - big));
  }

  static void collect(const Ptr& n, std::vector<P>& out) {
    if (!n) return;
    if (n->is_leaf()) {
      out.push_back(*n->payload);
      return;
    }
    collect(n->left, out);
    collect(n->right, out);
  }

  static bool check(const Ptr& n) {
    if (n->is_leaf()) return n->height == 0 && n->desc == 1 && n->payload.has_value();
    if (!n->right) return false;
    if (!check(n->left) || !check(n->right)) return false;
    if (n->desc != n->left->desc + n->right->desc) return false;
    if (n->height != std::max(n->left->height, n->right->height) + 1) return false;
    if (!n->left->is_complete()) return false;
    return 2 * n->left->desc >= n->desc;
  }

  static void render_rec(std::ostringstream& os, const Ptr& n, int indent) {
    if (!n) return;
    os << std::string(static_cast<std::size_t>(indent) * 2, ' ');
    if (n->is_leaf()) {
      os << "leaf " << *n->payload << '\n';
      return;
    }
    os << "node h=" << n->height << " d=" << n->desc << '\n';
    render_rec(os, n->left, indent + 1);
    render_rec(os, n->right, indent + 1);
  }

  Ptr root_;
};

// Merges hafts the way binary numbers add: equal-size complete trees are paired up,
// then the distinct sizes are chained smallest first. `spare` supplies joint payloads.
template <class P>
Haft<P> merge(const std::vector<Haft<P>>& hafts, const std::function<std::optional<P>()>& spare) {
  using Ptr = NodePtr<P>;
  if (hafts.empty()) throw ZeroLeaves();
  std::vector<Ptr> trees;
  for (auto& h : hafts)
    for (auto& r : h.primary_roots()) trees.push_back(r);

  auto less = [](const Ptr& a, const Ptr& b) {
    if (a->desc != b->desc) return a->desc < b->desc;
    return a->min_leaf < b->min_leaf;
  };
  auto next_joint = [&]() {
    auto p = spare();
    if (!p) throw PayloadSourceExhausted();
    return p;
  };

  std::sort(trees.begin(), trees.end(), less);
  for (;;) {
    std::size_t i = 0;
    while (i + 1 < trees.size() && trees[i]->desc != trees[i + 1]->desc) ++i;
    if (i + 1 >= trees.size()) break;
    Ptr a = trees[i], b = trees[i + 1];  // a has the smaller min leaf
    trees.erase(trees.begin() + static_cast<long>(i), trees.begin() + static_cast<long>(i) + 2);
    Ptr j = make_joint<P>(a, b, next_joint());
    trees.insert(std::upper_bound(trees.begin(), trees.end(), j, less), j);
  }

  Ptr acc = trees.front();
  for (std::size_t i = 1; i < trees.size(); ++i) acc = make_joint<P>(trees[i], acc, next_joint());
  return Haft<P>(acc);
}

// Convenience spare source handing out consecutive values starting at `first`.
template <class P>
std::function<std::optional<P>()> counter_source(P first, std::size_t limit = SIZE_MAX) {
  auto next = std::make_shared<P>(first);
  auto left = std::make_shared<std::size_t>(limit);
  return [next, left]() -> std::optional<P> {
    if (*left == 0) return std::nullopt;
    --*left;
    return (*next)++;
  };
}

}  // namespace selfheal::haft
