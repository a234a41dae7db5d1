#include <gtest/gtest.h>

#include <bit>
#include <memory>

#include "selfheal/haft.hpp"

using namespace selfheal::haft;

namespace {

using H = Haft<int>;

std::vector<int> iota(int n, int from = 0) {
  std::vector<int> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = from + i;
  return v;
}

// Plain shape tree for the enumeration oracle.
struct Shape {
  std::shared_ptr<Shape> l, r;
};
using ShapePtr = std::shared_ptr<Shape>;

std::size_t leaves(const ShapePtr& s) { return s->l ? leaves(s->l) + leaves(s->r) : 1; }
std::size_t height(const ShapePtr& s) { return s->l ? 1 + std::max(height(s->l), height(s->r)) : 0; }
bool complete(const ShapePtr& s) { return leaves(s) == (std::size_t{1} << height(s)); }

// Every full binary tree with n leaves.
std::vector<ShapePtr> all_shapes(std::size_t n) {
  if (n == 1) return {std::make_shared<Shape>()};
  std::vector<ShapePtr> out;
  for (std::size_t k = 1; k < n; ++k)
    for (auto& a : all_shapes(k))
      for (auto& b : all_shapes(n - k)) out.push_back(std::make_shared<Shape>(Shape{a, b}));
  return out;
}

// The half-full condition, written straight from the definition.
bool half_full(const ShapePtr& s) {
  if (!s->l) return true;
  return complete(s->l) && 2 * leaves(s->l) >= leaves(s) && half_full(s->l) && half_full(s->r);
}

bool same(const ShapePtr& s, const NodePtr<int>& n) {
  if (!s->l || n->is_leaf()) return !s->l && n->is_leaf();
  return same(s->l, n->left) && same(s->r, n->right);
}

std::vector<std::size_t> sizes(const std::vector<H>& hs) {
  std::vector<std::size_t> out;
  for (auto& h : hs) out.push_back(h.leaf_count());
  return out;
}

}  // namespace

TEST(Haft, UniqueShapeMatchesEnumeration) {
  for (std::size_t n = 1; n <= 12; ++n) {
    std::vector<ShapePtr> hits;
    for (auto& s : all_shapes(n))
      if (half_full(s)) hits.push_back(s);
    ASSERT_EQ(hits.size(), 1u) << n;
    EXPECT_TRUE(same(hits[0], H::build(iota(int(n))).root())) << n;
  }
}

TEST(Haft, BuildSmall) {
  EXPECT_TRUE(H::build({7}).root()->is_leaf());
  auto four = H::build(iota(4));
  EXPECT_TRUE(four.is_complete());
  EXPECT_EQ(four.depth(), 2u);
  auto seven = H::build(iota(7));
  EXPECT_EQ(seven.depth(), 3u);
  EXPECT_EQ(sizes(seven.strip()), (std::vector<std::size_t>{4, 2, 1}));
  EXPECT_THROW(H::build({}), ZeroLeaves);
}

TEST(Haft, BuildKeepsLeafOrder) {
  EXPECT_EQ(H::build(iota(11)).leaves(), iota(11));
}

TEST(Haft, StripExamples) {
  EXPECT_EQ(sizes(H::build(iota(8)).strip()), (std::vector<std::size_t>{8}));
  EXPECT_EQ(sizes(H::build(iota(6)).strip()), (std::vector<std::size_t>{4, 2}));
  EXPECT_EQ(H::build(iota(5)).primary_roots().size(), 2u);
}

TEST(Haft, MergeExamples) {
  auto src = counter_source<int>(1000);
  auto m = merge<int>({H::build(iota(3)), H::build(iota(5, 10))}, src);
  EXPECT_EQ(m.leaf_count(), 8u);
  EXPECT_TRUE(m.is_complete());
  EXPECT_TRUE(m.valid());

  auto one = counter_source<int>(100, 1);
  auto two = merge<int>({H::build({1}), H::build({2})}, one);
  EXPECT_TRUE(two.is_complete());
  EXPECT_EQ(*two.root()->payload, 100);
  EXPECT_FALSE(one().has_value());

  auto six = merge<int>({H::build(iota(4)), H::build(iota(2, 10))}, counter_source<int>(50));
  EXPECT_EQ(sizes(six.strip()), (std::vector<std::size_t>{4, 2}));
}

TEST(Haft, MergeRunsOutOfPayloads) {
  auto none = counter_source<int>(0, 0);
  EXPECT_THROW(merge<int>({H::build({1}), H::build({2})}, none), PayloadSourceExhausted);
  EXPECT_THROW(merge<int>({}, none), ZeroLeaves);
}

TEST(Haft, MergeEqualsBinaryAdditionSmall) {
  for (int a = 1; a <= 16; ++a)
    for (int b = 1; b <= 16; ++b) {
      auto m = merge<int>({H::build(iota(a)), H::build(iota(b, 100))}, counter_source<int>(1000));
      auto want = H::build(iota(a + b));
      ASSERT_TRUE(m.valid());
      ASSERT_TRUE(H::shape_equal(m.root(), want.root())) << a << "+" << b;
      auto l = m.leaves();
      std::sort(l.begin(), l.end());
      auto all = iota(a);
      auto rb = iota(b, 100);
      all.insert(all.end(), rb.begin(), rb.end());
      EXPECT_EQ(l, all);
    }
}

TEST(Haft, ValidRejectsBrokenTrees) {
  auto l = make_leaf(1), r = make_leaf(2), s = make_leaf(3);
  auto right_heavy = make_joint<int>(l, make_joint<int>(r, s));
  EXPECT_FALSE(H(right_heavy).valid());
  EXPECT_TRUE(H(make_joint<int>(make_joint<int>(l, r), s)).valid());
}
