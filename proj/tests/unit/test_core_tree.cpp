#include "bft/core_tree.hpp"
#include "bft/montecarlo.hpp"
#include "bft/permutations.hpp"
#include "bft/rng.hpp"
#include "../support/oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <bit>
#include <map>
#include <set>
#include <numeric>

using namespace bft;

namespace {

std::vector<int> as_ints(const Permutation& p) { return {p.values().begin(), p.values().end()}; }

BinaryTree perfect(unsigned levels) {
  BinaryTree t = BinaryTree::single();
  for (unsigned i = 1; i < levels; ++i) t = BinaryTree::join(&t, &t);
  return t;
}

BinaryTree right_path(std::size_t m) { return bst_from_permutation(Permutation::identity(m)); }

}  // namespace

TEST_CASE("BST insertion matches naive insertion") {
  const Permutation fig({5, 4, 7, 2, 8, 1, 3, 6});
  const auto t = bst_from_permutation(fig);
  const auto naive = oracle::bst_insert_all(as_ints(fig));
  CHECK(to_shape_string(t) == oracle::shape(naive.get()));
  CHECK(t.key(t.root()) == 5);
  CHECK(t.key(t.left(t.root())) == 4);
  CHECK(t.key(t.right(t.root())) == 7);
  t.validate();

  RngStream rng(11, 0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::uint32_t> v(1 + rng.below(60));
    std::iota(v.begin(), v.end(), 1U);
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[rng.below(i)]);
    const Permutation p(v);
    const auto fast = bst_from_permutation(p);
    const auto slow = oracle::bst_insert_all(as_ints(p));
    REQUIRE(to_shape_string(fast) == oracle::shape(slow.get()));
    REQUIRE(hs(fast) == static_cast<std::uint32_t>(oracle::hs(slow.get())));
    REQUIRE(height(fast) == static_cast<std::uint32_t>(oracle::height(slow.get())));
  }
}

TEST_CASE("trivial shapes") {
  CHECK(to_shape_string(bst_from_permutation(Permutation({1}))) == "(.,.)");
  CHECK(to_shape_string(right_path(4)) == "(.,(.,(.,(.,.))))");
  CHECK(height(right_path(4)) == 3);
  CHECK(height(BinaryTree::single()) == 0);
}

TEST_CASE("hs values") {
  CHECK(hs(bst_from_permutation(Permutation({5, 4, 7, 2, 8, 1, 3, 6}))) == 2);
  CHECK(hs(BinaryTree::single()) == 0);
  for (unsigned k = 1; k <= 8; ++k) CHECK(hs(perfect(k)) == k - 1);
  for (std::size_t m : {1, 2, 10, 1000, 100000}) CHECK(hs(right_path(m)) == 0);
}

TEST_CASE("hs labeling") {
  const auto t = bst_from_permutation(Permutation({5, 4, 7, 2, 8, 1, 3, 6}));
  const auto labels = hs_labeling(t);
  // Leaves 1, 3, 6, 8 carry 0; nodes 2, 4, 7 carry 1; the root carries 2.
  std::map<Key, std::uint32_t> by_key;
  for (NodeId v = 0; v < t.size(); ++v) by_key[t.key(v)] = labels[v];
  const std::map<Key, std::uint32_t> expected{{1, 0}, {2, 1}, {3, 0}, {4, 1}, {5, 2}, {6, 0}, {7, 1}, {8, 0}};
  CHECK(by_key == expected);

  CHECK(hs_labeling(BinaryTree::single()) == HsLabeling{0});
  const auto left3 = bst_from_permutation(Permutation({3, 2, 1}));
  CHECK(hs_labeling(left3) == HsLabeling{0, 0, 0});

  RngStream rng(5, 1);
  for (int i = 0; i < 20; ++i) {
    const auto r = sample_uniform_ebt(1 + rng.below(4096), rng);
    CHECK(hs_labeling(r)[r.root()] == hs(r));
  }
}

TEST_CASE("height of long paths does not recurse") {
  const auto t = right_path(2'000'000);
  CHECK(height(t) == 1'999'999);
  CHECK(hs(t) == 0);
}

TEST_CASE("glue_plus reproduces the direct sum") {
  const auto t1 = bst_from_permutation(Permutation({3, 1, 4, 2}));
  const auto t2 = bst_from_permutation(Permutation({2, 1, 3}));
  const auto g = glue_plus(t1, t2);
  g.validate();
  const auto expected = bst_from_permutation(Permutation({3, 1, 4, 2, 6, 5, 7}));
  CHECK(same_shape(g, expected));
  CHECK(std::equal(g.keys().begin(), g.keys().end(), expected.keys().begin(), expected.keys().end()));

  CHECK(to_shape_string(glue_plus(BinaryTree::single(), BinaryTree::single())) == "(.,(.,.))");
  const auto doubled = glue_plus(right_path(5), right_path(5));
  CHECK(same_shape(doubled, right_path(10)));
  CHECK(hs(doubled) == 0);
}

TEST_CASE("glue_minus reproduces the skew sum") {
  const auto t1 = bst_from_permutation(Permutation({3, 1, 4, 2}));
  const auto t2 = bst_from_permutation(Permutation({2, 3, 1}));
  const auto g = glue_minus(t1, t2);
  g.validate();
  const auto expected = bst_from_permutation(Permutation({6, 4, 7, 5, 2, 3, 1}));
  CHECK(same_shape(g, expected));
  CHECK(std::equal(g.keys().begin(), g.keys().end(), expected.keys().begin(), expected.keys().end()));
  CHECK(to_shape_string(glue_minus(BinaryTree::single(), BinaryTree::single())) == "((.,.),.)");
}

TEST_CASE("reflection") {
  CHECK(same_shape(reflect(right_path(6)), bst_from_permutation(Permutation({6, 5, 4, 3, 2, 1}))));
  RngStream rng(3, 3);
  for (int i = 0; i < 300; ++i) {
    const auto t = sample_uniform_ebt(1 + rng.below(64), rng);
    CHECK(same_shape(reflect(reflect(t)), t));
    CHECK(hs(reflect(t)) == hs(t));
  }
  for (std::size_t m1 = 1; m1 <= 5; ++m1) {
    for (std::size_t m2 = 1; m2 <= 5; ++m2) {
      for (const auto& a : all_shapes(m1)) {
        for (const auto& b : all_shapes(m2)) {
          const auto lhs = reflect(glue_plus(a, b, GlueMode::kShapeOnly));
          REQUIRE(same_shape(lhs, glue_minus(reflect(a), reflect(b), GlueMode::kShapeOnly)));
        }
      }
    }
  }
}

TEST_CASE("merge inequality and node additivity over all small pairs") {
  for (std::size_t m1 = 1; m1 <= 6; ++m1) {
    for (std::size_t m2 = 1; m2 <= 6; ++m2) {
      for (const auto& a : all_shapes(m1)) {
        for (const auto& b : all_shapes(m2)) {
          const auto in = std::max(hs(a), hs(b));
          for (const auto& g : {glue_plus(a, b, GlueMode::kShapeOnly), glue_minus(a, b, GlueMode::kShapeOnly)}) {
            REQUIRE(g.size() == m1 + m2);
            REQUIRE(hs(g) >= in);
            REQUIRE(hs(g) <= in + 1);
          }
        }
      }
    }
  }
}

TEST_CASE("shape enumeration counts Catalan numbers") {
  const std::vector<std::size_t> catalan{1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796};
  for (std::size_t m = 1; m < catalan.size(); ++m) {
    const auto shapes = all_shapes(m);
    CHECK(shapes.size() == catalan[m]);
    std::set<std::string> distinct;
    for (const auto& t : shapes) distinct.insert(to_shape_string(t));
    CHECK(distinct.size() == catalan[m]);
  }
}

TEST_CASE("max_hs_for_size agrees with exhaustive search") {
  // Exhaustive maxima; the bound floor(log2(m + 1)) counts leaves as 1, so
  // under the leaf = 0 convention it sits exactly one above these.
  for (std::size_t m = 1; m <= 10; ++m) {
    std::uint32_t best = 0;
    for (const auto& t : all_shapes(m)) best = std::max(best, hs(t));
    CHECK(max_hs_for_size(m) == best);
    CHECK(static_cast<std::uint32_t>(std::bit_width(m + 1) - 1) == best + 1);
  }
  CHECK(max_hs_for_size(1) == 0);
  CHECK(max_hs_for_size(7) == 2);
  CHECK(max_hs_for_size(15) == 3);
  CHECK(hs(perfect(4)) == max_hs_for_size(15));
}

TEST_CASE("shape strings round-trip") {
  RngStream rng(9, 9);
  for (int i = 0; i < 100; ++i) {
    const auto t = sample_uniform_ebt(1 + rng.below(200), rng);
    const auto s = to_shape_string(t);
    CHECK(to_shape_string(parse_shape_string(s)) == s);
  }
  CHECK_THROWS_AS(parse_shape_string("(.,"), invalid_tree);
  CHECK_THROWS_AS(parse_shape_string("."), invalid_tree);
  CHECK_THROWS_AS(parse_shape_string("(.,.)x"), invalid_tree);
}

TEST_CASE("edge list") {
  const auto csv = to_edge_csv(bst_from_permutation(Permutation({2, 1, 3})));
  CHECK(csv == "node_id,parent_id,side,key,hs_label\n0,,,2,1\n1,0,L,1,0\n2,0,R,3,0\n");
  CHECK(to_edge_csv(BinaryTree::single()) == "node_id,parent_id,side,key,hs_label\n0,,,,0\n");
}

TEST_CASE("from_links validation") {
  const std::vector<NodeId> left{kNoNode, 0}, right{kNoNode, kNoNode};
  const auto t = BinaryTree::from_links(1, left, right);
  CHECK(to_shape_string(t) == "((.,.),.)");
  const std::vector<NodeId> cyc_l{1, 0}, cyc_r{kNoNode, kNoNode};
  CHECK_THROWS_AS(BinaryTree::from_links(0, cyc_l, cyc_r), invalid_tree);
  const std::vector<NodeId> l2{kNoNode, kNoNode}, r2{kNoNode, kNoNode};
  CHECK_THROWS_AS(BinaryTree::from_links(0, l2, r2), invalid_tree);  // node 1 unreachable
  const std::vector<Key> bad_keys{2, 1};
  CHECK_THROWS_AS(BinaryTree::from_links(1, left, right, bad_keys), invalid_tree);
}
