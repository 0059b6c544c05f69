#include "bft/permutations.hpp"
#include "bft/rng.hpp"
#include "../support/oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>

using namespace bft;

namespace {

std::vector<int> as_ints(const Permutation& p) { return {p.values().begin(), p.values().end()}; }

Permutation random_perm(std::size_t m, RngStream& rng) {
  std::vector<std::uint32_t> v(m);
  std::iota(v.begin(), v.end(), 1U);
  for (std::size_t i = m; i > 1; --i) std::swap(v[i - 1], v[rng.below(i)]);
  return Permutation(v);
}

Permutation P(std::string_view s) { return parse_permutation(s); }

}  // namespace

TEST_CASE("parsing and validation") {
  CHECK(to_string(P("3,1,4,2")) == "3,1,4,2");
  CHECK(P("").size() == 0);
  CHECK_THROWS_AS(P("1,1"), invalid_permutation);
  CHECK_THROWS_AS(P("0,1"), invalid_permutation);
  CHECK_THROWS_AS(P("1,x"), invalid_permutation);
  CHECK_THROWS_AS(SimpleButterflyCode::parse("012"), invalid_code);
  CHECK_THROWS_AS(ButterflyCode::parse("0101"), invalid_code);
  CHECK(ButterflyCode::parse("").levels() == 0);
  CHECK(ButterflyCode::parse("1011000010010110001011110101010").levels() == 5);
}

TEST_CASE("direct and skew sums") {
  CHECK(direct_sum(P("3,1,4,2"), P("2,1,3")) == P("3,1,4,2,6,5,7"));
  CHECK(direct_sum(P("1"), P("1")) == P("1,2"));
  CHECK(direct_sum(Permutation::identity(3), Permutation::identity(4)) == Permutation::identity(7));
  CHECK(skew_sum(P("3,1,4,2"), P("2,3,1")) == P("6,4,7,5,2,3,1"));
  CHECK(skew_sum(P("1"), P("1")) == P("2,1"));
  CHECK(skew_sum(P("2,1"), P("3,2,1")) == P("5,4,3,2,1"));
}

TEST_CASE("Kronecker products") {
  const Permutation tau = P("2,1");
  CHECK(kronecker(tau, Permutation::identity(2)) == P("3,4,1,2"));
  CHECK(kronecker(tau, tau) == P("4,3,2,1"));
  CHECK(kronecker(Permutation::identity(1), P("3,1,2")) == P("3,1,2"));
}

TEST_CASE("block-matrix consistency") {
  RngStream rng(17, 0);
  for (int i = 0; i < 300; ++i) {
    const auto a = random_perm(1 + rng.below(8), rng);
    const auto b = random_perm(1 + rng.below(8), rng);
    const auto ma = oracle::perm_matrix(as_ints(a)), mb = oracle::perm_matrix(as_ints(b));
    REQUIRE(oracle::perm_matrix(as_ints(direct_sum(a, b))) == oracle::block_diag(ma, mb, false));
    REQUIRE(oracle::perm_matrix(as_ints(skew_sum(a, b))) == oracle::block_diag(ma, mb, true));
    REQUIRE(oracle::perm_matrix(as_ints(kronecker(a, b))) == oracle::kron(ma, mb));
  }
}

TEST_CASE("expansion of codes") {
  CHECK(expand_simple(SimpleButterflyCode::parse("")) == P("1"));
  CHECK(expand_simple(SimpleButterflyCode::parse("1")) == P("2,1"));
  CHECK(expand_butterfly(ButterflyCode::parse("000")) == P("1,2,3,4"));
  CHECK(expand_butterfly(ButterflyCode::parse("100")) == P("3,4,1,2"));
  CHECK(expand_butterfly(ButterflyCode::parse("010")) == P("2,1,3,4"));

  // Level-2 codes with HS 1 are exactly the four permutations 2134, 2143,
  // 3421 and 3412.
  std::set<std::string> hs_one;
  for (std::uint64_t i = 0; i < 8; ++i) {
    const auto code = ButterflyCode::from_index(i, 2);
    if (hs(tree_from_butterfly_code(code)) == 1) hs_one.insert(to_string(expand_butterfly(code)));
  }
  CHECK(hs_one == std::set<std::string>{"2,1,3,4", "2,1,4,3", "3,4,2,1", "3,4,1,2"});
}

TEST_CASE("codes, permutations and glued trees agree") {
  for (unsigned n = 0; n <= 10; ++n) {
    for (std::uint64_t i = 0; i < (std::uint64_t{1} << n); ++i) {
      const auto code = SimpleButterflyCode::from_index(i, n);
      const auto glued = tree_from_simple_code(code);
      REQUIRE(same_shape(bst_from_permutation(expand_simple(code)), glued));
      REQUIRE(expand_butterfly(ButterflyCode::from_simple(code)) == expand_simple(code));
      if (n <= 8) REQUIRE(to_shape_string(glued) == oracle::shape(oracle::simple_tree(to_string(code)).get()));
    }
  }
  for (std::uint64_t i = 0; i < (std::uint64_t{1} << 15); ++i) {
    const auto code = ButterflyCode::from_index(i, 4);
    const auto glued = tree_from_butterfly_code(code);
    REQUIRE(same_shape(bst_from_permutation(expand_butterfly(code)), glued));
    REQUIRE(to_shape_string(glued) == oracle::shape(oracle::butterfly_tree(to_string(code)).get()));
  }
}

TEST_CASE("code 10 expands to the unique BST-compatible permutation") {
  const auto t = tree_from_simple_code(SimpleButterflyCode::parse("10"));
  std::vector<std::uint32_t> v{1, 2, 3, 4};
  int matches = 0;
  do {
    if (same_shape(bst_from_permutation(Permutation(v)), t) && expand_simple(SimpleButterflyCode::parse("10")) == Permutation(v)) ++matches;
  } while (std::next_permutation(v.begin(), v.end()));
  CHECK(matches == 1);
}

TEST_CASE("simple trees") {
  for (unsigned n = 0; n <= 12; ++n) {
    const auto zeros = SimpleButterflyCode(std::vector<std::uint8_t>(n, 0));
    const auto t = tree_from_simple_code(zeros);
    CHECK(t.size() == (std::size_t{1} << n));
    CHECK(same_shape(t, bst_from_permutation(Permutation::identity(t.size()))));
  }
  const auto fig8 = tree_from_simple_code(SimpleButterflyCode::parse("1011000011"));
  CHECK(fig8.size() == 1024);
  CHECK(hs(fig8) == 3);
  CHECK(hs(tree_from_simple_code(SimpleButterflyCode::parse("1001100101"))) == 5);
  for (const char* s : {"10", "100", "1001"}) {
    const auto code = SimpleButterflyCode::parse(s);
    CHECK(to_shape_string(tree_from_simple_code(code)) == oracle::shape(oracle::simple_tree(s).get()));
  }
}

TEST_CASE("nonsimple trees") {
  for (unsigned n = 0; n <= 6; ++n) {
    const auto t = tree_from_butterfly_code(ButterflyCode(std::vector<std::uint8_t>((1U << n) - 1, 0)));
    CHECK(hs(t) == 0);
    CHECK(t.size() == (1U << n));
  }
  CHECK(tree_from_butterfly_code(ButterflyCode::parse("0")).size() == 2);
  CHECK(height(tree_from_butterfly_code(ButterflyCode::parse("1"))) == 1);

  const std::string fig6 = "1011000010010110001011110101010";
  const auto t = tree_from_butterfly_code(ButterflyCode::parse(fig6));
  CHECK(t.size() == 32);
  CHECK(hs(t) == static_cast<std::uint32_t>(oracle::hs(oracle::butterfly_tree(fig6).get())));
}

TEST_CASE("height law") {
  CHECK(simple_height_formula(SimpleButterflyCode{}) == 0);
  CHECK(simple_height_formula(SimpleButterflyCode::parse("10")) == 2);
  for (unsigned n = 0; n <= 10; ++n) {
    for (std::uint64_t i = 0; i < (std::uint64_t{1} << n); ++i) {
      const auto code = SimpleButterflyCode::from_index(i, n);
      REQUIRE(Integer(height(tree_from_simple_code(code))) == simple_height_formula(code));
    }
    CHECK(simple_height_formula(SimpleButterflyCode(std::vector<std::uint8_t>(n, 0))) == pow2(n) - 1);
  }
}

TEST_CASE("LIS and LDS law") {
  CHECK(lis_lds(SimpleButterflyCode::parse("10")) == std::pair<Integer, Integer>(2, 2));
  for (unsigned n = 0; n <= 8; ++n) {
    CHECK(lis_lds(SimpleButterflyCode(std::vector<std::uint8_t>(n, 0))) == std::pair<Integer, Integer>(pow2(n), 1));
    CHECK(lis_lds(SimpleButterflyCode(std::vector<std::uint8_t>(n, 1))) == std::pair<Integer, Integer>(1, pow2(n)));
    for (std::uint64_t i = 0; i < (std::uint64_t{1} << n); ++i) {
      const auto code = SimpleButterflyCode::from_index(i, n);
      const auto p = as_ints(expand_simple(code));
      const auto [inc, dec] = lis_lds(code);
      REQUIRE(inc == oracle::lis(p, false));
      REQUIRE(dec == oracle::lis(p, true));
    }
  }
}

TEST_CASE("cardinalities") {
  for (unsigned n = 0; n <= 8; ++n) {
    std::set<std::vector<std::uint32_t>> seen;
    for (std::uint64_t i = 0; i < (std::uint64_t{1} << n); ++i) seen.insert(expand_simple(SimpleButterflyCode::from_index(i, n)).values());
    CHECK(seen.size() == (std::size_t{1} << n));
  }
  for (unsigned n = 0; n <= 3; ++n) {
    std::set<std::vector<std::uint32_t>> seen;
    const std::uint64_t total = std::uint64_t{1} << ((1U << n) - 1);
    for (std::uint64_t i = 0; i < total; ++i) seen.insert(expand_butterfly(ButterflyCode::from_index(i, n)).values());
    CHECK(seen.size() == total);
  }
}

TEST_CASE("code round-trips") {
  for (const char* s : {"", "0", "1", "1011000011"}) CHECK(to_string(SimpleButterflyCode::parse(s)) == s);
  const std::string fig6 = "1011000010010110001011110101010";
  CHECK(to_string(ButterflyCode::parse(fig6)) == fig6);
  const auto c = SimpleButterflyCode::parse("0011");
  CHECK(to_string(c.complement()) == "1100");
  CHECK(to_string(SimpleButterflyCode::parse("0010").reversed()) == "0100");
  CHECK(SimpleButterflyCode::from_index(1, 3)[0] == 1);
}
