#include "bft/verify.hpp"

#include "bft/exact_dist.hpp"
#include "bft/hs_fast.hpp"
#include "bft/markov.hpp"
#include "bft/montecarlo.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace bft {

namespace {

class Collector {
 public:
  explicit Collector(std::string suite) : suite_(std::move(suite)) {}

  void add(const std::string& name, bool ok, const std::string& detail = {}) {
    results_.push_back({suite_, name, ok, detail});
  }

  std::vector<CheckResult> take() { return std::move(results_); }

 private:
  std::string suite_;
  std::vector<CheckResult> results_;
};

std::vector<CheckResult> oracle_suite(unsigned max_n, bool quick) {
  Collector c("oracle");
  std::uint64_t mismatches = 0, increments_bad = 0, support_bad = 0, symmetry_bad = 0;
  for (unsigned n = 0; n <= max_n; ++n) {
    std::uint32_t best = 0;
    for (std::uint64_t i = 0; i < (std::uint64_t{1} << n); ++i) {
      const auto code = SimpleButterflyCode::from_index(i, n);
      const auto h = hs_simple(code);
      const auto X = hs_increments(code);
      std::uint32_t sum = 0;
      for (std::size_t j = 0; j < X.size(); ++j) {
        sum += X[j];
        if (j > 0 && X[j] && X[j - 1]) ++increments_bad;
      }
      if (h != sum || h != hs(tree_from_simple_code(code))) ++mismatches;
      if (h > hs_support_bound(n)) ++support_bad;
      if (hs_simple(code.complement()) != h || hs_simple(code.reversed()) != h) ++symmetry_bad;
      best = std::max(best, h);
    }
    if (best != hs_support_bound(n)) ++support_bad;
  }
  c.add("simple fast path equals tree oracle", mismatches == 0, std::to_string(mismatches) + " mismatches");
  c.add("increments never adjacent", increments_bad == 0);
  c.add("support bound attained and respected", support_bad == 0);
  c.add("complement and reversal invariance", symmetry_bad == 0);

  std::uint64_t shape_bad = 0;
  for (unsigned n = 0; n <= std::min(max_n, 10U); ++n) {
    for (std::uint64_t i = 0; i < (std::uint64_t{1} << n); ++i) {
      const auto code = SimpleButterflyCode::from_index(i, n);
      if (!same_shape(bst_from_permutation(expand_simple(code)), tree_from_simple_code(code))) ++shape_bad;
    }
  }
  c.add("BST of expanded permutation matches glued tree", shape_bad == 0);

  std::uint64_t nonsimple_bad = 0;
  const unsigned levels = quick ? 3 : 4;
  for (std::uint64_t i = 0; i < (std::uint64_t{1} << ((1U << levels) - 1)); ++i) {
    const auto code = ButterflyCode::from_index(i, levels);
    const auto tree = tree_from_butterfly_code(code);
    const auto fast = code_profiles(code);
    const auto [left, right] = edge_profiles(tree);
    if (fast.hs != hs(tree) || !(fast.left == left) || !(fast.right == right)) ++nonsimple_bad;
    if (!same_shape(bst_from_permutation(expand_butterfly(code)), tree)) ++nonsimple_bad;
  }
  RngStream rng(20240501, 0);
  for (int t = 0; t < (quick ? 100 : 1000); ++t) {
    const auto code = sample_butterfly_code(10, rng);
    if (hs_nonsimple(code) != hs(tree_from_butterfly_code(code))) ++nonsimple_bad;
  }
  c.add("nonsimple fast path equals tree oracle", nonsimple_bad == 0, std::to_string(nonsimple_bad) + " mismatches");
  return c.take();
}

std::vector<CheckResult> exact_suite(unsigned max_n, bool quick) {
  Collector c("exact");
  const auto G = g_polys(max_n);
  bool pgf_ok = true, moments_ok = true, support_ok = true;
  for (unsigned n = 0; n <= max_n; ++n) {
    if (G[n].degree() != static_cast<long>(n / 2)) support_ok = false;
    for (long k = 0; k <= static_cast<long>(n / 2) + 1; ++k) {
      const Rational coef = G[n].coeff(static_cast<std::size_t>(k));
      if (coef != pmf(n, k)) pgf_ok = false;
      if (coef < 0) support_ok = false;
    }
    RationalPolynomial d1 = G[n].x_derivative();
    const Rational m1 = d1(Rational(1));
    const Rational m2 = d1.x_derivative()(Rational(1));
    if (m1 != mean_closed(n) || m2 - m1 * m1 != variance_closed(n)) moments_ok = false;
  }
  c.add("pgf coefficients equal closed-form pmf", pgf_ok);
  c.add("closed-form mean and variance", moments_ok);
  c.add("nonnegative coefficients, degree n/2", support_ok);

  bool norm_ok = true;
  for (long n = 0; n <= 200; ++n) {
    Integer total = 0;
    for (long k = 0; 2 * k <= n; ++k) total += pow2(static_cast<unsigned long>(k)) * (binomial(n - k, k) + binomial(n - k - 1, k));
    if (total != pow2(static_cast<unsigned long>(n))) norm_ok = false;
  }
  c.add("binomial normalization identity to n = 200", norm_ok);

  bool counts_ok = true;
  const unsigned count_n = std::min(max_n, quick ? 14U : 20U);
  for (unsigned n = 0; n <= count_n; ++n) {
    std::vector<std::uint64_t> counts(n / 2 + 1, 0);
    for (std::uint64_t i = 0; i < (std::uint64_t{1} << n); ++i) ++counts[hs_simple(SimpleButterflyCode::from_index(i, n))];
    for (unsigned k = 0; k < counts.size(); ++k) {
      if (pmf(n, k) * pow2(n) != Rational(Integer(std::to_string(counts[k])))) counts_ok = false;
    }
  }
  c.add("pmf times 2^n equals exhaustive counts to n = " + std::to_string(count_n), counts_ok);
  return c.take();
}

std::vector<CheckResult> markov_suite() {
  Collector c("markov");
  const std::vector<Rational> ps{Rational(1, 7), Rational(1, 3), Rational(1, 2), Rational(2, 3), Rational(9, 10)};
  for (const auto& p : ps) {
    const auto chain = build_chain(p);
    const auto a = analyze_chain(p);
    bool rows = true;
    for (const auto& row : chain.transition) {
      Rational s = 0;
      for (const auto& x : row) s += x;
      if (s != 1) rows = false;
    }
    Rational total = 0;
    for (const auto& x : a.stationary) total += x;
    const bool stat = left_multiply(a.stationary, chain.transition) == a.stationary && total == 1;
    const auto Pg = right_multiply(chain.transition, a.poisson_closed);
    const auto f = observable_f();
    bool poisson = true;
    for (std::size_t i = 0; i < kChainStates; ++i) {
      if (a.poisson_closed[i] - Pg[i] != Rational(f[i]) - a.mu) poisson = false;
    }
    std::ostringstream name;
    name << "p = " << p;
    c.add(name.str() + ": rows sum to one", rows);
    c.add(name.str() + ": stationary law", stat);
    c.add(name.str() + ": characteristic polynomial", char_poly_check(p));
    c.add(name.str() + ": closed-form Poisson solution", poisson);
    c.add(name.str() + ": sigma2 routes agree", a.sigma2 == a.sigma2_via_poisson);
    c.add(name.str() + ": 0 < sigma2 <= mu", a.sigma2 > 0 && a.sigma2 <= a.mu);
  }
  c.add("mu(1/2) = 1/3, sigma2(1/2) = 2/27", mu(Rational(1, 2)) == Rational(1, 3) && sigma2(Rational(1, 2)) == Rational(2, 27));
  return c.take();
}

std::vector<CheckResult> interlacing_suite(unsigned max_n) {
  Collector c("interlacing");
  const auto report = check_interlacing(max_n);
  std::string failed;
  for (const auto& level : report.levels) {
    if (!level.pass()) failed += " " + std::to_string(level.n);
  }
  c.add("real negative roots, strict interlacing for n = 2.." + std::to_string(max_n), report.all_pass(),
        failed.empty() ? "" : "failed at n =" + failed);
  return c.take();
}

}  // namespace

std::vector<CheckResult> run_verify(const VerifyOptions& options) {
  const std::string& s = options.suite;
  if (s != "all" && s != "oracle" && s != "exact" && s != "markov" && s != "interlacing") {
    throw std::invalid_argument("unknown suite '" + s + "'");
  }
  auto pick = [&](unsigned full, unsigned quick) { return options.max_n ? options.max_n : (options.quick ? quick : full); };
  std::vector<CheckResult> out;
  auto append = [&](std::vector<CheckResult> part) { out.insert(out.end(), part.begin(), part.end()); };
  if (s == "all" || s == "oracle") append(oracle_suite(pick(12, 10), options.quick));
  if (s == "all" || s == "exact") append(exact_suite(pick(60, 30), options.quick));
  if (s == "all" || s == "markov") append(markov_suite());
  if (s == "all" || s == "interlacing") append(interlacing_suite(std::max(2U, pick(60, 30))));
  if (options.inject_failure) out.push_back({"injected", "deliberate failure", false, "requested by --inject-failure"});
  return out;
}

}  // namespace bft
