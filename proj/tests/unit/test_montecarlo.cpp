#include "bft/exact_dist.hpp"
#include "bft/hs_fast.hpp"
#include "bft/markov.hpp"
#include "bft/montecarlo.hpp"
#include "bft/report.hpp"

#include <doctest.h>

#include <bit>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>

using namespace bft;

namespace {

std::string serialize(const ExperimentResult& r) { return result_to_json(r, Json::object()).dump(); }

double frac_se(double p, double n) { return std::sqrt(p * (1 - p) / n); }

}  // namespace

TEST_CASE("rng streams are reproducible and distinct") {
  RngStream a(1, 0), b(1, 0), c(1, 1), d(2, 0);
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next();
    CHECK(x == b.next());
    CHECK(x != c.next());
    CHECK(x != d.next());
  }
  // Frozen first outputs of stream (1, 0).
  RngStream g(1, 0);
  CHECK(g.next() == 2446360135453696782ULL);
  CHECK(g.next() == 5740019286303994880ULL);
  RngStream u(3, 0);
  for (int i = 0; i < 1000; ++i) {
    const double x = u.uniform();
    CHECK((x >= 0 && x < 1));
    CHECK(u.below(7) < 7);
  }
}

TEST_CASE("golden samples") {
  RngStream a(20, 0);
  CHECK(to_string(sample_simple_code(20, 0.5, a)) == "11101001101110111011");
  RngStream b(10, 0);
  CHECK(to_string(sample_butterfly_code(5, b)) == "0000110110000111001111010001101");
  RngStream c(7, 3);
  CHECK(to_shape_string(sample_uniform_ebt(6, c)) == "(((.,.),((.,(.,.)),.)),.)");
}

TEST_CASE("simple code sampler") {
  RngStream rng(1, 0);
  CHECK(sample_simple_code(40, 1e-300, rng) == SimpleButterflyCode(std::vector<std::uint8_t>(40, 0)));
  double ones = 0, total = 0;
  for (int t = 0; t < 10000; ++t) {
    const auto code = sample_simple_code(100, 0.3, rng);
    ones += static_cast<double>(code.ones());
    total += 100;
  }
  CHECK(std::abs(ones / total - 0.3) < 3 * frac_se(0.3, total));
}

TEST_CASE("butterfly code sampler") {
  RngStream rng(2, 0);
  CHECK(sample_butterfly_code(10, rng).size() == 1023);
  double ones = 0, total = 0;
  for (int t = 0; t < 1000; ++t) {
    const auto code = sample_butterfly_code(10, rng);
    for (auto b : code.bits()) ones += b;
    total += 1023;
  }
  CHECK(std::abs(ones / total - 0.5) < 3 * frac_se(0.5, total));
}

TEST_CASE("uniform tree sampler") {
  RngStream rng(3, 0);
  CHECK(sample_uniform_ebt(1, rng).size() == 1);
  for (std::size_t m : {2, 3, 4}) {
    const auto shapes = all_shapes(m);
    std::map<std::string, double> freq;
    const double draws = 100000;
    for (int i = 0; i < draws; ++i) freq[to_shape_string(sample_uniform_ebt(m, rng))] += 1;
    CHECK(freq.size() == shapes.size());
    const double p = 1.0 / static_cast<double>(shapes.size());
    for (const auto& t : shapes) {
      const double f = freq[to_shape_string(t)] / draws;
      CHECK(std::abs(f - p) < 3 * frac_se(p, draws));
    }
  }
  // HS law over m = 4 against exhaustive enumeration of the 14 shapes.
  std::map<std::uint32_t, double> exact;
  for (const auto& t : all_shapes(4)) exact[hs(t)] += 1.0 / 14;
  const auto r = run_hs_experiment(Model::kEbt, 4, 0.5, 100000, 8);
  for (const auto& [v, p] : exact) {
    const double f = static_cast<double>(r.histogram.at(v)) / 100000;
    CHECK(std::abs(f - p) < 3 * frac_se(p, 100000));
  }
}

TEST_CASE("experiment bookkeeping") {
  const auto r = run_hs_experiment(Model::kSimple, 30, 0.5, 5000, 4);
  std::uint64_t total = 0;
  for (const auto& [v, c] : r.histogram) total += c;
  CHECK(total == 5000);
  CHECK(r.values.size() == 5000);
  const auto s = summarize(r.values);
  CHECK(s.mean == doctest::Approx(r.summary.mean));
  CHECK(s.variance == doctest::Approx(r.summary.variance));
  CHECK(r.summary.max <= hs_support_bound(30));
  CHECK(r.thresholds.repeats_required == 19);

  const auto sm = summarize({1, 2, 3, 4});
  CHECK(sm.mean == 2.5);
  CHECK(sm.variance == doctest::Approx(5.0 / 3));
  CHECK(sm.min == 1);
  CHECK(sm.max == 4);
}

TEST_CASE("determinism across thread counts") {
  for (auto model : {Model::kSimple, Model::kNonsimple, Model::kEbt, Model::kBlock}) {
    const std::uint64_t size = model == Model::kSimple ? 200 : model == Model::kNonsimple ? 8 : 300;
    const auto one = serialize(run_hs_experiment(model, size, 0.4, 500, 77, {1, false, false}));
    const auto four = serialize(run_hs_experiment(model, size, 0.4, 500, 77, {4, false, false}));
    const auto three = serialize(run_hs_experiment(model, size, 0.4, 500, 77, {3, false, false}));
    CHECK(one == four);
    CHECK(one == three);
  }
  const auto a = serialize(fclt_paths(1000, 0.5, 50, 20, 3, {1, false, false}));
  const auto b = serialize(fclt_paths(1000, 0.5, 50, 20, 3, {5, false, false}));
  CHECK(a == b);
}

TEST_CASE("test mode cross-checks against the oracle") {
  CHECK_NOTHROW(run_hs_experiment(Model::kSimple, 12, 0.5, 300, 1, {1, true, false}));
  CHECK_NOTHROW(run_hs_experiment(Model::kNonsimple, 6, 0.5, 300, 1, {1, true, false}));
}

TEST_CASE("size guards and validation") {
  CHECK_THROWS_AS(run_hs_experiment(Model::kNonsimple, 25, 0.5, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(run_hs_experiment(Model::kSimple, 10, 1.5, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(run_hs_experiment(Model::kEbt, 0, 0.5, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(parse_model("tree"), std::invalid_argument);
  for (auto m : {Model::kSimple, Model::kNonsimple, Model::kEbt, Model::kBlock}) CHECK(parse_model(to_string(m)) == m);
}

TEST_CASE("nonsimple concentration") {
  const auto r = run_hs_experiment(Model::kNonsimple, 10, 0.5, 10000, 7);
  CHECK(r.summary.min >= 3);
  CHECK(r.summary.max <= 5);
  CHECK(static_cast<double>(r.histogram.at(4)) / 10000 > 0.85);
}

TEST_CASE("block experiment invariants") {
  const std::uint64_t m = 500;
  const auto r = block_experiment(m, 400, 12);
  const auto bound = static_cast<double>(std::bit_width(2 * m + 1) - 1);
  for (std::size_t i = 0; i < r.values.size(); ++i) {
    CHECK(r.values[i] == r.max_input_hs[i] + r.increments[i]);
    CHECK(r.increments[i] <= 1);
    CHECK(r.values[i] <= bound);
  }
}

TEST_CASE("CLT standardization") {
  const auto r = run_hs_experiment(Model::kSimple, 1000, 0.5, 100000, 1);
  const auto z = clt_standardize(r, 1000);
  const auto s = summarize(z);
  CHECK(std::abs(s.mean) < 0.02);
  CHECK(std::abs(s.variance - 1) < 0.02);
  // Sample variance of the raw HS values sits near 74.
  CHECK(std::abs(r.summary.variance - 74.0988) < 1.5);

  const auto big = run_hs_experiment(Model::kSimple, 2000, 0.5, 100000, 2);
  const auto zb = clt_standardize(big, 2000);
  double m3 = 0;
  for (double x : zb) m3 += x * x * x;
  m3 /= static_cast<double>(zb.size());
  CHECK(m3 < 0);
  CHECK(std::abs(m3) < 0.05);

  const auto flat = run_hs_experiment(Model::kSimple, 1, 0.5, 10, 1);
  for (double x : clt_standardize(flat, 1)) CHECK(x == 0);
}

TEST_CASE("chi-square goodness of fit") {
  const unsigned n = 12;
  std::vector<double> pmf_n;
  std::map<long, std::uint64_t> exact;
  for (long k = 0; 2 * k <= static_cast<long>(n); ++k) {
    pmf_n.push_back(to_double(pmf(n, k)));
    exact[k] = static_cast<std::uint64_t>(std::llround(pmf_n.back() * 4096 * 100));
  }
  const auto perfect = chi_square_gof(exact, pmf_n);
  CHECK(perfect.statistic == doctest::Approx(0).epsilon(1e-9));
  CHECK(perfect.p_value == doctest::Approx(1.0));

  std::map<long, std::uint64_t> shifted;
  for (const auto& [k, c] : exact) shifted[k + 1] = c;
  CHECK(chi_square_gof(shifted, pmf_n).p_value < 1e-6);

  const auto r = run_hs_experiment(Model::kSimple, 200, 0.5, 100000, 3);
  std::vector<double> pmf200;
  for (long k = 0; k <= 100; ++k) pmf200.push_back(to_double(pmf(200, k)));
  const auto res = chi_square_gof(r.histogram, pmf200);
  for (const auto& [o, e] : res.bins) CHECK(e >= 5.0);
  CHECK(res.dof + 1 == res.bins.size());
  CHECK_THROWS_AS(chi_square_gof({}, pmf200), std::invalid_argument);
}

TEST_CASE("FCLT paths") {
  const auto r = fclt_paths(10000, 0.5, 200, 100, 9);
  REQUIRE(r.paths.size() == 200);
  for (const auto& path : r.paths) {
    CHECK(path.size() == 101);
    CHECK(path.front() == 0);
  }
  CHECK_THROWS_AS(fclt_paths(10, 0.5, 1, 11, 1), std::invalid_argument);

  // Increments over [0, 1/2] and [1/2, 1] are nearly uncorrelated.
  const auto many = fclt_paths(10000, 0.5, 10000, 2, 10);
  double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
  for (const auto& p : many.paths) {
    const double x = p[1], y = p[2] - p[1];
    sx += x, sy += y, sxx += x * x, syy += y * y, sxy += x * y;
  }
  const double k = static_cast<double>(many.paths.size());
  const double corr = (sxy / k - sx / k * sy / k) /
                      std::sqrt((sxx / k - sx / k * sx / k) * (syy / k - sy / k * sy / k));
  CHECK(std::abs(corr) < 0.05);
}

TEST_CASE("SLLN trend") {
  for (double p : {0.3, 0.5, 0.8}) {
    RngStream rng(31, 0);
    const auto code = sample_simple_code(1'000'000, p, rng);
    const double avg = static_cast<double>(hs_simple(code)) / 1e6;
    CHECK(std::abs(avg - to_double(mu(parse_rational(std::to_string(p))))) < 1e-2);
  }
}

TEST_CASE("thresholds file") {
  const auto t = Thresholds::load_default();
  CHECK(t.se_multiplier == 3.0);
  CHECK(t.significance == 0.001);
  CHECK(t.repeats_required == 19);
  CHECK(t.repeats_total == 20);
  const std::string path = "thresholds_test.json";
  {
    std::ofstream f(path);
    f << R"({"significance": 0.01})";
  }
  const auto partial = Thresholds::load(path);
  CHECK(partial.significance == 0.01);
  CHECK(partial.repeats_total == 20);
  CHECK_THROWS(Thresholds::load("missing-file.json"));
}
