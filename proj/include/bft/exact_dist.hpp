#ifndef BFT_EXACT_DIST_HPP
#define BFT_EXACT_DIST_HPP

// Exact law of the HS number of a uniform simple butterfly tree with 2^n
// nodes: generating polynomials, pmf, moments, asymptotic constants and
// certified real-root isolation.

#include "bft/numeric.hpp"
#include "bft/rational_poly.hpp"

#include <string>
#include <vector>

namespace bft {

/// F_0 = 0, F_1 = 2, F_{n+1} = 2x F_{n-1} + F_n
RationalPolynomial f_poly(unsigned n);
/// Probability generating polynomial of HS at level n.
RationalPolynomial g_poly(unsigned n);
/// g_poly(0..n_max) in one pass.
std::vector<RationalPolynomial> g_polys(unsigned n_max);

/// 2^{k-n} [C(n-k, k) + C(n-k-1, k)]; zero outside 0 <= k <= n/2.
Rational pmf(unsigned n, long k);
/// E[HS^r] as (x d/dx)^r G_n evaluated at 1.
Rational moment(unsigned n, unsigned r);
Rational mean_closed(unsigned n);
Rational variance_closed(unsigned n);

struct QuasiPowerConstants {
  Real A;  // dominant growth, G_n(x) ~ A^n B
  Real B;
  Real f;  // ratio of the two characteristic roots in modulus
};

/// Throws std::domain_error when 1 + 8x <= 0.
QuasiPowerConstants quasi_power_eval(const Real& x);

/// u(t) = log A(e^t), the limiting cumulant function per level.
Real u_of_t(const Real& t);
/// d^order u / dt^order at 0 by a central difference computed with
/// 2 * digits of working precision; accurate to roughly `digits` digits
/// for order <= 2 and fewer for higher orders.
Real u_derivative(unsigned order, unsigned digits = kDefaultDigits);
/// Taylor coefficients u^{(r)}(0) / r! for r = 1..max_order.
std::vector<Real> cgf_coefficients(unsigned max_order, unsigned digits = kDefaultDigits);

/// Gaussian local approximation phi((k - mu_n) / sigma_n) / sigma_n.
Real local_limit_estimate(unsigned n, long k);

struct RootInterval {
  Rational lo;
  Rational hi;  // lo == hi marks an exact rational root
  unsigned multiplicity = 1;
};

struct RootIsolation {
  long degree = 0;
  std::vector<RootInterval> intervals;  // ascending, pairwise disjoint

  /// Real roots counted with multiplicity.
  long real_root_count() const;
  bool all_real() const { return real_root_count() == degree; }
};

/// Sturm-sequence isolation on dyadic intervals, each refined to width at
/// most `tolerance`. Throws std::domain_error for the zero polynomial.
RootIsolation isolate_real_roots(const RationalPolynomial& p, const Rational& tolerance = Rational(1, 1000000000000));

struct InterlacingLevel {
  unsigned n = 0;
  bool real_rooted = false;  // G_n
  bool negative = false;     // every root of G_n certified < 0
  bool separated = false;    // roots of G_n and G_{n+1} strictly alternate
  // "alternates" when the degrees agree, "interlaces" when G_{n+1} has one
  // more root.
  std::string relation;
  // The largest root of the pair belongs to G_{n+1}.
  bool next_leads = false;
  RootIsolation roots;       // G_n
  RootIsolation next_roots;  // G_{n+1}, refined as far as separation needed

  bool pass() const { return real_rooted && negative && separated; }
};

struct InterlacingReport {
  std::vector<InterlacingLevel> levels;  // n = 2..n_max
  bool all_pass() const;
};

InterlacingReport check_interlacing(unsigned n_max);

}  // namespace bft

#endif  // BFT_EXACT_DIST_HPP
