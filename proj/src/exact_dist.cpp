#include "bft/exact_dist.hpp"

#include <boost/math/constants/constants.hpp>

#include <algorithm>
#include <stdexcept>

namespace bft {

RationalPolynomial f_poly(unsigned n) {
  RationalPolynomial prev;                                // F_0
  RationalPolynomial cur = RationalPolynomial::constant(2);  // F_1
  if (n == 0) return prev;
  const RationalPolynomial two_x = RationalPolynomial::monomial(2, 1);
  for (unsigned k = 1; k < n; ++k) {
    RationalPolynomial next = two_x * prev + cur;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

std::vector<RationalPolynomial> g_polys(unsigned n_max) {
  std::vector<RationalPolynomial> G;
  G.reserve(n_max + 1);
  G.push_back(RationalPolynomial::constant(1));
  const RationalPolynomial x_minus_1({Rational(-1), Rational(1)});
  const RationalPolynomial two_x = RationalPolynomial::monomial(2, 1);
  RationalPolynomial F_prev;                                // F_{k-1}
  RationalPolynomial F = RationalPolynomial{};              // F_k, starting at k = 0
  for (unsigned k = 0; k < n_max; ++k) {
    // G_{k+1} = G_k + (x - 1) / 2^{k+1} F_k
    G.push_back(G.back() + x_minus_1 * F * Rational(1, pow2(k + 1)));
    RationalPolynomial F_next = k == 0 ? RationalPolynomial::constant(2) : two_x * F_prev + F;
    F_prev = std::move(F);
    F = std::move(F_next);
  }
  return G;
}

RationalPolynomial g_poly(unsigned n) { return g_polys(n).back(); }

Rational pmf(unsigned n, long k) {
  const long nn = n;
  if (k < 0 || 2 * k > nn) return 0;
  Integer count = binomial(nn - k, k) + binomial(nn - k - 1, k);
  Rational r(count * pow2(static_cast<unsigned long>(k)), pow2(n));
  r.canonicalize();
  return r;
}

Rational moment(unsigned n, unsigned r) {
  RationalPolynomial p = g_poly(n);
  for (unsigned i = 0; i < r; ++i) p = p.x_derivative();
  return p(Rational(1));
}

Rational mean_closed(unsigned n) {
  const Rational half_pow = pow_rational(Rational(-1, 2), n);
  return Rational(n, 3) - Rational(2, 9) + Rational(2, 9) * half_pow;
}

Rational variance_closed(unsigned n) {
  const Rational h = pow_rational(Rational(-1, 2), n);
  const Rational q = pow_rational(Rational(1, 4), n);
  const Rational nn(n);
  return Rational(2, 27) * nn + Rational(2, 81) + Rational(4, 27) * nn * h + Rational(2, 81) * h -
         Rational(4, 81) * q;
}

QuasiPowerConstants quasi_power_eval(const Real& x) {
  const Real D = 1 + 8 * x;
  if (D <= 0) throw std::domain_error("quasi_power_eval: 1 + 8x must be positive (branch cut)");
  const Real s = sqrt(D);
  QuasiPowerConstants c;
  c.A = (1 + s) / 4;
  // (x - 1) / ((A - 1) sqrt D) with the removable singularity at x = 1
  // cancelled: A - 1 = 2 (x - 1) / (sqrt D + 3).
  c.B = (s + 3) / (2 * s);
  c.f = (s - 1) / (s + 1);
  return c;
}

Real u_of_t(const Real& t) { return log((1 + sqrt(1 + 8 * exp(t))) / 4); }

Real u_derivative(unsigned order, unsigned digits) {
  if (order == 0) return u_of_t(Real(0));
  PrecisionScope scope(2 * digits);
  // Truncation error is O(h^2) and cancellation error O(eps / h^order);
  // this step balances the two.
  const Real h = pow(Real(10), -Real(2 * digits) / (order + 2));
  Real acc = 0;
  for (unsigned i = 0; i <= order; ++i) {
    const Real t = (Real(order) / 2 - i) * h;
    Real term = u_of_t(t) * Real(binomial(order, i).get_str());
    acc += (i % 2 == 0) ? term : Real(-term);
  }
  Real result = acc / pow(h, order);
  PrecisionScope outer(digits);
  return Real(result);
}

std::vector<Real> cgf_coefficients(unsigned max_order, unsigned digits) {
  std::vector<Real> out;
  Real factorial = 1;
  for (unsigned r = 1; r <= max_order; ++r) {
    factorial *= r;
    out.push_back(u_derivative(r, digits) / factorial);
  }
  return out;
}

Real local_limit_estimate(unsigned n, long k) {
  const Real mu = to_real(mean_closed(n));
  const Real var = to_real(variance_closed(n));
  if (var <= 0) throw std::domain_error("local_limit_estimate: degenerate variance");
  const Real sigma = sqrt(var);
  const Real z = (Real(k) - mu) / sigma;
  return exp(-z * z / 2) / (sigma * sqrt(2 * boost::math::constants::pi<Real>()));
}

namespace {

int sign(const Rational& q) { return sgn(q); }

// Positive rescaling keeps the Sturm property and the coefficients small.
RationalPolynomial shrink(const RationalPolynomial& p) {
  RationalPolynomial q = p.primitive();
  return sign(q.leading()) == sign(p.leading()) ? q : -q;
}

std::vector<RationalPolynomial> sturm_sequence(const RationalPolynomial& p) {
  std::vector<RationalPolynomial> seq{shrink(p)};
  RationalPolynomial d = p.derivative();
  if (d.is_zero()) return seq;
  seq.push_back(shrink(d));
  while (true) {
    RationalPolynomial r = divmod(seq[seq.size() - 2], seq.back()).second;
    if (r.is_zero()) break;
    seq.push_back(shrink(-r));
  }
  return seq;
}

int variations(const std::vector<RationalPolynomial>& seq, const Rational& x) {
  int count = 0;
  int last = 0;
  for (const auto& q : seq) {
    const int s = q.sign_at(x);
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

// Distinct roots in (lo, hi].
int count_roots(const std::vector<RationalPolynomial>& seq, const Rational& lo, const Rational& hi) {
  return variations(seq, lo) - variations(seq, hi);
}

// Squarefree factors a_1, a_2, ... with p = c * prod a_i^i.
std::vector<RationalPolynomial> yun(const RationalPolynomial& p) {
  std::vector<RationalPolynomial> out;
  const RationalPolynomial dp = p.derivative();
  const RationalPolynomial a0 = gcd(p, dp);
  RationalPolynomial b = divmod(p, a0).first;
  RationalPolynomial c = divmod(dp, a0).first;
  RationalPolynomial d = c - b.derivative();
  while (b.degree() > 0) {
    RationalPolynomial a = gcd(b, d);
    b = divmod(b, a).first;
    c = divmod(d, a).first;
    d = c - b.derivative();
    out.push_back(std::move(a));
  }
  return out;
}

// Halves (lo, hi] around its single simple root until the width is within
// `tol`; collapses to an exact root when a midpoint hits it.
void refine(const RationalPolynomial& sqf, RootInterval& iv, const Rational& tol) {
  if (iv.lo == iv.hi) return;
  int s_hi = sqf.sign_at(iv.hi);
  if (s_hi == 0) {
    iv.lo = iv.hi;
    return;
  }
  while (iv.hi - iv.lo > tol) {
    Rational mid = (iv.lo + iv.hi) / 2;
    const int s = sqf.sign_at(mid);
    if (s == 0) {
      iv.lo = iv.hi = mid;
      return;
    }
    (s == s_hi ? iv.hi : iv.lo) = mid;
  }
}

struct Isolator {
  RationalPolynomial sqf;
  std::vector<RationalPolynomial> factors;
  std::vector<RationalPolynomial> seq;

  explicit Isolator(const RationalPolynomial& p)
      : sqf(shrink(divmod(p, gcd(p, p.derivative())).first)), factors(yun(p)), seq(sturm_sequence(sqf)) {}

  unsigned multiplicity(const RootInterval& iv) const {
    for (std::size_t i = 0; i < factors.size(); ++i) {
      const auto& a = factors[i];
      if (a.degree() <= 0) continue;
      const bool has_root = iv.lo == iv.hi ? a.sign_at(iv.lo) == 0 : a.sign_at(iv.lo) != a.sign_at(iv.hi);
      if (has_root) return static_cast<unsigned>(i + 1);
    }
    throw std::logic_error("root multiplicity not found");
  }
};

}  // namespace

long RootIsolation::real_root_count() const {
  long total = 0;
  for (const auto& iv : intervals) total += iv.multiplicity;
  return total;
}

RootIsolation isolate_real_roots(const RationalPolynomial& p, const Rational& tolerance) {
  if (p.is_zero()) throw std::domain_error("isolate_real_roots: zero polynomial");
  RootIsolation out;
  out.degree = p.degree();
  if (p.degree() == 0) return out;
  const Isolator iso(p);

  // Power of two above the Cauchy bound 1 + max |a_i / a_d|.
  Rational cauchy = 0;
  for (const auto& c : iso.sqf.coeffs()) cauchy = std::max(cauchy, Rational(abs(c / iso.sqf.leading())));
  cauchy += 1;
  Rational bound = 1;
  while (bound <= cauchy) bound *= 2;

  struct Pending {
    Rational lo, hi;
    int count;
  };
  std::vector<Pending> work{{-bound, bound, count_roots(iso.seq, -bound, bound)}};
  std::vector<RootInterval> found;
  while (!work.empty()) {
    Pending w = work.back();
    work.pop_back();
    if (w.count == 0) continue;
    if (w.count == 1) {
      RootInterval iv{w.lo, w.hi, 1};
      refine(iso.sqf, iv, tolerance);
      found.push_back(iv);
      continue;
    }
    Rational mid = (w.lo + w.hi) / 2;
    if (iso.sqf.sign_at(mid) != 0) {
      const int left = count_roots(iso.seq, w.lo, mid);
      work.push_back({w.lo, mid, left});
      work.push_back({mid, w.hi, w.count - left});
      continue;
    }
    // Exact root at the midpoint: split around a root-free gap.
    found.push_back({mid, mid, 1});
    Rational delta = (w.hi - w.lo) / 4;
    while (iso.sqf.sign_at(mid - delta) == 0 || iso.sqf.sign_at(mid + delta) == 0 ||
           count_roots(iso.seq, mid - delta, mid + delta) != 1) {
      delta /= 2;
    }
    const int left = count_roots(iso.seq, w.lo, mid - delta);
    work.push_back({w.lo, mid - delta, left});
    work.push_back({mid + delta, w.hi, w.count - 1 - left});
  }
  for (auto& iv : found) iv.multiplicity = iso.multiplicity(iv);
  std::sort(found.begin(), found.end(), [](const RootInterval& a, const RootInterval& b) { return a.lo < b.lo; });
  out.intervals = std::move(found);
  return out;
}

bool InterlacingReport::all_pass() const {
  return !levels.empty() && std::all_of(levels.begin(), levels.end(), [](const auto& l) { return l.pass(); });
}

namespace {

struct Tagged {
  const RootInterval* iv;
  bool next;  // belongs to G_{n+1}
};

// Strict alternation of two real-rooted simple-root families, certified by
// disjoint intervals. Returns false when the intervals still overlap.
bool certify_alternation(const RootIsolation& a, const RootIsolation& b, bool& separated, bool& next_leads) {
  std::vector<Tagged> all;
  for (const auto& iv : a.intervals) all.push_back({&iv, false});
  for (const auto& iv : b.intervals) all.push_back({&iv, true});
  std::sort(all.begin(), all.end(), [](const Tagged& x, const Tagged& y) { return x.iv->lo > y.iv->lo; });
  for (std::size_t i = 1; i < all.size(); ++i) {
    if (!(all[i].iv->hi < all[i - 1].iv->lo)) return false;
  }
  separated = true;
  for (std::size_t i = 1; i < all.size(); ++i) {
    if (all[i].next == all[i - 1].next) separated = false;
  }
  next_leads = !all.empty() && all.front().next;
  return true;
}

}  // namespace

InterlacingReport check_interlacing(unsigned n_max) {
  if (n_max < 2) throw std::invalid_argument("check_interlacing: n_max must be at least 2");
  const auto G = g_polys(n_max + 1);
  InterlacingReport report;
  const Rational base_tol(1, 1000000000000);
  std::vector<RootIsolation> roots(n_max + 2);
  std::vector<Rational> tol(n_max + 2, base_tol);
  for (unsigned n = 2; n <= n_max + 1; ++n) roots[n] = isolate_real_roots(G[n], base_tol);

  for (unsigned n = 2; n <= n_max; ++n) {
    InterlacingLevel level;
    level.n = n;
    const bool both_real = roots[n].all_real() && roots[n + 1].all_real();
    level.real_rooted = roots[n].all_real();
    level.negative = level.real_rooted && std::all_of(roots[n].intervals.begin(), roots[n].intervals.end(),
                                                      [](const RootInterval& iv) { return iv.hi < 0; });
    level.relation = G[n].degree() == G[n + 1].degree() ? "alternates" : "interlaces";
    const bool simple = [&] {
      for (unsigned m : {n, n + 1}) {
        for (const auto& iv : roots[m].intervals) {
          if (iv.multiplicity != 1) return false;
        }
      }
      return true;
    }();
    const long deg_gap = G[n + 1].degree() - G[n].degree();
    if (both_real && simple && (deg_gap == 0 || deg_gap == 1)) {
      // Tighten both isolations until the combined intervals are disjoint.
      for (int round = 0; round < 16; ++round) {
        if (certify_alternation(roots[n], roots[n + 1], level.separated, level.next_leads)) break;
        for (unsigned m : {n, n + 1}) {
          tol[m] /= Integer(1) << 32;
          roots[m] = isolate_real_roots(G[m], tol[m]);
        }
      }
    }
    level.roots = roots[n];
    level.next_roots = roots[n + 1];
    report.levels.push_back(std::move(level));
  }
  return report;
}

}  // namespace bft
