#include "bft/markov.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace bft {

namespace {

template <class T>
void check_p(const T& p) {
  if (!(p > 0 && p < 1)) throw std::invalid_argument("bias p must lie in (0, 1)");
}

template <class T>
T absval(const T& x) {
  return x < 0 ? T(-x) : x;
}

}  // namespace

template <class T>
ChainSpec<T> build_chain(const T& p) {
  check_p(p);
  const T q = 1 - p;
  ChainSpec<T> spec{p, {}};
  for (auto& row : spec.transition) row.fill(T(0));
  for (unsigned a = 0; a < 2; ++a) {
    for (unsigned b = 0; b < 2; ++b) {
      for (unsigned c = 0; c < 2; ++c) {
        const unsigned next_c = (a ^ b) & (1U - c);
        auto& row = spec.transition[chain_state(a, b, c)];
        row[chain_state(0, a, next_c)] += q;
        row[chain_state(1, a, next_c)] += p;
      }
    }
  }
  return spec;
}

template <class T>
ChainVector<T> stationary(const T& p) {
  check_p(p);
  const T q = 1 - p;
  const T scale = 1 / (1 - p * q);
  const T p2 = p * p, q2 = q * q;
  ChainVector<T> pi{T(q2 * q), T(p2 * q2), T(p2 * q), T(p * q2 * q), T(p * q2), T(p2 * p * q), T(p2 * p), T(p2 * q2)};
  for (auto& x : pi) x *= scale;
  return pi;
}

ChainVector<int> observable_f() {
  ChainVector<int> f{};
  for (unsigned a = 0; a < 2; ++a) {
    for (unsigned b = 0; b < 2; ++b) {
      for (unsigned c = 0; c < 2; ++c) f[chain_state(a, b, c)] = static_cast<int>((a ^ b) & (1U - c));
    }
  }
  return f;
}

template <class T>
T mu(const T& p) {
  check_p(p);
  const T r = p * (1 - p);
  return r / (1 - r);
}

template <class T>
T sigma2(const T& p) {
  check_p(p);
  const T r = p * (1 - p);
  const T d = 1 - r;
  return r * (1 - 3 * r - 2 * r * r) / (d * d * d);
}

template <class T>
ChainVector<T> left_multiply(const ChainVector<T>& row, const ChainMatrix<T>& m) {
  ChainVector<T> out;
  for (std::size_t j = 0; j < kChainStates; ++j) {
    T acc = 0;
    for (std::size_t i = 0; i < kChainStates; ++i) acc += row[i] * m[i][j];
    out[j] = acc;
  }
  return out;
}

template <class T>
ChainVector<T> right_multiply(const ChainMatrix<T>& m, const ChainVector<T>& col) {
  ChainVector<T> out;
  for (std::size_t i = 0; i < kChainStates; ++i) {
    T acc = 0;
    for (std::size_t j = 0; j < kChainStates; ++j) acc += m[i][j] * col[j];
    out[i] = acc;
  }
  return out;
}

template <class T>
ChainVector<T> solve_poisson(const T& p) {
  const auto spec = build_chain(p);
  const auto pi = stationary(p);
  const auto f = observable_f();
  const T m = mu(p);
  // Augmented matrix [I - P + 1 pi^T | h].
  std::array<std::array<T, kChainStates + 1>, kChainStates> a;
  for (std::size_t i = 0; i < kChainStates; ++i) {
    for (std::size_t j = 0; j < kChainStates; ++j) a[i][j] = T(i == j ? 1 : 0) - spec.transition[i][j] + pi[j];
    a[i][kChainStates] = T(f[i]) - m;
  }
  for (std::size_t col = 0; col < kChainStates; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < kChainStates; ++r) {
      if (absval(a[r][col]) > absval(a[pivot][col])) pivot = r;
    }
    if (a[pivot][col] == 0) throw std::runtime_error("solve_poisson: singular system");
    std::swap(a[col], a[pivot]);
    for (std::size_t r = 0; r < kChainStates; ++r) {
      if (r == col || a[r][col] == 0) continue;
      const T factor = a[r][col] / a[col][col];
      for (std::size_t c = col; c <= kChainStates; ++c) a[r][c] -= factor * a[col][c];
    }
  }
  ChainVector<T> g;
  for (std::size_t i = 0; i < kChainStates; ++i) g[i] = a[i][kChainStates] / a[i][i];
  return g;
}

template <class T>
ChainVector<T> poisson_closed_form(const T& p) {
  check_p(p);
  const T q = 1 - p;
  const T scale = 1 / (8 * (1 - p * q));
  const T lo = 8 * p - 5;
  const T hi = 3 - 8 * p;
  ChainVector<T> g{lo, lo, T(3), lo, T(3), hi, hi, hi};
  for (auto& x : g) x *= scale;
  return g;
}

template <class T>
T sigma2_via_poisson(const T& p) {
  const auto spec = build_chain(p);
  const auto pi = stationary(p);
  const auto f = observable_f();
  const auto g = solve_poisson(p);
  const T m = mu(p);
  const auto Pg = right_multiply(spec.transition, g);
  T acc = 0;
  for (std::size_t i = 0; i < kChainStates; ++i) {
    const T h = T(f[i]) - m;
    acc += pi[i] * (h + 2 * Pg[i]) * h;
  }
  return acc;
}

template <class T>
ChainAnalysis<T> analyze_chain(const T& p) {
  ChainAnalysis<T> out;
  out.stationary = stationary(p);
  out.poisson_g = solve_poisson(p);
  out.poisson_closed = poisson_closed_form(p);
  T dot = 0;
  for (std::size_t i = 0; i < kChainStates; ++i) dot += out.stationary[i] * out.poisson_closed[i];
  out.pi_dot_closed = dot;
  out.mu = mu(p);
  out.sigma2 = sigma2(p);
  out.sigma2_via_poisson = sigma2_via_poisson(p);
  return out;
}

template <class T>
T variance_mean_ratio(const T& r) {
  if (r < 0 || r > T(1) / 4) throw std::invalid_argument("variance_mean_ratio: r must lie in [0, 1/4]");
  const T d = 1 - r;
  return (1 - 3 * r - 2 * r * r) / (d * d);
}

RationalPolynomial characteristic_polynomial(const ChainMatrix<Rational>& A) {
  constexpr std::size_t n = kChainStates;
  std::vector<Rational> c(n + 1, Rational(0));
  c[n] = 1;
  ChainMatrix<Rational> M;
  for (auto& row : M) row.fill(Rational(0));
  for (std::size_t k = 1; k <= n; ++k) {
    // M <- A M + c_{n-k+1} I, then c_{n-k} = -tr(A M) / k.
    ChainMatrix<Rational> AM;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        Rational acc = 0;
        for (std::size_t l = 0; l < n; ++l) acc += A[i][l] * M[l][j];
        AM[i][j] = acc;
      }
    }
    for (std::size_t i = 0; i < n; ++i) AM[i][i] += c[n - k + 1];
    M = AM;
    Rational trace = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t l = 0; l < n; ++l) trace += A[i][l] * M[l][i];
    }
    c[n - k] = -trace / static_cast<long>(k);
  }
  return RationalPolynomial(std::move(c));
}

bool char_poly_check(const Rational& p) {
  const Rational r = p * (1 - p);
  // lambda^8 - lambda^7 - r lambda^6 + r lambda^5
  std::vector<Rational> expected(9, Rational(0));
  expected[8] = 1;
  expected[7] = -1;
  expected[6] = -r;
  expected[5] = r;
  return characteristic_polynomial(build_chain(p).transition) == RationalPolynomial(std::move(expected));
}

TwoStateChain two_state_uniform_chain() {
  TwoStateChain c;
  c.transition = {{{Rational(1, 2), Rational(1, 2)}, {Rational(1), Rational(0)}}};
  // Solve pi_0 = pi_0 / 2 + pi_1 with pi_0 + pi_1 = 1.
  c.stationary = {Rational(2, 3), Rational(1, 3)};
  return c;
}

Real argmax_sigma2(const Real& tolerance) {
  const Real phi = (sqrt(Real(5)) - 1) / 2;
  Real lo = Real(1) / 2;
  Real hi = Real(1) - tolerance / 4;
  Real x1 = hi - phi * (hi - lo);
  Real x2 = lo + phi * (hi - lo);
  Real f1 = sigma2(x1), f2 = sigma2(x2);
  while (hi - lo > tolerance) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + phi * (hi - lo);
      f2 = sigma2(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - phi * (hi - lo);
      f1 = sigma2(x1);
    }
  }
  return (lo + hi) / 2;
}

std::vector<std::uint8_t> simulate_states(double p, std::size_t n, RngStream& rng) {
  check_p(p);
  std::vector<std::uint8_t> states;
  if (n < 2) return states;
  states.reserve(n - 1);
  unsigned x1 = rng.bernoulli(p);
  unsigned x2 = rng.bernoulli(p);
  unsigned a = x2, b = x1, c = 0;
  states.push_back(static_cast<std::uint8_t>(chain_state(a, b, c)));
  for (std::size_t j = 3; j <= n; ++j) {
    const unsigned next_c = (a ^ b) & (1U - c);
    b = a;
    a = rng.bernoulli(p);
    c = next_c;
    states.push_back(static_cast<std::uint8_t>(chain_state(a, b, c)));
  }
  return states;
}

#define BFT_INSTANTIATE_CHAIN(T)                                                     \
  template ChainSpec<T> build_chain<T>(const T&);                                    \
  template ChainVector<T> stationary<T>(const T&);                                   \
  template T mu<T>(const T&);                                                        \
  template T sigma2<T>(const T&);                                                    \
  template ChainVector<T> solve_poisson<T>(const T&);                                \
  template ChainVector<T> poisson_closed_form<T>(const T&);                          \
  template T sigma2_via_poisson<T>(const T&);                                        \
  template ChainAnalysis<T> analyze_chain<T>(const T&);                              \
  template ChainVector<T> left_multiply<T>(const ChainVector<T>&, const ChainMatrix<T>&); \
  template ChainVector<T> right_multiply<T>(const ChainMatrix<T>&, const ChainVector<T>&); \
  template T variance_mean_ratio<T>(const T&);

BFT_INSTANTIATE_CHAIN(Rational)
BFT_INSTANTIATE_CHAIN(Real)

#undef BFT_INSTANTIATE_CHAIN

}  // namespace bft
