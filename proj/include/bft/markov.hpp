#ifndef BFT_MARKOV_HPP
#define BFT_MARKOV_HPP

// The 8-state chain M_j = (x_j, x_{j-1}, X_{j-1}) driving the HS increments
// of a p-biased simple butterfly code. State (a, b, c) has index
// 4a + 2b + c (0-based here; the usual 1-based label is that plus one).
//
// Every routine is templated on the scalar: Rational for exact identities,
// Real for sweeps and plots. Both are explicitly instantiated.

#include "bft/numeric.hpp"
#include "bft/rational_poly.hpp"
#include "bft/rng.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace bft {

inline constexpr std::size_t kChainStates = 8;

template <class T>
using ChainVector = std::array<T, kChainStates>;
template <class T>
using ChainMatrix = std::array<ChainVector<T>, kChainStates>;

inline constexpr std::size_t chain_state(unsigned a, unsigned b, unsigned c) { return 4 * a + 2 * b + c; }

template <class T>
struct ChainSpec {
  T p;
  ChainMatrix<T> transition;
};

template <class T>
struct ChainAnalysis {
  ChainVector<T> stationary;
  ChainVector<T> poisson_g;         // solution of (I - P + 1 pi^T) g = h
  ChainVector<T> poisson_closed;    // the displayed closed form
  T pi_dot_closed;                  // pi^T of the closed form
  T mu;
  T sigma2;
  T sigma2_via_poisson;
};

/// Throws std::invalid_argument unless 0 < p < 1.
template <class T>
ChainSpec<T> build_chain(const T& p);

/// Closed form (1 / (1 - pq)) [q^3, p^2q^2, p^2q, pq^3, pq^2, p^3q, p^3, p^2q^2].
template <class T>
ChainVector<T> stationary(const T& p);

/// xor(a, b) * (1 - c) per state.
ChainVector<int> observable_f();

template <class T>
T mu(const T& p);  // pq / (1 - pq)
template <class T>
T sigma2(const T& p);  // pq (1 - 3pq - 2p^2q^2) / (1 - pq)^3

/// Gaussian elimination on the nonsingular modified system.
template <class T>
ChainVector<T> solve_poisson(const T& p);
/// (1 / (8(1 - pq))) [8p-5, 8p-5, 3, 8p-5, 3, 3-8p, 3-8p, 3-8p]
template <class T>
ChainVector<T> poisson_closed_form(const T& p);

/// E_pi[(h + 2Pg) * h] with g from solve_poisson.
template <class T>
T sigma2_via_poisson(const T& p);

template <class T>
ChainAnalysis<T> analyze_chain(const T& p);

template <class T>
ChainVector<T> left_multiply(const ChainVector<T>& row, const ChainMatrix<T>& m);
template <class T>
ChainVector<T> right_multiply(const ChainMatrix<T>& m, const ChainVector<T>& col);

/// det(lambda I - P) by Faddeev-LeVerrier.
RationalPolynomial characteristic_polynomial(const ChainMatrix<Rational>& m);
/// Characteristic polynomial equals lambda^5 (lambda - 1)(lambda^2 - pq).
bool char_poly_check(const Rational& p);

/// sigma_p^2 / mu_p as a function of r = pq; throws outside [0, 1/4].
template <class T>
T variance_mean_ratio(const T& r);

struct TwoStateChain {
  std::array<std::array<Rational, 2>, 2> transition;
  std::array<Rational, 2> stationary;
};

/// Law of the increments X_j alone when p = 1/2.
TwoStateChain two_state_uniform_chain();

/// Golden-section maximizer of sigma2 on [1/2, 1).
Real argmax_sigma2(const Real& tolerance);

/// States M_2, ..., M_{n} of the chain driven by n iid Bernoulli(p) bits,
/// starting from M_2 = (x_2, x_1, 0). Empty when n < 2. Each entry is the
/// 0-based state index; f of the entries sums to the HS of the code.
std::vector<std::uint8_t> simulate_states(double p, std::size_t n, RngStream& rng);

}  // namespace bft

#endif  // BFT_MARKOV_HPP
