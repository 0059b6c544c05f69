#ifndef BFT_RATIONAL_POLY_HPP
#define BFT_RATIONAL_POLY_HPP

#include "bft/numeric.hpp"

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

namespace bft {

/// Dense polynomial with exact rational coefficients; coefficient i
/// multiplies x^i. The highest stored coefficient is always nonzero.
class RationalPolynomial {
 public:
  RationalPolynomial() = default;  // zero polynomial
  explicit RationalPolynomial(std::vector<Rational> coeffs);
  RationalPolynomial(std::initializer_list<Rational> coeffs);

  static RationalPolynomial constant(const Rational& c);
  static RationalPolynomial monomial(const Rational& c, std::size_t power);

  /// -1 for the zero polynomial.
  long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  /// Coefficient of x^i, zero beyond the degree.
  Rational coeff(std::size_t i) const;
  const Rational& leading() const { return coeffs_.back(); }

  Rational operator()(const Rational& x) const;
  Real operator()(const Real& x) const;
  /// Sign of p(x).
  int sign_at(const Rational& x) const;

  RationalPolynomial derivative() const;
  /// x * d/dx
  RationalPolynomial x_derivative() const;
  /// Same roots, integer coefficients with gcd 1 and positive leading term.
  RationalPolynomial primitive() const;

  RationalPolynomial& operator+=(const RationalPolynomial& o);
  RationalPolynomial& operator-=(const RationalPolynomial& o);
  RationalPolynomial& operator*=(const Rational& c);
  friend RationalPolynomial operator+(RationalPolynomial a, const RationalPolynomial& b) { return a += b; }
  friend RationalPolynomial operator-(RationalPolynomial a, const RationalPolynomial& b) { return a -= b; }
  friend RationalPolynomial operator*(RationalPolynomial a, const Rational& c) { return a *= c; }
  friend RationalPolynomial operator*(const RationalPolynomial& a, const RationalPolynomial& b);
  RationalPolynomial operator-() const;

  bool operator==(const RationalPolynomial&) const = default;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

/// Quotient and remainder; throws std::domain_error on a zero divisor.
std::pair<RationalPolynomial, RationalPolynomial> divmod(const RationalPolynomial& a, const RationalPolynomial& b);
/// Monic gcd (zero if both are zero).
RationalPolynomial gcd(RationalPolynomial a, RationalPolynomial b);

/// "1/4 + 3/4*x + x^2"
std::string to_string(const RationalPolynomial& p);

}  // namespace bft

#endif  // BFT_RATIONAL_POLY_HPP
