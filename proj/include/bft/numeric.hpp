#ifndef BFT_NUMERIC_HPP
#define BFT_NUMERIC_HPP

#include <gmpxx.h>

#include <boost/multiprecision/mpfr.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace bft {

using Integer = mpz_class;
using Rational = mpq_class;

// Variable-precision binary float. Precision is taken from the process-wide
// default at construction time; see PrecisionScope.
using Real = boost::multiprecision::mpfr_float;

inline constexpr unsigned kDefaultDigits = 50;

/// RAII guard that sets the default decimal precision for new Real values
/// and restores the previous value on exit. The default is process-wide, so
/// Real arithmetic is kept out of worker threads.
class PrecisionScope {
 public:
  explicit PrecisionScope(unsigned digits = kDefaultDigits)
      : saved_(Real::default_precision()) {
    Real::default_precision(digits);
  }
  ~PrecisionScope() { Real::default_precision(saved_); }
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  unsigned saved_;
};

Integer binomial(long n, long k);  // 0 outside 0 <= k <= n
Integer pow2(unsigned long e);
Rational pow_rational(const Rational& base, unsigned long e);

/// Parses "3", "-2/7", "0.125" or "1e-3" into an exact rational.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);
double to_double(const Rational& q);
Real to_real(const Rational& q);
/// Decimal rendering with `digits` significant digits.
std::string to_string(const Real& x, unsigned digits = 20);

}  // namespace bft

#endif  // BFT_NUMERIC_HPP
