#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <utility>

#include "senslab/errors.hpp"

namespace senslab {

// Exact arbitrary-precision scalars. All arithmetic is exact; rationals are
// kept normalized (gcd-reduced, positive denominator), so equality and
// hashing are structural.
using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Default cap, in bits, on any integer the library will materialize.
inline constexpr long kDefaultBitBudget = 10'000'000;

/// Number of bits in |v|; 0 for v = 0.
long bit_length(const Integer& v);

/// 2^e, exactly. Requires e >= 0. Throws BudgetExceeded when the result
/// would need more than max_bits bits; higher layers then carry the index
/// symbolically instead of materializing the value.
Integer pow2(const Integer& e, long max_bits = kDefaultBitBudget);

/// num/den in lowest terms with positive denominator. Throws DivisionByZero.
Rational make_rational(const Integer& num, const Integer& den);

/// Checked division; throws DivisionByZero when b == 0.
Rational rational_div(const Rational& a, const Rational& b);

/// floor(x) as an Integer (exact for any sign).
Integer floor_rational(const Rational& x);
Integer ceil_rational(const Rational& x);

// Decimal-string serialization; round-trips exactly.
std::string to_decimal(const Integer& v);
Integer integer_from_decimal(const std::string& s);

/// "p/q" (or "p" when q == 1); round-trips exactly.
std::string to_decimal(const Rational& q);
Rational rational_from_decimal(const std::string& s);

/// Numerator/denominator pair as decimal strings; round-trips exactly.
std::pair<std::string, std::string> to_decimal_pair(const Rational& q);
Rational rational_from_pair(const std::string& num, const std::string& den);

}  // namespace senslab
