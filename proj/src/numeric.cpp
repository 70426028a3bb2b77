#include "senslab/numeric.hpp"

#include <boost/multiprecision/cpp_int.hpp>

namespace senslab {

long bit_length(const Integer& v) {
  if (v == 0) return 0;
  return static_cast<long>(boost::multiprecision::msb(boost::multiprecision::abs(v))) + 1;
}

Integer pow2(const Integer& e, long max_bits) {
  if (e < 0) throw InvalidParams("pow2: negative exponent");
  if (e > max_bits) {
    throw BudgetExceeded("pow2: exponent " + to_decimal(e) + " exceeds the " +
                         std::to_string(max_bits) + "-bit budget");
  }
  Integer r = 1;
  r <<= static_cast<unsigned long>(e);
  return r;
}

Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw DivisionByZero();
  if (den < 0) return Rational(-num, -den);
  return Rational(num, den);
}

Rational rational_div(const Rational& a, const Rational& b) {
  if (b == 0) throw DivisionByZero();
  return a / b;
}

Integer floor_rational(const Rational& x) {
  Integer n = numerator(x);
  Integer d = denominator(x);
  Integer q = n / d;
  if (n < 0 && q * d != n) --q;
  return q;
}

Integer ceil_rational(const Rational& x) { return -floor_rational(-x); }

std::string to_decimal(const Integer& v) { return v.str(); }

Integer integer_from_decimal(const std::string& s) { return Integer(s); }

std::string to_decimal(const Rational& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

Rational rational_from_decimal(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(Integer(s));
  Integer num(s.substr(0, slash));
  Integer den(s.substr(slash + 1));
  return make_rational(num, den);
}

std::pair<std::string, std::string> to_decimal_pair(const Rational& q) {
  return {numerator(q).str(), denominator(q).str()};
}

Rational rational_from_pair(const std::string& num, const std::string& den) {
  return make_rational(Integer(num), Integer(den));
}

}  // namespace senslab
