#include "greenlab/exact.hpp"

#include <stdexcept>

namespace greenlab {

BigInt big_pow(const BigInt& base, unsigned long exponent) {
  BigInt result = 1;
  BigInt b = base;
  while (exponent > 0) {
    if (exponent & 1UL) result *= b;
    exponent >>= 1;
    if (exponent > 0) b *= b;
  }
  return result;
}

Rational make_rational(long long num, long long den) {
  if (den == 0) throw std::invalid_argument("make_rational: zero denominator");
  return Rational(BigInt(num), BigInt(den));
}

std::string fraction_string(const Rational& q) {
  const BigInt num = boost::multiprecision::numerator(q);
  const BigInt den = boost::multiprecision::denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

std::string decimal_string(const Rational& q, int digits) {
  if (digits < 0) throw std::invalid_argument("decimal_string: negative digit count");
  const bool negative = q < 0;
  const Rational a = negative ? Rational(-q) : q;
  const BigInt scale = big_pow(10, static_cast<unsigned long>(digits));
  const BigInt num = boost::multiprecision::numerator(a) * scale;
  const BigInt den = boost::multiprecision::denominator(a);
  BigInt rounded = num / den;
  if ((num % den) * 2 >= den) rounded += 1;
  std::string s = rounded.str();
  if (digits > 0) {
    if (static_cast<int>(s.size()) <= digits) s.insert(0, static_cast<std::size_t>(digits + 1) - s.size(), '0');
    s.insert(s.size() - static_cast<std::size_t>(digits), ".");
  }
  if (negative && rounded != 0) s.insert(0, "-");
  return s;
}

unsigned long ceil_log2(unsigned long k) {
  if (k == 0) throw std::invalid_argument("ceil_log2: k must be positive");
  unsigned long e = 0;
  unsigned long v = 1;
  while (v < k) {
    v <<= 1;
    ++e;
  }
  return e;
}

}  // namespace greenlab
