#pragma once

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace greenlab {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

BigInt big_pow(const BigInt& base, unsigned long exponent);
Rational make_rational(long long num, long long den = 1);

// "p/q" in lowest terms
std::string fraction_string(const Rational& q);
// decimal expansion rounded half away from zero at `digits` fractional digits
std::string decimal_string(const Rational& q, int digits);
// ceil(log2 k) for k >= 1
unsigned long ceil_log2(unsigned long k);

}  // namespace greenlab
