#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace slablb {

// Arbitrary-precision integers and rationals. cpp_rational keeps values
// reduced (gcd(num,den)=1, den>0) after every operation, which is exactly
// the canonical-form invariant the algebra layer relies on.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt num(const Rational& r) { return numerator(r); }
inline BigInt den(const Rational& r) { return denominator(r); }

inline Rational rat(long long n, long long d = 1) {
  if (d == 0) throw std::invalid_argument("rational with zero denominator");
  return Rational(n, d);
}

inline int sign(const Rational& r) { return r.sign(); }

inline Rational abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

inline bool is_zero(const Rational& r) { return r.is_zero(); }

// Decimal-string round trip used by all JSON schemas; arbitrary precision
// safe, unlike emitting JSON numbers.
inline std::string int_str(const BigInt& v) { return v.str(); }

inline Rational rat_from_strings(const std::string& n, const std::string& d) {
  BigInt nn(n), dd(d);
  if (dd <= 0) throw std::invalid_argument("denominator must be positive: " + d);
  return Rational(nn, dd);
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

// Nearest rational with the given power-of-two denominator. Only used to
// bring float-configured quantities (widths, cube sides) into the exact
// domain; never applied to values that are already exact.
inline Rational snap(double x, std::int64_t denom = (1LL << 32)) {
  const double scaled = x * static_cast<double>(denom);
  BigInt n(static_cast<long long>(scaled >= 0 ? scaled + 0.5 : scaled - 0.5));
  return Rational(n, BigInt(denom));
}

// Bit length of max(|num|,|den|); reported by verifiers so coefficient
// growth stays observable (no a-priori bound is assumed).
inline std::size_t bit_length(const Rational& r) {
  BigInt n = num(r) < 0 ? BigInt(-num(r)) : num(r);
  BigInt d = den(r);
  const BigInt m = n > d ? n : d;
  return m.is_zero() ? 0 : msb(m) + 1;
}

}  // namespace slablb
