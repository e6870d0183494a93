#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace cremona {

// All intersection-theory, lattice and classification arithmetic runs on
// arbitrary-precision integers so no overflow analysis is ever needed.
using bigint = boost::multiprecision::cpp_int;

inline bigint big_gcd(bigint a, bigint b) { return boost::multiprecision::gcd(a, b); }
inline bigint big_abs(const bigint& a) { return boost::multiprecision::abs(a); }

// Exact rational with canonical form den > 0, gcd(num, den) = 1.
struct Rational {
  bigint num = 0;
  bigint den = 1;

  Rational() = default;
  Rational(bigint n) : num(std::move(n)) {}  // NOLINT: implicit from integers is intended
  Rational(long long n) : num(n) {}          // NOLINT
  Rational(bigint n, bigint d) : num(std::move(n)), den(std::move(d)) { normalize(); }

  void normalize() {
    if (den == 0) throw std::invalid_argument("Rational: zero denominator");
    if (den < 0) { num = -num; den = -den; }
    bigint g = big_gcd(big_abs(num), den);
    if (g > 1) { num /= g; den /= g; }
    if (num == 0) den = 1;
  }

  Rational operator+(const Rational& o) const { return Rational(num * o.den + o.num * den, den * o.den); }
  Rational operator-(const Rational& o) const { return Rational(num * o.den - o.num * den, den * o.den); }
  Rational operator*(const Rational& o) const { return Rational(num * o.num, den * o.den); }
  Rational operator/(const Rational& o) const {
    if (o.num == 0) throw std::invalid_argument("Rational: division by zero");
    return Rational(num * o.den, den * o.num);
  }
  Rational operator-() const { Rational r(*this); r.num = -r.num; return r; }
  bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
  bool operator!=(const Rational& o) const { return !(*this == o); }
  bool operator<(const Rational& o) const { return num * o.den < o.num * den; }
  bool operator>(const Rational& o) const { return o < *this; }
  bool operator<=(const Rational& o) const { return !(o < *this); }
  bool operator>=(const Rational& o) const { return !(*this < o); }

  bool is_zero() const { return num == 0; }
  bool is_integer() const { return den == 1; }

  std::string str() const {
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
  }
};

inline long long to_int64(const bigint& v) {
  if (v > bigint(INT64_MAX) || v < bigint(INT64_MIN))
    throw std::overflow_error("bigint does not fit in 64 bits: " + v.str());
  return v.convert_to<long long>();
}

}  // namespace cremona
