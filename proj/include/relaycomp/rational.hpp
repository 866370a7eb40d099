#pragma once
// Exact rational arithmetic for probability tables and expected code lengths.
// int64 numerator/denominator with 128-bit intermediates; throws on overflow.

#include <cstdint>
#include <numeric>
#include <string>

#include "relaycomp/config.hpp"

namespace relaycomp {

class Rational {
 public:
  Rational() = default;
  Rational(long long value) : num_(value), den_(1) {}  // NOLINT: implicit by design
  Rational(long long num, long long den) : num_(num), den_(den) { normalize(); }

  long long num() const { return num_; }
  long long den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_negative() const { return num_ < 0; }

  double to_double() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

  // Accepts "3", "-3", "1/6", "0.25".
  static Rational parse(const std::string& text) {
    if (text.empty()) throw InvalidArgument("empty rational literal");
    auto slash = text.find('/');
    if (slash != std::string::npos) {
      long long n = parse_int(text.substr(0, slash));
      long long d = parse_int(text.substr(slash + 1));
      return Rational(n, d);
    }
    auto dot = text.find('.');
    if (dot != std::string::npos) {
      std::string digits = text.substr(0, dot) + text.substr(dot + 1);
      std::size_t frac = text.size() - dot - 1;
      if (frac > 18) throw InvalidArgument("decimal literal too long: " + text);
      long long n = parse_int(digits);
      long long d = 1;
      for (std::size_t i = 0; i < frac; ++i) d *= 10;
      return Rational(n, d);
    }
    return Rational(parse_int(text));
  }

  std::string str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return from_i128(i128(a.num_) * b.den_ + i128(b.num_) * a.den_,
                     i128(a.den_) * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return from_i128(i128(a.num_) * b.den_ - i128(b.num_) * a.den_,
                     i128(a.den_) * b.den_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return from_i128(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw InvalidArgument("rational division by zero");
    return from_i128(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
  }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }
  Rational operator-() const { return Rational(-num_, den_); }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

 private:
  using i128 = __int128;

  long long num_ = 0;
  long long den_ = 1;

  static long long parse_int(const std::string& s) {
    if (s.empty()) throw InvalidArgument("bad rational literal");
    std::size_t pos = 0;
    long long v = 0;
    try {
      v = std::stoll(s, &pos);
    } catch (const std::exception&) {
      throw InvalidArgument("bad rational literal: " + s);
    }
    if (pos != s.size()) throw InvalidArgument("bad rational literal: " + s);
    return v;
  }

  static Rational from_i128(i128 n, i128 d) {
    if (d == 0) throw InvalidArgument("rational with zero denominator");
    if (d < 0) { n = -n; d = -d; }
    i128 g = gcd128(n < 0 ? -n : n, d);
    if (g > 1) { n /= g; d /= g; }
    constexpr i128 kMax = 0x7fffffffffffffffLL;
    if (n > kMax || n < -kMax || d > kMax) throw Error("rational overflow");
    Rational r;
    r.num_ = static_cast<long long>(n);
    r.den_ = static_cast<long long>(d);
    return r;
  }

  static i128 gcd128(i128 a, i128 b) {
    while (b != 0) {
      i128 t = a % b;
      a = b;
      b = t;
    }
    return a == 0 ? 1 : a;
  }

  void normalize() {
    *this = from_i128(num_, den_);
  }
};

}  // namespace relaycomp
