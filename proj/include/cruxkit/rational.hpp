#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace cruxkit {

// Exact rational with 64-bit numerator/denominator.  Used wherever average
// degrees or density thresholds are compared, so that peeling and subset
// enumeration never depend on floating-point rounding.
struct Rational {
  long long num = 0;
  long long den = 1;  // always > 0

  Rational() = default;
  Rational(long long n, long long d) : num(n), den(d) { normalize(); }
  static Rational from_int(long long n) { return Rational(n, 1); }

  void normalize() {
    if (den == 0) throw std::invalid_argument("Rational: zero denominator");
    if (den < 0) { num = -num; den = -den; }
    long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) { num /= g; den /= g; }
  }

  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

  // Smallest integer >= value (positive denominators only).
  long long ceil() const {
    long long q = num / den, r = num % den;
    return q + (r > 0 ? 1 : 0);
  }
  long long floor() const {
    long long q = num / den, r = num % den;
    return q - (r < 0 ? 1 : 0);
  }
  bool is_integer() const { return num % den == 0; }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return Rational(a.num * b.den + b.num * a.den, a.den * b.den);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return Rational(a.num * b.den - b.num * a.den, a.den * b.den);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return Rational(a.num * b.num, a.den * b.den);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num == 0) throw std::invalid_argument("Rational: division by zero");
    return Rational(a.num * b.den, a.den * b.num);
  }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num == b.num && a.den == b.den;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

  std::string str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
  }
};

// Parses "3/10", "0.3", "1", or "0.35" into an exact rational.
// Decimal strings are read digit-by-digit, so the result is exact.
inline Rational parse_rational(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("parse_rational: empty string");
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    long long n = std::stoll(s.substr(0, slash));
    long long d = std::stoll(s.substr(slash + 1));
    return Rational(n, d);
  }
  auto dot = s.find('.');
  if (dot == std::string::npos) return Rational::from_int(std::stoll(s));
  std::string whole = s.substr(0, dot), frac = s.substr(dot + 1);
  if (frac.size() > 15) frac = frac.substr(0, 15);
  long long den = 1;
  for (size_t i = 0; i < frac.size(); ++i) den *= 10;
  bool neg = !whole.empty() && whole[0] == '-';
  long long w = (whole.empty() || whole == "-" || whole == "+") ? 0 : std::stoll(whole);
  long long f = frac.empty() ? 0 : std::stoll(frac);
  long long num = (neg ? -1 : 1) * ((neg ? -w : w) * den + f);
  return Rational(num, den);
}

}  // namespace cruxkit
