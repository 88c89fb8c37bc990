#pragma once

#include <cstdint>
#include <numeric>
#include <string>

namespace densestream {

// Exact rational with 64-bit numerator/denominator, always normalized with
// den > 0. Comparisons go through 128-bit intermediates. Densities and
// validator thresholds fit comfortably (num <= m*n, den <= n^2).
struct Rational {
  long long num = 0;
  long long den = 1;

  Rational() = default;
  Rational(long long n, long long d = 1) : num(n), den(d) { normalize(); }

  void normalize() {
    if (den < 0) {
      num = -num;
      den = -den;
    }
    long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
    if (num == 0) den = 1;
  }

  double value() const { return static_cast<double>(num) / den; }
  std::string str() const {
    return den == 1 ? std::to_string(num)
                    : std::to_string(num) + "/" + std::to_string(den);
  }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num == b.num && a.den == b.den;
  }
  friend bool operator<(const Rational& a, const Rational& b) {
    return static_cast<__int128>(a.num) * b.den <
           static_cast<__int128>(b.num) * a.den;
  }
  friend bool operator<=(const Rational& a, const Rational& b) {
    return !(b < a);
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator>=(const Rational& a, const Rational& b) {
    return !(a < b);
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return Rational(a.num * b.den + b.num * a.den, a.den * b.den);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    Rational x(a.num, b.den);
    Rational y(b.num, a.den);
    return Rational(x.num * y.num, x.den * y.den);
  }
};

// degree <=> threshold comparisons used by validators.
inline bool degree_gt(long long degree, const Rational& t) {
  return static_cast<__int128>(degree) * t.den > t.num;
}
inline bool degree_lt(long long degree, const Rational& t) {
  return static_cast<__int128>(degree) * t.den < t.num;
}

// degree <=> a*b without forming the product (keeps 40-bit dyadic thresholds
// inside 128-bit intermediates).
inline bool degree_gt(long long degree, const Rational& a, const Rational& b) {
  __int128 dens = static_cast<__int128>(a.den) * b.den;
  return dens * degree > static_cast<__int128>(a.num) * b.num;
}

}  // namespace densestream
