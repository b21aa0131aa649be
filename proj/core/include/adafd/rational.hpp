#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace adafd {

/// Exact rational on 64-bit integers. Always kept normalized (gcd 1, den > 0).
/// Arithmetic goes through 128-bit intermediates and throws std::overflow_error
/// rather than wrapping; stencil derivation stays far below these limits.
class Rational {
public:
  constexpr Rational() = default;
  Rational(long long num, long long den = 1) : n_(num), d_(den) {
    if (d_ == 0) throw std::invalid_argument("Rational: zero denominator");
    normalize();
  }

  long long num() const { return n_; }
  long long den() const { return d_; }

  double to_double() const { return static_cast<double>(n_) / static_cast<double>(d_); }
  bool is_zero() const { return n_ == 0; }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return from128(i128(a.n_) * b.d_ + i128(b.n_) * a.d_, i128(a.d_) * b.d_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return from128(i128(a.n_) * b.d_ - i128(b.n_) * a.d_, i128(a.d_) * b.d_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return from128(i128(a.n_) * b.n_, i128(a.d_) * b.d_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.n_ == 0) throw std::domain_error("Rational: division by zero");
    return from128(i128(a.n_) * b.d_, i128(a.d_) * b.n_);
  }
  Rational operator-() const {
    Rational r;
    r.n_ = -n_;
    r.d_ = d_;
    return r;
  }
  Rational abs() const { return n_ < 0 ? -*this : *this; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.n_ == b.n_ && a.d_ == b.d_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return i128(a.n_) * b.d_ < i128(b.n_) * a.d_;
  }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

  Rational pow(int e) const {
    if (e < 0) return (Rational(1) / *this).pow(-e);
    Rational r(1), base = *this;
    while (e > 0) {
      if (e & 1) r = r * base;
      base = e > 1 ? base * base : base;
      e >>= 1;
    }
    return r;
  }

  std::string str() const {
    if (d_ == 1) return std::to_string(n_);
    return std::to_string(n_) + "/" + std::to_string(d_);
  }

  /// Parses "p", "p/q", or a plain integer with optional sign.
  static Rational parse(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(std::stoll(s));
    return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
  }

private:
  using i128 = __int128;

  static Rational from128(i128 n, i128 d) {
    if (d == 0) throw std::domain_error("Rational: zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    i128 g = gcd128(n < 0 ? -n : n, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
    constexpr i128 lim = 0x7fffffffffffffffLL;
    if (n > lim || n < -lim || d > lim) throw std::overflow_error("Rational overflow");
    Rational r;
    r.n_ = static_cast<long long>(n);
    r.d_ = static_cast<long long>(d);
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
    if (d_ < 0) {
      n_ = -n_;
      d_ = -d_;
    }
    long long g = std::gcd(n_ < 0 ? -n_ : n_, d_);
    if (g > 1) {
      n_ /= g;
      d_ /= g;
    }
  }

  long long n_ = 0;
  long long d_ = 1;
};

inline long long factorial_ll(int n) {
  long long r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

}  // namespace adafd
