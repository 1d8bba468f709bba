#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace sphmax {

// Exact rational arithmetic on a 64-bit numerator/denominator pair.
// All intermediates go through __int128, and every result is reduced and
// range-checked, so overflow surfaces as an exception instead of silent
// wraparound.  Denominator is kept strictly positive.
class Rational {
 public:
  constexpr Rational() noexcept : num_(0), den_(1) {}
  Rational(std::int64_t n) : num_(n), den_(1) {}  // NOLINT: implicit by design
  Rational(std::int64_t n, std::int64_t d) { assign(n, d); }

  [[nodiscard]] std::int64_t num() const { return num_; }
  [[nodiscard]] std::int64_t den() const { return den_; }

  [[nodiscard]] double to_double() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

  // Serialized form is always "num/den", even for integers ("3/1").
  [[nodiscard]] std::string str() const {
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  // Accepts "a/b" or a bare integer "a".
  static Rational parse(const std::string& s) {
    const auto slash = s.find('/');
    std::size_t used = 0;
    if (slash == std::string::npos) {
      const std::int64_t n = std::stoll(s, &used);
      if (used != s.size()) throw std::invalid_argument("bad rational: " + s);
      return Rational(n);
    }
    const std::string a = s.substr(0, slash), b = s.substr(slash + 1);
    const std::int64_t n = std::stoll(a, &used);
    if (used != a.size()) throw std::invalid_argument("bad rational: " + s);
    const std::int64_t d = std::stoll(b, &used);
    if (used != b.size()) throw std::invalid_argument("bad rational: " + s);
    return Rational(n, d);
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return make(i128(a.num_) * b.den_ + i128(b.num_) * a.den_,
                i128(a.den_) * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return make(i128(a.num_) * b.den_ - i128(b.num_) * a.den_,
                i128(a.den_) * b.den_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return make(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::domain_error("rational division by zero");
    return make(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
  }
  Rational operator-() const { return make(-i128(num_), i128(den_)); }

  Rational& operator+=(const Rational& b) { return *this = *this + b; }
  Rational& operator-=(const Rational& b) { return *this = *this - b; }
  Rational& operator*=(const Rational& b) { return *this = *this * b; }
  Rational& operator/=(const Rational& b) { return *this = *this / b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) {
    return !(a == b);
  }
  friend bool operator<(const Rational& a, const Rational& b) {
    return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) {
    return !(b < a);
  }
  friend bool operator>=(const Rational& a, const Rational& b) {
    return !(a < b);
  }

 private:
  using i128 = __int128;

  static i128 gcd128(i128 a, i128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
      const i128 t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  static std::int64_t narrow(i128 v) {
    if (v > INT64_MAX || v < INT64_MIN)
      throw std::overflow_error("rational overflow");
    return static_cast<std::int64_t>(v);
  }

  static Rational make(i128 n, i128 d) {
    Rational r;
    r.assign128(n, d);
    return r;
  }

  void assign(std::int64_t n, std::int64_t d) { assign128(i128(n), i128(d)); }

  void assign128(i128 n, i128 d) {
    if (d == 0) throw std::domain_error("rational with zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    const i128 g = gcd128(n, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
    num_ = narrow(n);
    den_ = narrow(d);
  }

  std::int64_t num_;
  std::int64_t den_;
};

inline Rational rat_min(const Rational& a, const Rational& b) {
  return a < b ? a : b;
}
inline Rational rat_max(const Rational& a, const Rational& b) {
  return a < b ? b : a;
}
inline Rational rat_abs(const Rational& a) { return a.num() < 0 ? -a : a; }

}  // namespace sphmax
