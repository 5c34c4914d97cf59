#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>

namespace mwcut {

// Exact rational arithmetic for weights and budgets. All optimality logic in
// this library runs on these; no floating point anywhere near a comparison.
// Magnitudes stay tiny (single-digit weights, sums in the hundreds), so
// 64-bit components with gcd normalization suffice. Intermediate products go
// through 128 bits and narrowing is overflow-checked.
class Rat {
public:
  Rat() : num_(0), den_(1) {}
  Rat(long long n) : num_(n), den_(1) {}
  Rat(long long n, long long d) : num_(n), den_(d) { normalize(); }

  long long num() const { return num_; }
  long long den() const { return den_; }

  bool is_integer() const { return den_ == 1; }
  bool is_zero() const { return num_ == 0; }
  bool is_positive() const { return num_ > 0; }

  Rat operator-() const { return Rat(-num_, den_); }

  friend Rat operator+(const Rat& a, const Rat& b) {
    return make(i128(a.num_) * b.den_ + i128(b.num_) * a.den_,
                i128(a.den_) * b.den_);
  }
  friend Rat operator-(const Rat& a, const Rat& b) { return a + (-b); }
  friend Rat operator*(const Rat& a, const Rat& b) {
    return make(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
  }
  friend Rat operator/(const Rat& a, const Rat& b) {
    if (b.num_ == 0) throw std::domain_error("rational division by zero");
    return make(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
  }

  Rat& operator+=(const Rat& o) { *this = *this + o; return *this; }
  Rat& operator-=(const Rat& o) { *this = *this - o; return *this; }
  Rat& operator*=(const Rat& o) { *this = *this * o; return *this; }

  friend bool operator==(const Rat& a, const Rat& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
  friend bool operator<(const Rat& a, const Rat& b) {
    return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
  }
  friend bool operator>(const Rat& a, const Rat& b) { return b < a; }
  friend bool operator<=(const Rat& a, const Rat& b) { return !(b < a); }
  friend bool operator>=(const Rat& a, const Rat& b) { return !(a < b); }

  // Canonical form: "p/q", or just "p" when the denominator is 1.
  std::string str() const {
    std::string s = std::to_string(num_);
    if (den_ != 1) s += "/" + std::to_string(den_);
    return s;
  }

  static Rat parse(std::string_view s) {
    auto slash = s.find('/');
    try {
      if (slash == std::string_view::npos)
        return Rat(to_ll(s));
      return Rat(to_ll(s.substr(0, slash)), to_ll(s.substr(slash + 1)));
    } catch (const std::invalid_argument&) {
      throw std::invalid_argument("bad rational literal: '" + std::string(s) + "'");
    }
  }

private:
  using i128 = __int128;

  static long long to_ll(std::string_view s) {
    if (s.empty()) throw std::invalid_argument("empty");
    size_t pos = 0;
    long long v = std::stoll(std::string(s), &pos);
    if (pos != s.size()) throw std::invalid_argument("trailing junk");
    return v;
  }

  static Rat make(i128 n, i128 d) {
    if (d == 0) throw std::domain_error("rational with zero denominator");
    if (d < 0) { n = -n; d = -d; }
    i128 g = gcd128(n < 0 ? -n : n, d);
    if (g > 1) { n /= g; d /= g; }
    if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX)
      throw std::overflow_error("rational overflow");
    Rat r;
    r.num_ = static_cast<long long>(n);
    r.den_ = static_cast<long long>(d);
    return r;
  }

  static i128 gcd128(i128 a, i128 b) {
    while (b != 0) { i128 t = a % b; a = b; b = t; }
    return a == 0 ? 1 : a;
  }

  void normalize() { *this = make(num_, den_); }

  long long num_;
  long long den_;
};

inline std::string to_string(const Rat& r) { return r.str(); }

} // namespace mwcut
