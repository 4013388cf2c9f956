#ifndef TWOPROJ_RATIONAL_HPP
#define TWOPROJ_RATIONAL_HPP

#include <cstdint>
#include <numeric>
#include <optional>

namespace twoproj {

/// Exact rational with 64-bit numerator/denominator. Arithmetic is checked:
/// results that do not fit report failure instead of wrapping, so callers can
/// demote to floating point. Invariant: den > 0, gcd(|num|, den) = 1.
class Rational {
 public:
  constexpr Rational() = default;
  constexpr explicit Rational(std::int64_t n) : num_(n) {}

  static std::optional<Rational> make(std::int64_t num, std::int64_t den) {
    if (den == 0) return std::nullopt;
    return reduce(static_cast<__int128>(num), static_cast<__int128>(den));
  }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }

  double to_double() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

  Rational negated() const {
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }

  std::optional<Rational> add(const Rational& o) const {
    __int128 n = static_cast<__int128>(num_) * o.den_ +
                 static_cast<__int128>(o.num_) * den_;
    __int128 d = static_cast<__int128>(den_) * o.den_;
    return reduce(n, d);
  }

  std::optional<Rational> sub(const Rational& o) const { return add(o.negated()); }

  std::optional<Rational> mul(const Rational& o) const {
    __int128 n = static_cast<__int128>(num_) * o.num_;
    __int128 d = static_cast<__int128>(den_) * o.den_;
    return reduce(n, d);
  }

  bool operator==(const Rational& o) const {
    return num_ == o.num_ && den_ == o.den_;
  }

 private:
  static std::optional<Rational> reduce(__int128 n, __int128 d) {
    if (d < 0) {
      n = -n;
      d = -d;
    }
    if (n == 0) return Rational{};
    __int128 g = gcd128(n < 0 ? -n : n, d);
    n /= g;
    d /= g;
    constexpr __int128 lo = INT64_MIN, hi = INT64_MAX;
    if (n < lo || n > hi || d > hi) return std::nullopt;
    Rational r;
    r.num_ = static_cast<std::int64_t>(n);
    r.den_ = static_cast<std::int64_t>(d);
    return r;
  }

  static __int128 gcd128(__int128 a, __int128 b) {
    while (b != 0) {
      __int128 t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace twoproj

#endif
