#ifndef TWOPROJ_NCPOLY_HPP
#define TWOPROJ_NCPOLY_HPP

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "twoproj/rational.hpp"

namespace twoproj {

/// Complex scalar that stays exact (rational real/imaginary parts) as long as
/// it can. Exact values arising from parsed literals survive ring operations
/// unless a 64-bit overflow forces demotion to double. Zero tests on exact
/// values are exact, which is what membership tests in the augmentation-style
/// kernel need.
class Coeff {
 public:
  Coeff() : exact_(true) {}

  static Coeff integer(std::int64_t n) {
    Coeff c;
    c.re_ = Rational(n);
    return c;
  }
  static Coeff rational(Rational re, Rational im = Rational{}) {
    Coeff c;
    c.re_ = re;
    c.im_ = im;
    return c;
  }
  static Coeff imaginary_unit() { return rational(Rational{}, Rational(1)); }
  static Coeff inexact(std::complex<double> v) {
    Coeff c;
    c.exact_ = false;
    c.val_ = v;
    return c;
  }

  bool exact() const { return exact_; }

  std::complex<double> value() const {
    if (exact_) return {re_.to_double(), im_.to_double()};
    return val_;
  }

  bool is_zero() const {
    if (exact_) return re_.is_zero() && im_.is_zero();
    return val_ == std::complex<double>(0.0, 0.0);
  }

  Coeff operator+(const Coeff& o) const;
  Coeff operator-(const Coeff& o) const;
  Coeff operator*(const Coeff& o) const;
  Coeff operator-() const;
  Coeff conj() const;

  bool operator==(const Coeff& o) const {
    if (exact_ && o.exact_) return re_ == o.re_ && im_ == o.im_;
    return value() == o.value();
  }

  /// Exact parts, valid only when exact().
  const Rational& exact_re() const { return re_; }
  const Rational& exact_im() const { return im_; }

 private:
  bool exact_;
  Rational re_, im_;           // used when exact_
  std::complex<double> val_{}; // used otherwise
};

/// A reduced word in two idempotent letters. Since x^2 = x and y^2 = y, a
/// reduced word strictly alternates, so it is determined by its first letter
/// and its length. Length 0 is the unit monomial.
struct Word {
  enum class Letter : std::uint8_t { X = 0, Y = 1 };

  Letter first = Letter::X;
  std::uint32_t length = 0;

  static Word unit() { return {}; }
  static Word x() { return {Letter::X, 1}; }
  static Word y() { return {Letter::Y, 1}; }

  bool is_unit() const { return length == 0; }
  Letter last() const {
    return (length % 2 == 1) ? first : other(first);
  }
  static Letter other(Letter l) {
    return l == Letter::X ? Letter::Y : Letter::X;
  }

  /// Reduced concatenation: adjacent equal letters merge (idempotency).
  Word operator*(const Word& o) const {
    if (is_unit()) return o;
    if (o.is_unit()) return *this;
    if (last() == o.first) return {first, length + o.length - 1};
    return {first, length + o.length};
  }

  // Canonical term order: by length, then x-words before y-words. The unit
  // word's first letter is immaterial.
  friend bool operator<(const Word& a, const Word& b) {
    if (a.length != b.length) return a.length < b.length;
    if (a.length == 0) return false;
    return a.first < b.first;
  }
  friend bool operator==(const Word& a, const Word& b) {
    return a.length == b.length && (a.length == 0 || a.first == b.first);
  }
};

/// Coefficient list of a univariate polynomial, ascending degree.
using CoeffPoly = std::vector<Coeff>;

/// The unique expansion of an element over the monomial basis
/// 1, (xy)^{k+1}, (yx)^{k+1}, (xy)^k x, (yx)^k y:
///   a0 + f1(xy)xy + f2(yx)yx + f3(xy)x + f4(yx)y.
struct Decomposition {
  Coeff a0;
  CoeffPoly f1, f2, f3, f4;
};

/// Image in the commutative quotient C[z,w]/(z^2-z, w^2-w), written on the
/// basis {1, z, w, zw}.
struct AbelianImage {
  Coeff c1, cz, cw, czw;
};

/// Polynomial in two idempotent non-commuting variables, stored as a finite
/// coefficient map over reduced words. Immutable value type; all operations
/// return new values with fully reduced words and no explicit zero terms.
class NcPoly {
 public:
  NcPoly() = default;

  static NcPoly zero() { return {}; }
  static NcPoly one() { return monomial(Word::unit(), Coeff::integer(1)); }
  static NcPoly x() { return monomial(Word::x(), Coeff::integer(1)); }
  static NcPoly y() { return monomial(Word::y(), Coeff::integer(1)); }
  static NcPoly constant(Coeff c) { return monomial(Word::unit(), c); }
  static NcPoly monomial(Word w, Coeff c);

  /// Parses the polynomial mini-language (see grammar in the docs). Throws
  /// parse_error on malformed input.
  static NcPoly parse(std::string_view text);

  const std::map<Word, Coeff>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t degree() const {
    return terms_.empty() ? 0 : terms_.rbegin()->first.length;
  }
  /// True when every coefficient is carried exactly.
  bool exact() const;

  Coeff coeff(const Word& w) const;

  NcPoly operator+(const NcPoly& o) const;
  NcPoly operator-(const NcPoly& o) const;
  NcPoly operator*(const NcPoly& o) const;
  NcPoly operator-() const;
  NcPoly scaled(const Coeff& c) const;
  NcPoly pow(unsigned k) const;

  /// Star involution: words reversed, coefficients conjugated.
  NcPoly star() const;

  Decomposition decompose() const;
  AbelianImage abelianize() const;

  /// True iff the abelianized image vanishes identically. Decided with exact
  /// coefficient arithmetic whenever the polynomial is exact.
  bool in_ker_T() const;

  /// Canonical printing: terms ordered by (word length, first letter), words
  /// in power notation over x*y / y*x, coefficients in rectangular form.
  /// Printing a parsed polynomial and reparsing reproduces it exactly.
  std::string str() const;

  bool operator==(const NcPoly& o) const { return terms_ == o.terms_; }

 private:
  void add_term(const Word& w, const Coeff& c);

  std::map<Word, Coeff> terms_;
};

std::string to_string(const Word& w);

}  // namespace twoproj

#endif
