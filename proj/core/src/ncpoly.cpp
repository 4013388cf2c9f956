#include "twoproj/ncpoly.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "twoproj/errors.hpp"

namespace twoproj {

// ---------------------------------------------------------------------------
// Coeff arithmetic: exact while possible, demoted to double on overflow.

Coeff Coeff::operator+(const Coeff& o) const {
  if (exact_ && o.exact_) {
    auto re = re_.add(o.re_);
    auto im = im_.add(o.im_);
    if (re && im) return rational(*re, *im);
  }
  return inexact(value() + o.value());
}

Coeff Coeff::operator-(const Coeff& o) const { return *this + (-o); }

Coeff Coeff::operator*(const Coeff& o) const {
  if (exact_ && o.exact_) {
    auto ac = re_.mul(o.re_);
    auto bd = im_.mul(o.im_);
    auto ad = re_.mul(o.im_);
    auto bc = im_.mul(o.re_);
    if (ac && bd && ad && bc) {
      auto re = ac->sub(*bd);
      auto im = ad->add(*bc);
      if (re && im) return rational(*re, *im);
    }
  }
  return inexact(value() * o.value());
}

Coeff Coeff::operator-() const {
  if (exact_) return rational(re_.negated(), im_.negated());
  return inexact(-val_);
}

Coeff Coeff::conj() const {
  if (exact_) return rational(re_, im_.negated());
  return inexact(std::conj(val_));
}

// ---------------------------------------------------------------------------
// NcPoly ring operations.

NcPoly NcPoly::monomial(Word w, Coeff c) {
  NcPoly p;
  if (!c.is_zero()) p.terms_.emplace(w, c);
  return p;
}

void NcPoly::add_term(const Word& w, const Coeff& c) {
  auto it = terms_.find(w);
  if (it == terms_.end()) {
    if (!c.is_zero()) terms_.emplace(w, c);
    return;
  }
  Coeff sum = it->second + c;
  if (sum.is_zero())
    terms_.erase(it);
  else
    it->second = sum;
}

bool NcPoly::exact() const {
  for (const auto& [w, c] : terms_)
    if (!c.exact()) return false;
  return true;
}

Coeff NcPoly::coeff(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? Coeff{} : it->second;
}

NcPoly NcPoly::operator+(const NcPoly& o) const {
  NcPoly r = *this;
  for (const auto& [w, c] : o.terms_) r.add_term(w, c);
  return r;
}

NcPoly NcPoly::operator-(const NcPoly& o) const { return *this + (-o); }

NcPoly NcPoly::operator-() const {
  NcPoly r;
  for (const auto& [w, c] : terms_) r.terms_.emplace(w, -c);
  return r;
}

NcPoly NcPoly::scaled(const Coeff& s) const {
  NcPoly r;
  if (s.is_zero()) return r;
  for (const auto& [w, c] : terms_) {
    Coeff p = c * s;
    if (!p.is_zero()) r.terms_.emplace(w, p);
  }
  return r;
}

NcPoly NcPoly::operator*(const NcPoly& o) const {
  NcPoly r;
  for (const auto& [wa, ca] : terms_)
    for (const auto& [wb, cb] : o.terms_) r.add_term(wa * wb, ca * cb);
  return r;
}

NcPoly NcPoly::pow(unsigned k) const {
  NcPoly r = NcPoly::one();
  for (unsigned i = 0; i < k; ++i) r = r * (*this);
  return r;
}

NcPoly NcPoly::star() const {
  NcPoly r;
  for (const auto& [w, c] : terms_) {
    Word rev = w;
    if (w.length > 0) rev.first = w.last();
    r.add_term(rev, c.conj());
  }
  return r;
}

// ---------------------------------------------------------------------------
// Basis expansion and abelianization.

Decomposition NcPoly::decompose() const {
  Decomposition d;
  auto put = [](CoeffPoly& p, std::size_t k, const Coeff& c) {
    if (p.size() <= k) p.resize(k + 1);
    p[k] = c;
  };
  for (const auto& [w, c] : terms_) {
    if (w.is_unit()) {
      d.a0 = c;
    } else if (w.first == Word::Letter::X) {
      if (w.length % 2 == 0)
        put(d.f1, w.length / 2 - 1, c);  // (xy)^{k+1}
      else
        put(d.f3, (w.length - 1) / 2, c);  // (xy)^k x
    } else {
      if (w.length % 2 == 0)
        put(d.f2, w.length / 2 - 1, c);  // (yx)^{k+1}
      else
        put(d.f4, (w.length - 1) / 2, c);  // (yx)^k y
    }
  }
  return d;
}

namespace {

Coeff poly_sum(const CoeffPoly& p, std::size_t from = 0) {
  Coeff s;
  for (std::size_t k = from; k < p.size(); ++k) s = s + p[k];
  return s;
}

Coeff poly_at0(const CoeffPoly& p) { return p.empty() ? Coeff{} : p[0]; }

}  // namespace

AbelianImage NcPoly::abelianize() const {
  Decomposition d = decompose();
  AbelianImage a;
  a.c1 = d.a0;
  a.cz = poly_at0(d.f3);
  a.cw = poly_at0(d.f4);
  // f1(1) + f2(1) + (f3(1) - f3(0)) + (f4(1) - f4(0))
  a.czw = poly_sum(d.f1) + poly_sum(d.f2) + poly_sum(d.f3, 1) + poly_sum(d.f4, 1);
  return a;
}

bool NcPoly::in_ker_T() const {
  AbelianImage a = abelianize();
  return a.c1.is_zero() && a.cz.is_zero() && a.cw.is_zero() && a.czw.is_zero();
}

// ---------------------------------------------------------------------------
// Parsing.

namespace {

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  NcPoly run() {
    NcPoly p = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    return p;
  }

 private:
  NcPoly expr() {
    skip_ws();
    bool neg = false;
    if (peek() == '+' || peek() == '-') neg = (take() == '-');
    NcPoly p = term();
    if (neg) p = -p;
    for (;;) {
      skip_ws();
      char c = peek();
      if (c != '+' && c != '-') break;
      take();
      NcPoly t = term();
      p = (c == '+') ? p + t : p - t;
    }
    return p;
  }

  NcPoly term() {
    NcPoly p = factor();
    for (;;) {
      skip_ws();
      if (peek() != '*') break;
      take();
      p = p * factor();
    }
    return p;
  }

  NcPoly factor() {
    NcPoly b = base();
    skip_ws();
    if (peek() == '^') {
      take();
      skip_ws();
      std::size_t at = pos_;
      unsigned long e = parse_uint();
      if (e == 0) fail("exponent must be a positive integer", at);
      return b.pow(static_cast<unsigned>(e));
    }
    return b;
  }

  NcPoly base() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = peek();
    if (c == 'x') {
      take();
      check_ident_end();
      return NcPoly::x();
    }
    if (c == 'y') {
      take();
      check_ident_end();
      return NcPoly::y();
    }
    if (c == 'i') {
      take();
      check_ident_end();
      return NcPoly::constant(Coeff::imaginary_unit());
    }
    if (c == '(') {
      take();
      NcPoly p = expr();
      skip_ws();
      if (peek() != ')') fail("expected ')'");
      take();
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.')
      return NcPoly::constant(number());
    if (std::isalpha(static_cast<unsigned char>(c)))
      fail("unknown identifier (only x, y, i allowed)");
    fail("unexpected character");
  }

  void check_ident_end() {
    if (pos_ < s_.size() &&
        std::isalnum(static_cast<unsigned char>(s_[pos_])))
      fail("unknown identifier (only x, y, i allowed)", pos_ - 1);
  }

  Coeff number() {
    std::size_t start = pos_;
    unsigned __int128 mant = 0;
    int frac = 0;
    bool seen_digit = false, seen_dot = false, overflow = false;
    while (pos_ < s_.size()) {
      char c = s_[pos_];
      if (std::isdigit(static_cast<unsigned char>(c))) {
        seen_digit = true;
        if (mant > (static_cast<unsigned __int128>(INT64_MAX) - 9) / 10)
          overflow = true;
        else
          mant = mant * 10 + static_cast<unsigned>(c - '0');
        if (seen_dot) ++frac;
        ++pos_;
      } else if (c == '.' && !seen_dot) {
        seen_dot = true;
        ++pos_;
      } else {
        break;
      }
    }
    if (!seen_digit) fail("malformed number", start);
    if (!overflow && frac <= 18) {
      std::int64_t den = 1;
      for (int k = 0; k < frac; ++k) den *= 10;
      auto r = Rational::make(static_cast<std::int64_t>(mant), den);
      if (r) return Coeff::rational(*r);
    }
    std::string lit(s_.substr(start, pos_ - start));
    return Coeff::inexact(std::complex<double>(std::strtod(lit.c_str(), nullptr), 0.0));
  }

  unsigned long parse_uint() {
    std::size_t start = pos_;
    unsigned long v = 0;
    bool any = false;
    while (pos_ < s_.size() &&
           std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      any = true;
      v = v * 10 + static_cast<unsigned long>(s_[pos_] - '0');
      if (v > 1u << 20) fail("exponent too large", start);
      ++pos_;
    }
    if (!any) fail("expected integer exponent", start);
    return v;
  }

  void skip_ws() {
    while (pos_ < s_.size() &&
           std::isspace(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
  }
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  char take() { return s_[pos_++]; }

  [[noreturn]] void fail(const std::string& msg) { fail(msg, pos_); }
  [[noreturn]] void fail(const std::string& msg, std::size_t at) {
    throw parse_error(msg, at);
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

NcPoly NcPoly::parse(std::string_view text) { return Parser(text).run(); }

// ---------------------------------------------------------------------------
// Canonical printing.

namespace {

// Renders a double as a plain decimal literal (the grammar has no exponent
// notation).
std::string plain_decimal(double v) {
  char buf[512];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s(buf);
  if (s.find('e') == std::string::npos && s.find('E') == std::string::npos)
    return s;
  int exp10 = static_cast<int>(std::floor(std::log10(std::fabs(v))));
  int prec = std::max(0, 17 - exp10);
  std::snprintf(buf, sizeof buf, "%.*f", std::min(prec, 400), v);
  s = buf;
  if (s.find('.') != std::string::npos) {
    while (s.back() == '0') s.pop_back();
    if (s.back() == '.') s.pop_back();
  }
  return s;
}

std::string u128_str(unsigned __int128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v > 0) {
    s.insert(s.begin(), static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  return s;
}

// Exact decimal string for |r| when the denominator is 2^a 5^b; empty string
// if not representable that way within 128 bits.
std::string rational_abs_decimal(const Rational& r) {
  unsigned __int128 num =
      r.num() < 0 ? static_cast<unsigned __int128>(-(r.num() + 1)) + 1
                  : static_cast<unsigned __int128>(r.num());
  std::int64_t den = r.den();
  int a = 0, b = 0;
  while (den % 2 == 0) {
    den /= 2;
    ++a;
  }
  while (den % 5 == 0) {
    den /= 5;
    ++b;
  }
  if (den != 1) return {};
  int e = std::max(a, b);
  if (e > 30) return {};
  unsigned __int128 scaled = num;
  for (int k = 0; k < e - a; ++k) {
    if (scaled > (~static_cast<unsigned __int128>(0)) / 2) return {};
    scaled *= 2;
  }
  for (int k = 0; k < e - b; ++k) {
    if (scaled > (~static_cast<unsigned __int128>(0)) / 5) return {};
    scaled *= 5;
  }
  std::string digits = u128_str(scaled);
  if (e == 0) return digits;
  if (digits.size() <= static_cast<std::size_t>(e))
    digits.insert(0, std::string(e + 1 - digits.size(), '0'));
  digits.insert(digits.size() - e, ".");
  while (digits.back() == '0') digits.pop_back();
  if (digits.back() == '.') digits.pop_back();
  return digits;
}

// |value| of one real component as a literal.
std::string magnitude_str(const Coeff& c, bool imaginary_part) {
  if (c.exact()) {
    const Rational& r = imaginary_part ? c.exact_im() : c.exact_re();
    std::string s = rational_abs_decimal(r);
    if (!s.empty()) return s;
    return plain_decimal(std::fabs(r.to_double()));
  }
  double v = imaginary_part ? c.value().imag() : c.value().real();
  return plain_decimal(std::fabs(v));
}

bool component_zero(const Coeff& c, bool imaginary_part) {
  if (c.exact())
    return (imaginary_part ? c.exact_im() : c.exact_re()).is_zero();
  return (imaginary_part ? c.value().imag() : c.value().real()) == 0.0;
}

bool component_negative(const Coeff& c, bool imaginary_part) {
  if (c.exact())
    return (imaginary_part ? c.exact_im() : c.exact_re()).num() < 0;
  return (imaginary_part ? c.value().imag() : c.value().real()) < 0.0;
}

bool component_is_one(const Coeff& c, bool imaginary_part) {
  if (c.exact()) {
    const Rational& r = imaginary_part ? c.exact_im() : c.exact_re();
    return r.den() == 1 && (r.num() == 1 || r.num() == -1);
  }
  double v = imaginary_part ? c.value().imag() : c.value().real();
  return v == 1.0 || v == -1.0;
}

}  // namespace

std::string to_string(const Word& w) {
  if (w.is_unit()) return "1";
  const bool xfirst = w.first == Word::Letter::X;
  const std::string pair = xfirst ? "x*y" : "y*x";
  const std::string tail = xfirst ? "x" : "y";
  if (w.length == 1) return tail;
  std::uint32_t pairs = w.length / 2;
  bool odd = (w.length % 2 == 1);
  std::string s;
  if (pairs == 1 && !odd) return pair;
  s = "(" + pair + ")";
  if (pairs > 1) s += "^" + std::to_string(pairs);
  if (odd) s += "*" + tail;
  return s;
}

std::string NcPoly::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first_term = true;
  for (const auto& [w, c] : terms_) {
    const bool re0 = component_zero(c, false);
    const bool im0 = component_zero(c, true);
    std::string body;
    bool neg = false;
    if (im0) {  // real coefficient
      neg = component_negative(c, false);
      std::string mag = magnitude_str(c, false);
      if (w.is_unit())
        body = mag;
      else
        body = (mag == "1") ? to_string(w) : mag + "*" + to_string(w);
    } else if (re0) {  // purely imaginary
      neg = component_negative(c, true);
      body = component_is_one(c, true) ? "i" : magnitude_str(c, true) + "*i";
      if (!w.is_unit()) body += "*" + to_string(w);
    } else {  // general complex: parenthesized rectangular form
      std::string re = (component_negative(c, false) ? "-" : "") +
                       magnitude_str(c, false);
      std::string im = component_negative(c, true) ? "-" : "+";
      im += component_is_one(c, true) ? "i" : magnitude_str(c, true) + "*i";
      body = "(" + re + im + ")";
      if (!w.is_unit()) body += "*" + to_string(w);
    }
    if (first_term) {
      out += neg ? "-" + body : body;
      first_term = false;
    } else {
      out += neg ? " - " : " + ";
      out += body;
    }
  }
  return out;
}

}  // namespace twoproj
