#include <doctest.h>

#include "twoproj/errors.hpp"
#include "twoproj/ncpoly.hpp"
#include "util.hpp"

using namespace twoproj;
using testutil::random_coeff;
using testutil::random_poly;

namespace {

Word xw(std::uint32_t len) { return {Word::Letter::X, len}; }
Word yw(std::uint32_t len) { return {Word::Letter::Y, len}; }

NcPoly commutator() { return NcPoly::parse("x*y - y*x"); }

NcPoly reconstruct(const Decomposition& d) {
  NcPoly xy = NcPoly::x() * NcPoly::y();
  NcPoly yx = NcPoly::y() * NcPoly::x();
  NcPoly r = NcPoly::constant(d.a0);
  for (std::size_t k = 0; k < d.f1.size(); ++k)
    r = r + xy.pow(static_cast<unsigned>(k + 1)).scaled(d.f1[k]);
  for (std::size_t k = 0; k < d.f2.size(); ++k)
    r = r + yx.pow(static_cast<unsigned>(k + 1)).scaled(d.f2[k]);
  for (std::size_t k = 0; k < d.f3.size(); ++k)
    r = r + (xy.pow(static_cast<unsigned>(k)) * NcPoly::x()).scaled(d.f3[k]);
  for (std::size_t k = 0; k < d.f4.size(); ++k)
    r = r + (yx.pow(static_cast<unsigned>(k)) * NcPoly::y()).scaled(d.f4[k]);
  return r;
}

// Product in C[z,w]/(z^2 - z, w^2 - w) on the basis {1, z, w, zw}.
AbelianImage reduced_product(const AbelianImage& a, const AbelianImage& b) {
  AbelianImage r;
  r.c1 = a.c1 * b.c1;
  r.cz = a.c1 * b.cz + a.cz * b.c1 + a.cz * b.cz;
  r.cw = a.c1 * b.cw + a.cw * b.c1 + a.cw * b.cw;
  r.czw = a.c1 * b.czw + a.czw * b.c1 + a.cz * b.cw + a.cw * b.cz +
          a.cz * b.czw + a.czw * b.cz + a.cw * b.czw + a.czw * b.cw +
          a.czw * b.czw;
  return r;
}

bool image_equal(const AbelianImage& a, const AbelianImage& b) {
  return a.c1 == b.c1 && a.cz == b.cz && a.cw == b.cw && a.czw == b.czw;
}

}  // namespace

TEST_CASE("word reduction and multiplication") {
  CHECK(xw(1) * xw(1) == xw(1));                // x*x = x
  CHECK(xw(2) * yw(2) == xw(3));                // xy * yx = xyx
  CHECK(Word::unit() * yw(3) == yw(3));
  CHECK(xw(2) * xw(1) == xw(3));                // xy * x = xyx
  CHECK(xw(1) * yw(2) == xw(3));                // x * yx = xyx
  CHECK(xw(3).last() == Word::Letter::X);
  CHECK(xw(2).last() == Word::Letter::Y);
}

TEST_CASE("parser: canonical examples") {
  NcPoly f = NcPoly::parse("x*y - y*x");
  CHECK(f.terms().size() == 2);
  CHECK(f.coeff(xw(2)) == Coeff::integer(1));
  CHECK(f.coeff(yw(2)) == Coeff::integer(-1));

  CHECK(NcPoly::parse("x*x") == NcPoly::x());

  NcPoly g = NcPoly::parse("(x*y)^2 - (y*x)^2");
  CHECK(g.coeff(xw(4)) == Coeff::integer(1));
  CHECK(g.coeff(yw(4)) == Coeff::integer(-1));
  CHECK(g.terms().size() == 2);
}

TEST_CASE("parser: numbers, i, signs, whitespace") {
  NcPoly f = NcPoly::parse(" 0.5*x + (-0.25)*y ");
  CHECK(f.coeff(xw(1)) == Coeff::rational(*Rational::make(1, 2)));
  CHECK(f.coeff(yw(1)) == Coeff::rational(*Rational::make(-1, 4)));

  NcPoly g = NcPoly::parse("-x + 2*i*y");
  CHECK(g.coeff(xw(1)) == Coeff::integer(-1));
  CHECK(g.coeff(yw(1)) == Coeff::rational(Rational{}, Rational(2)));

  CHECK(NcPoly::parse("i*i") == NcPoly::constant(Coeff::integer(-1)));
  CHECK(NcPoly::parse("3") == NcPoly::constant(Coeff::integer(3)));
  CHECK(NcPoly::parse("x^3") == NcPoly::x());
  CHECK(NcPoly::parse("(x*y)^1") == NcPoly::x() * NcPoly::y());
}

TEST_CASE("parser: errors carry a position") {
  CHECK_THROWS_AS(NcPoly::parse("x*z"), parse_error);
  CHECK_THROWS_AS(NcPoly::parse("x +"), parse_error);
  CHECK_THROWS_AS(NcPoly::parse("x^0"), parse_error);
  CHECK_THROWS_AS(NcPoly::parse("(x*y"), parse_error);
  CHECK_THROWS_AS(NcPoly::parse("x y"), parse_error);
  CHECK_THROWS_AS(NcPoly::parse(""), parse_error);
  try {
    NcPoly::parse("x * foo");
  } catch (const parse_error& e) {
    CHECK(e.position() == 4);
  }
}

TEST_CASE("multiplication: unit, idempotents, associativity") {
  NcPoly one = NcPoly::one();
  NcPoly f = NcPoly::parse("x*y - 2*y + (1+i)*x");
  CHECK(one * f == f);
  CHECK(f * one == f);
  CHECK(NcPoly::x() * NcPoly::x() == NcPoly::x());
  CHECK(NcPoly::parse("x*y") * NcPoly::parse("y*x") == NcPoly::parse("x*y*x"));

  RandomStream rng(11);
  for (int it = 0; it < 120; ++it) {
    NcPoly a = random_poly(rng, 4, 3);
    NcPoly b = random_poly(rng, 4, 3);
    NcPoly c = random_poly(rng, 4, 3);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a + b) * c == a * c + b * c);
  }
}

TEST_CASE("star involution") {
  NcPoly f = commutator();
  CHECK(f.star() == NcPoly::parse("y*x - x*y"));
  CHECK(NcPoly::parse("i*x").star() == NcPoly::parse("(0-i)*x"));

  RandomStream rng(22);
  for (int it = 0; it < 100; ++it) {
    NcPoly a = random_poly(rng, 4, 3);
    NcPoly b = random_poly(rng, 4, 3);
    CHECK(a.star().star() == a);
    CHECK((a * b).star() == b.star() * a.star());
  }
}

TEST_CASE("decompose: basis examples and reconstruction") {
  Decomposition d = commutator().decompose();
  REQUIRE(d.f1.size() == 1);
  REQUIRE(d.f2.size() == 1);
  CHECK(d.f1[0] == Coeff::integer(1));
  CHECK(d.f2[0] == Coeff::integer(-1));
  CHECK(d.f3.empty());
  CHECK(d.f4.empty());
  CHECK(d.a0.is_zero());

  Decomposition dx = NcPoly::x().decompose();
  REQUIRE(dx.f3.size() == 1);
  CHECK(dx.f3[0] == Coeff::integer(1));
  CHECK(dx.f1.empty());

  Decomposition dxyx = NcPoly::parse("x*y*x").decompose();
  REQUIRE(dxyx.f3.size() == 2);
  CHECK(dxyx.f3[0].is_zero());
  CHECK(dxyx.f3[1] == Coeff::integer(1));

  RandomStream rng(33);
  for (int it = 0; it < 100; ++it) {
    NcPoly f = random_poly(rng, 6, 5);
    CHECK(reconstruct(f.decompose()) == f);
  }
}

TEST_CASE("abelianize: examples and multiplicativity") {
  AbelianImage a = commutator().abelianize();
  CHECK(a.c1.is_zero());
  CHECK(a.cz.is_zero());
  CHECK(a.cw.is_zero());
  CHECK(a.czw.is_zero());

  AbelianImage ax = NcPoly::x().abelianize();
  CHECK(ax.cz == Coeff::integer(1));
  CHECK(ax.c1.is_zero());
  CHECK(ax.cw.is_zero());
  CHECK(ax.czw.is_zero());

  AbelianImage axyx = NcPoly::parse("x*y*x").abelianize();
  CHECK(axyx.czw == Coeff::integer(1));
  CHECK(axyx.cz.is_zero());

  RandomStream rng(44);
  for (int it = 0; it < 120; ++it) {
    NcPoly f = random_poly(rng, 4, 3);
    NcPoly g = random_poly(rng, 4, 3);
    CHECK(image_equal((f * g).abelianize(),
                      reduced_product(f.abelianize(), g.abelianize())));
  }
}

TEST_CASE("kernel membership") {
  CHECK(commutator().in_ker_T());
  CHECK_FALSE(NcPoly::x().in_ker_T());
  CHECK(NcPoly::parse("(x*y)^2 - (y*x)^2").in_ker_T());

  RandomStream rng(55);
  for (int it = 0; it < 60; ++it) {
    NcPoly f = testutil::random_kernel_poly(rng, 3);
    CAPTURE(f.str());
    CHECK(f.in_ker_T());
    AbelianImage a = f.abelianize();
    CHECK((a.c1.is_zero() && a.cz.is_zero() && a.cw.is_zero() &&
           a.czw.is_zero()));
  }
}

TEST_CASE("exactness tracking") {
  CHECK(NcPoly::parse("0.125*x + 3*y").exact());
  NcPoly f = NcPoly::monomial(Word::x(), Coeff::inexact({0.1, 0.0}));
  CHECK_FALSE(f.exact());
  CHECK_FALSE((f * NcPoly::y()).exact());
  // Exact arithmetic on decimal literals stays exact through products.
  CHECK(NcPoly::parse("(0.1*x*y)^4").exact());
}

TEST_CASE("canonical printing round-trips") {
  const char* inputs[] = {
      "x*y - y*x",
      "(x*y)^2 - (y*x)^2",
      "1 + x - y",
      "0.5*x*y + (0.25-2*i)*y*x - i*(x*y)^3*x",
      "(x+y)^3",
      "2*i*y*x*y",
      "0",
      "-x",
  };
  for (const char* s : inputs) {
    NcPoly f = NcPoly::parse(s);
    std::string printed = f.str();
    CAPTURE(printed);
    NcPoly g = NcPoly::parse(printed);
    CHECK(g == f);
    CHECK(g.str() == printed);
  }

  RandomStream rng(66);
  for (int it = 0; it < 150; ++it) {
    NcPoly f = random_poly(rng, 5, 5);
    std::string printed = f.str();
    CAPTURE(printed);
    NcPoly g = NcPoly::parse(printed);
    CHECK(g == f);
    CHECK(g.str() == printed);
  }
}

TEST_CASE("printing uses the monomial-family notation") {
  CHECK(NcPoly::parse("x*y*x*y").str() == "(x*y)^2");
  CHECK(NcPoly::parse("x*y*x").str() == "(x*y)*x");
  CHECK(NcPoly::parse("y*x*y*x*y").str() == "(y*x)^2*y");
  CHECK(NcPoly::zero().str() == "0");
  // Terms sorted by (length, first letter).
  CHECK(NcPoly::parse("y*x + x + 1 + x*y").str() == "1 + x + x*y + y*x");
}
