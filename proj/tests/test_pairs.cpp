#include <doctest.h>

#include <cmath>

#include "twoproj/errors.hpp"
#include "twoproj/pairs.hpp"
#include "twoproj/psi.hpp"
#include "twoproj/randmat.hpp"
#include "util.hpp"

using namespace twoproj;
using testutil::extremal_partner;
using testutil::random_poly;

namespace {

ProjectionMatrix coordinate_projection(int n, int k) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 0; i < k; ++i) m(i, i) = 1.0;
  return ProjectionMatrix::checked(m);
}

// Rank-1 projection onto cos(phi) e_0 + sin(phi) e_{n-1}.
ProjectionMatrix tilted_line(int n, double phi) {
  Eigen::VectorXcd u = Eigen::VectorXcd::Zero(n);
  u(0) = std::cos(phi);
  u(n - 1) = std::sin(phi);
  return ProjectionMatrix::checked(u * u.adjoint());
}

}  // namespace

TEST_CASE("ProjectionMatrix validation") {
  CHECK(coordinate_projection(4, 2).rank == 2);
  Eigen::MatrixXcd bad = Eigen::MatrixXcd::Zero(3, 3);
  bad(0, 1) = 1.0;  // not Hermitian
  CHECK_THROWS_AS(ProjectionMatrix::checked(bad), domain_error);
  Eigen::MatrixXcd half = 0.5 * Eigen::MatrixXcd::Identity(3, 3);
  CHECK_THROWS_AS(ProjectionMatrix::checked(half), domain_error);
}

TEST_CASE("analyze: coinciding, orthogonal, and tilted pairs") {
  ProjectionMatrix P = coordinate_projection(6, 2);
  PairAnalysis same = analyze(P, P);
  CHECK(same.m00 == 2);
  CHECK(same.m11 == 4);
  CHECK(same.m01 == 0);
  CHECK(same.m10 == 0);
  CHECK(same.m == 0);

  Eigen::MatrixXcd q = Eigen::MatrixXcd::Zero(6, 6);
  q(2, 2) = q(3, 3) = q(4, 4) = 1.0;
  PairAnalysis orth = analyze(P, ProjectionMatrix::checked(q));
  CHECK(orth.m00 == 0);
  CHECK(orth.m01 == 2);
  CHECK(orth.m10 == 3);
  CHECK(orth.m11 == 1);
  CHECK(orth.m == 0);

  double phi = 0.7;
  PairAnalysis tilt = analyze(coordinate_projection(5, 1), tilted_line(5, phi));
  CHECK(tilt.m == 1);
  REQUIRE(tilt.reduced_cos2.size() == 1);
  CHECK(tilt.reduced_cos2[0] ==
        doctest::Approx(std::cos(phi) * std::cos(phi)).epsilon(1e-12));

  CHECK_THROWS_AS(analyze(coordinate_projection(4, 1), P), domain_error);
}

TEST_CASE("analyze: dimension bookkeeping on random pairs") {
  SeededRng rng(7);
  for (int it = 0; it < 60; ++it) {
    RandomStream s = rng.stream(it);
    int n = 2 + static_cast<int>(s.next_u64() % 11);
    int kp = 1 + static_cast<int>(s.next_u64() % n);
    int kq = 1 + static_cast<int>(s.next_u64() % n);
    ProjectionMatrix P = haar_projection(n, kp, s);
    ProjectionMatrix Q = haar_projection(n, kq, s);
    PairAnalysis a = analyze(P, Q);
    CHECK(a.m00 + a.m01 + a.m10 + a.m11 + 2 * a.m == n);
    CHECK(a.m00 + a.m01 + a.m == P.rank);
    CHECK(a.m00 + a.m10 + a.m == Q.rank);
    CHECK(static_cast<int>(a.reduced_cos2.size()) == a.m);
    for (double c2 : a.reduced_cos2) {
      CHECK(c2 > kAngleEps);
      CHECK(c2 < 1.0 - kAngleEps);
    }
    for (std::size_t i = 1; i < a.reduced_cos2.size(); ++i)
      CHECK(a.reduced_cos2[i - 1] >= a.reduced_cos2[i]);
  }
}

TEST_CASE("eval_matrix basics") {
  SeededRng rng(8);
  RandomStream s = rng.stream(0);
  ProjectionMatrix P = haar_projection(5, 2, s);
  ProjectionMatrix Q = haar_projection(5, 3, s);
  CHECK((eval_matrix(NcPoly::x(), P.mat, Q.mat) - P.mat).norm() == 0.0);
  CHECK((eval_matrix(NcPoly::parse("x*y - y*x"), P.mat, Q.mat) -
         (P.mat * Q.mat - Q.mat * P.mat))
            .norm() <= 1e-14);
  CHECK((eval_matrix(NcPoly::parse("x*y*x"), P.mat, Q.mat) -
         P.mat * Q.mat * P.mat)
            .norm() <= 1e-14);
  CHECK((eval_matrix(NcPoly::one(), P.mat, Q.mat) -
         Eigen::MatrixXcd::Identity(5, 5))
            .norm() == 0.0);
}

TEST_CASE("op_norm basics") {
  CHECK(op_norm(Eigen::MatrixXcd::Zero(4, 4)) == 0.0);

  SeededRng rng(9);
  RandomStream s = rng.stream(0);
  Eigen::MatrixXcd U = haar_frame(6, 6, s);  // unitary
  CHECK(op_norm(U) == doctest::Approx(1.0).epsilon(1e-12));

  Eigen::MatrixXcd D = Eigen::MatrixXcd::Zero(2, 2);
  D(0, 0) = 3.0;
  D(1, 1) = std::complex<double>(0.0, -4.0);
  CHECK(op_norm(D) == doctest::Approx(4.0).epsilon(1e-14));

  // Large-matrix path agrees with the small-matrix SVD path.
  RandomStream s2 = rng.stream(1);
  Eigen::MatrixXcd A(80, 80);
  for (int i = 0; i < 80; ++i)
    for (int k = 0; k < 80; ++k) A(i, k) = s2.complex_normal();
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A);
  CHECK(op_norm(A) == doctest::Approx(svd.singularValues()(0)).epsilon(1e-10));
}

TEST_CASE("norm_via_formula: commutator at a planted angle") {
  for (double phi : {0.3, 0.7, 1.2}) {
    ProjectionMatrix P = coordinate_projection(4, 1);
    ProjectionMatrix Q = tilted_line(4, phi);
    NcPoly f = NcPoly::parse("x*y - y*x");
    double v = norm_via_formula(f, P, Q);
    CHECK(v == doctest::Approx(std::sin(phi) * std::cos(phi)).epsilon(1e-12));
    CHECK(op_norm(eval_matrix(f, P.mat, Q.mat)) ==
          doctest::Approx(v).epsilon(1e-10));
  }
}

TEST_CASE("norm_via_formula: kernel polynomial on a commuting pair is 0") {
  ProjectionMatrix P = coordinate_projection(5, 2);
  ProjectionMatrix Q = coordinate_projection(5, 4);
  RandomStream s(17);
  for (int it = 0; it < 10; ++it) {
    NcPoly f = testutil::random_kernel_poly(s, 3);
    CHECK(norm_via_formula(f, P, Q) == 0.0);
    CHECK(op_norm(eval_matrix(f, P.mat, Q.mat)) <= 1e-12);
  }
}

TEST_CASE("dual-route equality on random instances") {
  SeededRng rng(10);
  for (int it = 0; it < 120; ++it) {
    RandomStream s = rng.stream(it);
    int n = 2 + static_cast<int>(s.next_u64() % 7);
    int kp = 1 + static_cast<int>(s.next_u64() % n);
    int kq = 1 + static_cast<int>(s.next_u64() % n);
    ProjectionMatrix P = haar_projection(n, kp, s);
    ProjectionMatrix Q = haar_projection(n, kq, s);
    NcPoly f = random_poly(s, 3, 4);
    double direct = op_norm(eval_matrix(f, P.mat, Q.mat));
    double formula = norm_via_formula(f, P, Q);
    CAPTURE(n);
    CAPTURE(f.str());
    CHECK(std::abs(direct - formula) <= 1e-8);
  }
}

TEST_CASE("universal bound and tightness") {
  SeededRng rng(11);
  for (int it = 0; it < 20; ++it) {
    RandomStream s = rng.stream(it);
    NcPoly f = random_poly(s, 3, 4);
    double bound = m_f(f).value;

    // Bound holds on random pairs.
    ProjectionMatrix P = haar_projection(6, 2, s);
    ProjectionMatrix Q = haar_projection(6, 3, s);
    CHECK(op_norm(eval_matrix(f, P.mat, Q.mat)) <= bound + 1e-8);

    // And is attained by the constructed partner.
    ProjectionMatrix fixed = coordinate_projection(6, 2);
    Eigen::MatrixXcd Qx = extremal_partner(f, fixed);
    double attained =
        op_norm(eval_matrix(f, fixed.mat, Qx));
    CAPTURE(f.str());
    CHECK(attained >= bound - 1e-6);
    CHECK(attained <= bound + 1e-8);
  }
}
