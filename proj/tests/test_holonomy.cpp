#include "doctest.h"

#include "core/holonomy.hpp"

using namespace dwb;
using namespace std::complex_literals;

namespace {

double mat_err(const CMat& a, const CMat& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("matrix exponential against closed forms") {
  // nilpotent
  CMat N = CMat::Zero(2, 2);
  N(0, 1) = 1.0;
  CMat eN = expm(N);
  CMat want = CMat::Identity(2, 2);
  want(0, 1) = 1.0;
  CHECK(mat_err(eN, want) < 1e-14);
  // rotation generator
  double th = 1.234;
  CMat R = CMat::Zero(2, 2);
  R(0, 1) = -th;
  R(1, 0) = th;
  CMat eR = expm(R);
  CHECK(std::abs(eR(0, 0) - std::cos(th)) < 1e-13);
  CHECK(std::abs(eR(1, 0) - std::sin(th)) < 1e-13);
  // diagonal with large entries exercises scaling and squaring
  CMat D = CMat::Zero(2, 2);
  D(0, 0) = 30.0;
  D(1, 1) = -3.0 + 2.0i;
  CMat eD = expm(D);
  CHECK(std::abs(eD(0, 0) - std::exp(30.0)) / std::exp(30.0) < 1e-12);
  CHECK(std::abs(eD(1, 1) - std::exp(std::complex<double>(-3.0, 2.0))) < 1e-13);
  CHECK(std::abs(eD(0, 1)) == 0.0);
}

TEST_CASE("monodromy composes right to left") {
  CMat A = CMat::Zero(2, 2), B = CMat::Zero(2, 2);
  A(0, 1) = 1.0;  // nilpotent up
  B(1, 0) = 1.0;  // nilpotent down: the two do not commute
  LoopConnection c;
  c.seg = {A, B};
  c.len = {1.0, 1.0};
  CMat g = monodromy(c);
  CHECK(mat_err(g, expm(B) * expm(A)) < 1e-13);
  CHECK(mat_err(g, expm(A) * expm(B)) > 1e-2);
}

TEST_CASE("connection validation") {
  LoopConnection c;
  c.seg = {CMat::Zero(2, 2)};
  c.len = {0.0};
  CHECK_THROWS(c.validate());
  c.len = {1.0};
  c.seg.push_back(CMat::Zero(3, 3));
  c.len.push_back(1.0);
  CHECK_THROWS(c.validate());
}

TEST_CASE("refinement is exact for piecewise-constant data") {
  auto rep = algebra_rep("sl2");
  LoopConnection c;
  c.seg = {0.4 * rep[0] + 0.3 * rep[1], 0.2 * rep[2] - 0.5 * rep[0]};
  c.len = {0.6, 0.4};
  CHECK(mat_err(monodromy(c), monodromy(refine(c, 64))) < 1e-11);
  CHECK(refine(c, 8).seg.size() == 16);
  CHECK(refine(c, 8).total_length() == doctest::Approx(c.total_length()));
}

TEST_CASE("characteristic polynomial by Faddeev-LeVerrier") {
  CMat m(2, 2);
  m << 1.0, 2.0, 3.0, 4.0;
  auto cp = char_poly(m);  // lambda^2 - 5 lambda - 2
  REQUIRE(cp.size() == 3);
  CHECK(std::abs(cp[0] - 1.0) < 1e-14);
  CHECK(std::abs(cp[1] + 5.0) < 1e-13);
  CHECK(std::abs(cp[2] + 2.0) < 1e-13);
}

TEST_CASE("gauge transformations conjugate the monodromy") {
  auto rep = algebra_rep("sl2");
  LoopConnection c;
  c.seg = {0.3 * rep[0] + 0.2 * rep[1], 0.4 * rep[2]};
  c.len = {0.5, 0.5};
  CMat h(2, 2);
  h << 1.0, 0.5i, -0.25, 2.0;
  CMat lhs = monodromy(gauge_transform(c, h));
  CMat rhs = h * monodromy(c) * h.inverse();
  CHECK(mat_err(lhs, rhs) < 1e-12);
  // invariants agree even closer
  auto c1 = char_poly(lhs), c2 = char_poly(monodromy(c));
  for (size_t i = 0; i < c1.size(); ++i) CHECK(std::abs(c1[i] - c2[i]) < 1e-12);
}

TEST_CASE("abelian loops have exact Wilson phases") {
  for (int n : {1, 2, 5}) {
    double flux = 0.7;
    auto w = wilson_loop(u1_loop(flux, n));
    CHECK(std::abs(w - std::exp(std::complex<double>(0, n * flux))) < 1e-12);
  }
}

TEST_CASE("algebra representations bracket-match the structure constants") {
  auto rep = algebra_rep("sl2");
  REQUIRE(rep.size() == 3);
  // [H, E] = 2E in the fundamental
  CHECK(mat_err(rep[0] * rep[1] - rep[1] * rep[0], 2.0 * rep[1]) < 1e-14);
  CHECK(mat_err(rep[1] * rep[2] - rep[2] * rep[1], rep[0]) < 1e-14);
  auto hei = algebra_rep("heisenberg");
  REQUIRE(hei.size() == 3);
  CHECK(mat_err(hei[0] * hei[1] - hei[1] * hei[0], hei[2]) < 1e-14);
  CHECK(algebra_rep("abelian3").size() == 3);
  CHECK(algebra_rep("u1")[0](0, 0) == std::complex<double>(0, 1));
}

TEST_CASE("midpoint sampling converges at second order") {
  auto rep = algebra_rep("sl2");
  std::function<CMat(double)> a = [&rep](double t) -> CMat {
    return std::cos(2 * M_PI * t) * rep[0] + std::sin(2 * M_PI * t) * (rep[1] + rep[2]);
  };
  double slope = refinement_slope(a, 1.0, 4, 5);
  CHECK(slope >= 1.9);
  CHECK(slope <= 2.6);
}

TEST_CASE("monodromy report fields") {
  json r = monodromy_report(u1_loop(0.7, 2));
  CHECK(r.contains("monodromy"));
  CHECK(r.contains("char_poly"));
  CHECK(r.contains("trace"));
  CHECK(r["loop_length"].get<double>() == doctest::Approx(1.0));
}
