#include "doctest.h"

#include "core/collapse.hpp"

using namespace dwb;

TEST_CASE("collapse profile contract") {
  for (double fam : {0.0, 0.5, 1.0}) {
    CollapseProfile f(0.25, fam);
    CAPTURE(fam);
    // vanishing plateau, identity tail, monotone, C^0
    for (int i = 0; i <= 2000; ++i) {
      double x = 3.0 * i / 2000;
      double y = f(x);
      if (x <= 0.25) CHECK(y == 0.0);
      if (x >= 0.5) CHECK(y == doctest::Approx(x).epsilon(1e-14));
      CHECK(y >= -1e-15);
    }
    double prev = 0;
    for (int i = 0; i <= 2000; ++i) {
      double y = f(3.0 * i / 2000);
      CHECK(y >= prev - 1e-12);
      prev = y;
    }
    // derivative is nonnegative and vanishes on the plateau
    CHECK(f.derivative(0.1) == 0.0);
    CHECK(f.derivative(0.4) >= 0.0);
    CHECK(f.derivative(1.5) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("collapse profile inverse") {
  CollapseProfile f(0.25);
  CHECK(f.inverse(0.0) == doctest::Approx(0.25).epsilon(1e-9));
  for (int i = 1; i <= 30; ++i) {
    double x = 0.25 + (3.0 - 0.25) * i / 30;
    CHECK(f.inverse(f(x)) == doctest::Approx(x).epsilon(1e-9));
  }
}

TEST_CASE("collapse of normal points scales the fiber") {
  CollapseProfile f(0.25);
  NormalPoint p{"b", {0.3, 0.4}};  // norm 0.5
  CHECK(p.norm() == doctest::Approx(0.5));
  NormalPoint q = collapse_point(p, f);
  CHECK(q.base == "b");
  CHECK(q.norm() == doctest::Approx(f(0.5)));
  // direction is preserved
  CHECK(q.v[0] * p.v[1] == doctest::Approx(q.v[1] * p.v[0]));
  NormalPoint z{"b", {0.1, 0.0}};
  CHECK(collapse_point(z, f).norm() == 0.0);
}

TEST_CASE("open sets normalize, compare and intersect") {
  OpenSet1D u({{0.0, 1.0}, {0.5, 2.0}, {3.0, 4.0}});
  REQUIRE(u.intervals().size() == 2);
  CHECK(u.intervals()[0].first == doctest::Approx(0.0));
  CHECK(u.intervals()[0].second == doctest::Approx(2.0));
  OpenSet1D v({{0.2, 0.4}});
  CHECK(u.contains(v));
  CHECK_FALSE(v.contains(u));
  CHECK(v.disjoint_from(OpenSet1D({{2.5, 2.9}})));
  CHECK_FALSE(v.disjoint_from(u));
  CHECK(u == OpenSet1D({{3.0, 4.0}, {0.0, 2.0}}));
}

TEST_CASE("preimages under the collapse map") {
  CollapseProfile f(0.25);
  // away from the defect the preimage maps back onto the set
  OpenSet1D u({{0.7, 1.1}});
  OpenSet1D pre = preimage_open(u, f);
  REQUIRE(pre.intervals().size() == 1);
  auto [a, b] = pre.intervals()[0];
  CHECK(f(a) == doctest::Approx(0.7).epsilon(1e-9));
  CHECK(f(b) == doctest::Approx(1.1).epsilon(1e-9));
  // a set meeting the collapsed plateau pulls back over the whole plateau
  OpenSet1D w({{-0.1, 0.1}});
  OpenSet1D pw = preimage_open(w, f);
  REQUIRE(pw.intervals().size() == 1);
  CHECK(pw.intervals()[0].first < -0.25);
  CHECK(pw.intervals()[0].second > 0.25);
  // mirrored sets pull back to mirrored sets
  OpenSet1D m = preimage_open(OpenSet1D({{-1.1, -0.7}}), f);
  REQUIRE(m.intervals().size() == 1);
  CHECK(m.intervals()[0].first == doctest::Approx(-b).epsilon(1e-9));
  CHECK(m.intervals()[0].second == doctest::Approx(-a).epsilon(1e-9));
}

TEST_CASE("annulus restrictions: topological equivalence, massive obstruction") {
  CHECK(annulus_equivalence(AnnulusTheory::Topological, 1, 0.3, 2.0, 0.4, 1.95));
  CHECK(annulus_equivalence(AnnulusTheory::Topological, 2, 0.5, 1.5, 0.7, 1.2));
  CHECK_FALSE(annulus_equivalence(AnnulusTheory::MassiveCollar, 1, 0.3, 2.0, 0.4, 1.95));
}

TEST_CASE("blow-up boundary models") {
  // boundary of the blow-up of a point defect in the plane: a circle
  auto s1 = blowup_boundary(2, 2);
  auto h1 = cohomology(s1);
  CHECK(h1.dims.at(0) == 1);
  CHECK(h1.dims.at(1) == 1);
  // codimension-3 defect in R^3: S^2
  auto s2 = blowup_boundary(3, 3);
  auto h2 = cohomology(s2);
  CHECK(h2.dims.at(0) == 1);
  CHECK(h2.dims.at(2) == 1);
}
