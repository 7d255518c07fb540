#include "doctest.h"

#include "core/graded.hpp"
#include "core/hpoly.hpp"

using namespace dwb;

TEST_CASE("rational parsing round-trips") {
  CHECK(rat_from_string("3/4") == Rat(3, 4));
  CHECK(rat_from_string("-5") == Rat(-5));
  CHECK(rat_to_string(Rat(22, 7)) == "22/7");
  CHECK_THROWS_AS(rat_from_string("1/0"), std::invalid_argument);
}

TEST_CASE("Gaussian rational field operations") {
  GaussRat i = GaussRat::i();
  CHECK(i * i == GaussRat(-1));
  GaussRat z(Rat(1, 2), Rat(3));
  CHECK(z * z.conj() == GaussRat(Rat(1, 4) + Rat(9)));
  CHECK(z / z == GaussRat(1));
  CHECK_THROWS_AS(z / GaussRat(0), std::domain_error);
}

TEST_CASE("tolerance policy") {
  double old = Tolerance::get();
  Tolerance::set(1e-6);
  CHECK(Tolerance::get() == doctest::Approx(1e-6));
  CHECK_THROWS_AS(Tolerance::set(0.0), std::invalid_argument);
  CHECK_THROWS_AS(Tolerance::set(-1.0), std::invalid_argument);
  Tolerance::set(old);
}

TEST_CASE("hbar polynomial arithmetic") {
  HPoly one(1), h = HPoly::hbar();
  CHECK((one + h) * (one - h) == one - h * h);
  CHECK(HPoly::hbar(2).coeff(2) == 1);
  CHECK(HPoly::hbar(2).coeff(1) == 0);
  HPoly p = Rat(2) * Rat(1);  // constant 2
  CHECK(p.eval(Rat(5)) == 2);
  CHECK((h * h).degree() == 2);
  CHECK(HPoly(0).degree() == -1);
}

TEST_CASE("rank, kernel and solve over the rationals") {
  Mat<Rat> m(3, 3);
  // rows: (1,2,3), (2,4,6), (0,1,1) -- rank 2
  m(0, 0) = 1; m(0, 1) = 2; m(0, 2) = 3;
  m(1, 0) = 2; m(1, 1) = 4; m(1, 2) = 6;
  m(2, 1) = 1; m(2, 2) = 1;
  CHECK(rank(m) == 2);
  Mat<Rat> k = kernel(m);
  CHECK(k.cols == 1);
  // every kernel column is annihilated
  for (int j = 0; j < k.cols; ++j) {
    std::vector<Rat> v(3);
    for (int i = 0; i < 3; ++i) v[i] = k(i, j);
    for (auto& x : m.apply(v)) CHECK(x == 0);
  }
  auto x = solve(m, {Rat(6), Rat(12), Rat(2)});
  REQUIRE(x.has_value());
  auto back = m.apply(*x);
  CHECK(back[0] == 6);
  CHECK(back[1] == 12);
  CHECK(back[2] == 2);
  CHECK_FALSE(solve(m, {Rat(1), Rat(0), Rat(0)}).has_value());
}

TEST_CASE("span comparisons") {
  Mat<Rat> a(2, 1), b(2, 2);
  a(0, 0) = 1;
  b(0, 0) = 2; b(1, 1) = 1;
  CHECK(span_contains(b, a));
  CHECK_FALSE(span_contains(a, b));
  Mat<Rat> c(2, 1);
  c(0, 0) = 7;
  CHECK(span_equal(a, c));
}

TEST_CASE("cohomology of an exact three-term complex") {
  GradedVectorSpace v;
  v.set(0, 1);
  v.set(1, 2);
  v.set(2, 1);
  CochainComplex<Rat> c;
  c.init(v);
  Mat<Rat> d0(2, 1), d1(1, 2);
  d0(0, 0) = 1; d0(1, 0) = 1;
  d1(0, 0) = 1; d1(0, 1) = -1;
  c.d.set_block(0, d0);
  c.d.set_block(1, d1);
  CHECK(check_d_squared(c).ok);
  auto h = cohomology(c);
  CHECK(h.dims.at(0) == 0);
  CHECK(h.dims.at(1) == 0);
  CHECK(h.dims.at(2) == 0);
}

TEST_CASE("d-squared violations are reported") {
  GradedVectorSpace v;
  v.set(0, 1);
  v.set(1, 1);
  v.set(2, 1);
  CochainComplex<Rat> c;
  c.init(v);
  Mat<Rat> one(1, 1);
  one(0, 0) = 1;
  c.d.set_block(0, one);
  c.d.set_block(1, one);
  auto rep = check_d_squared(c);
  CHECK_FALSE(rep.ok);
  CHECK(rep.residuals.count(0) == 1);
}

TEST_CASE("quasi-isomorphism detection") {
  // identity on a complex is a quasi-iso; the zero map out of a complex with
  // cohomology is not
  GradedVectorSpace v;
  v.set(0, 1);
  v.set(1, 1);
  CochainComplex<Rat> c;
  c.init(v);  // zero differential: H^0 = H^1 = Q
  auto id = LinearMap<Rat>::identity(v);
  CHECK(is_quasi_iso(id, c, c));
  LinearMap<Rat> zero;
  zero.source = zero.target = v;
  CHECK_FALSE(is_quasi_iso(zero, c, c));
}

TEST_CASE("non-chain maps are rejected by is_quasi_iso") {
  GradedVectorSpace v;
  v.set(0, 1);
  v.set(1, 1);
  CochainComplex<Rat> c;
  c.init(v);
  Mat<Rat> one(1, 1);
  one(0, 0) = 1;
  c.d.set_block(0, one);
  CochainComplex<Rat> z;
  z.init(v);  // zero differential
  auto id = LinearMap<Rat>::identity(v);
  CHECK_FALSE(is_chain_map(id, c, z));
  CHECK_THROWS_AS(is_quasi_iso(id, c, z), StructuralError);
}

TEST_CASE("symplectic plane as a degree-zero shifted pairing") {
  GradedVectorSpace v;
  v.set(0, 2);
  CochainComplex<GaussRat> c;
  c.init(v);
  ShiftedPairing<GaussRat> p;
  p.complex = c;
  p.shift = 0;
  Mat<GaussRat> f(2, 2);
  f(0, 1) = GaussRat(1);
  f(1, 0) = GaussRat(-1);
  p.set_block(0, f);
  auto pr = check_pairing(p);
  CHECK(pr.skew);
  CHECK(pr.d_compatible);
  CHECK(pr.radical_dims.at(0) == 0);

  LagrangianCandidate<GaussRat> L;
  GradedVectorSpace dom;
  dom.set(0, 1);
  L.domain.init(dom);
  L.map.source = dom;
  L.map.target = v;
  Mat<GaussRat> incl(2, 1);
  incl(0, 0) = GaussRat(1);
  L.map.set_block(0, incl);
  auto lr = is_lagrangian(L, p);
  CHECK(lr.isotropic);
  CHECK(lr.strict_self_perp);
  CHECK_FALSE(lr.modulo_radical);
  CHECK(lr.image_dims.at(0) == 1);
}

TEST_CASE("a line that is isotropic but not Lagrangian in dimension four") {
  GradedVectorSpace v;
  v.set(0, 4);
  CochainComplex<GaussRat> c;
  c.init(v);
  ShiftedPairing<GaussRat> p;
  p.complex = c;
  p.shift = 0;
  Mat<GaussRat> f(4, 4);  // omega(q_i, p_i) = 1 with basis (q1,q2,p1,p2)
  f(0, 2) = GaussRat(1);
  f(1, 3) = GaussRat(1);
  f(2, 0) = GaussRat(-1);
  f(3, 1) = GaussRat(-1);
  p.set_block(0, f);
  LagrangianCandidate<GaussRat> L;
  GradedVectorSpace dom;
  dom.set(0, 1);
  L.domain.init(dom);
  L.map.source = dom;
  L.map.target = v;
  Mat<GaussRat> incl(4, 1);
  incl(0, 0) = GaussRat(1);
  L.map.set_block(0, incl);
  auto lr = is_lagrangian(L, p);
  CHECK(lr.isotropic);
  CHECK_FALSE(lr.strict_self_perp);
}

TEST_CASE("degenerate pairings report their radical") {
  GradedVectorSpace v;
  v.set(0, 2);
  CochainComplex<GaussRat> c;
  c.init(v);
  ShiftedPairing<GaussRat> p;
  p.complex = c;
  p.shift = 0;
  p.set_block(0, Mat<GaussRat>::zero(2, 2));
  auto pr = check_pairing(p);
  CHECK(pr.radical_dims.at(0) == 2);
}
