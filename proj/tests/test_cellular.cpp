#include "doctest.h"

#include "core/cellular.hpp"

using namespace dwb;
using K = GaussRat;

TEST_CASE("one-dimensional cell models have the right cohomology") {
  auto circ = one_d_complex<K>(circle_model(5));
  CHECK(check_d_squared(circ).ok);
  auto hc = cohomology(circ);
  CHECK(hc.dims.at(0) == 1);
  CHECK(hc.dims.at(1) == 1);

  auto intv = one_d_complex<K>(interval_model(4));
  auto hi = cohomology(intv);
  CHECK(hi.dims.at(0) == 1);
  CHECK(hi.dims.at(1) == 0);

  CHECK_THROWS_AS(circle_model(1), std::invalid_argument);
  CHECK_THROWS_AS(interval_model(0), std::invalid_argument);
}

TEST_CASE("sphere and point models") {
  auto pt = point_complex<K>();
  CHECK(cohomology(pt).dims.at(0) == 1);
  auto s2 = sphere_complex<K>(2);
  auto h = cohomology(s2);
  CHECK(h.dims.at(0) == 1);
  CHECK(h.dims.at(2) == 1);
  auto s0 = sphere_complex<K>(0);
  CHECK(cohomology(s0).dims.at(0) == 2);
}

TEST_CASE("torus as a tensor product of two circles") {
  OneDModel m1 = circle_model(3), m2 = circle_model(4);
  auto c1 = one_d_complex<K>(m1), c2 = one_d_complex<K>(m2);
  TensorIndex idx;
  auto torus = tensor_complex(c1, c2, idx);
  CHECK(check_d_squared(torus).ok);
  CHECK(torus.space.dim(0) == 12);
  CHECK(torus.space.dim(1) == 24);
  CHECK(torus.space.dim(2) == 12);
  auto h = cohomology(torus);
  CHECK(h.dims.at(0) == 1);
  CHECK(h.dims.at(1) == 2);
  CHECK(h.dims.at(2) == 1);
}

TEST_CASE("circle pairing is graded-skew and d-compatible") {
  // odd cell counts give a nondegenerate form; even ones pick up the
  // alternating-sum radical of the averaged incidence matrix
  auto podd = circle_pairing<K>(circle_model(5));
  auto rodd = check_pairing(podd);
  CHECK(rodd.skew);
  CHECK(rodd.d_compatible);
  CHECK(rodd.radical_dims.at(0) == 0);
  CHECK(rodd.radical_dims.at(1) == 0);
  auto peven = circle_pairing<K>(circle_model(4));
  auto reven = check_pairing(peven);
  CHECK(reven.skew);
  CHECK(reven.d_compatible);
  CHECK(reven.radical_dims.at(0) == 1);
  CHECK(reven.radical_dims.at(1) == 1);
}

TEST_CASE("interval restriction is a chain map") {
  int n = 6;
  auto big = one_d_complex<K>(interval_model(n));
  auto sub = one_d_complex<K>(interval_model(2));
  auto f = interval_restriction<K>(n, 2, 4, big, sub);
  CHECK(is_chain_map(f, big, sub));
  CHECK_THROWS_AS(interval_restriction<K>(n, 4, 2, big, sub), std::invalid_argument);
}

namespace {

ProductCochain<K> basis_cochain(const TensorIndex& idx, int deg, int i) {
  ProductCochain<K> x;
  x.degree = deg;
  x.coef.assign(idx.cells.at(deg).size(), K(0));
  x.coef[static_cast<size_t>(i)] = K(1);
  return x;
}

ProductCochain<K> constant_function(const TensorIndex& idx) {
  ProductCochain<K> x;
  x.degree = 0;
  x.coef.assign(idx.cells.at(0).size(), K(1));
  return x;
}

bool equal_cochains(const ProductCochain<K>& a, const ProductCochain<K>& b) {
  if (a.degree != b.degree) return false;
  size_t n = std::max(a.coef.size(), b.coef.size());
  for (size_t i = 0; i < n; ++i) {
    K x = i < a.coef.size() ? a.coef[i] : K(0);
    K y = i < b.coef.size() ? b.coef[i] : K(0);
    if (x != y) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("cup product: unit, Leibniz rule, associativity on a torus") {
  OneDModel m1 = circle_model(3), m2 = circle_model(3);
  auto c1 = one_d_complex<K>(m1), c2 = one_d_complex<K>(m2);
  TensorIndex idx;
  auto torus = tensor_complex(c1, c2, idx);
  auto one = constant_function(idx);

  // the constant function is a two-sided unit
  for (int deg = 0; deg <= 2; ++deg) {
    int n = static_cast<int>(idx.cells.at(deg).size());
    for (int i = 0; i < n; ++i) {
      auto x = basis_cochain(idx, deg, i);
      CHECK(equal_cochains(cup_product(m1, m2, idx, one, x), x));
      CHECK(equal_cochains(cup_product(m1, m2, idx, x, one), x));
    }
  }

  // Leibniz: d(x cup y) = dx cup y + (-1)^|x| x cup dy on basis pairs
  for (int dx = 0; dx <= 1; ++dx)
    for (int dy = 0; dy <= 1 - dx; ++dy) {
      int nx = static_cast<int>(idx.cells.at(dx).size());
      int ny = static_cast<int>(idx.cells.at(dy).size());
      for (int i = 0; i < nx; i += 3)
        for (int j = 0; j < ny; j += 3) {
          auto x = basis_cochain(idx, dx, i);
          auto y = basis_cochain(idx, dy, j);
          auto lhs = apply_d(torus, cup_product(m1, m2, idx, x, y));
          auto t1 = cup_product(m1, m2, idx, apply_d(torus, x), y);
          auto t2 = cup_product(m1, m2, idx, x, apply_d(torus, y));
          K sgn = (dx % 2 == 0) ? K(1) : K(-1);
          ProductCochain<K> rhs;
          rhs.degree = lhs.degree;
          rhs.coef.assign(lhs.coef.size(), K(0));
          for (size_t q = 0; q < rhs.coef.size(); ++q)
            rhs.coef[q] = t1.coef[q] + sgn * t2.coef[q];
          CHECK(equal_cochains(lhs, rhs));
        }
    }

  // associativity on a sample of degree-0 and degree-1 triples
  auto x = basis_cochain(idx, 0, 0);
  auto y = basis_cochain(idx, 1, 1);
  auto z = basis_cochain(idx, 0, 4);
  auto l = cup_product(m1, m2, idx, cup_product(m1, m2, idx, x, y), z);
  auto r = cup_product(m1, m2, idx, x, cup_product(m1, m2, idx, y, z));
  CHECK(equal_cochains(l, r));
}
