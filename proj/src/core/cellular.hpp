#pragma once

#include <functional>

#include "graded.hpp"

namespace dwb {

// 1D cell models (path or cycle graphs) and tensor-product complexes; these
// stand in for de Rham complexes of manifold factors with the same cohomology.

struct OneDModel {
  bool circle = false;
  int n_vertices = 0;
  int n_edges = 0;

  int front(int e) const { return e; }
  int back(int e) const { return circle ? (e + 1) % n_vertices : e + 1; }
};

inline OneDModel circle_model(int n) {
  if (n < 2) throw std::invalid_argument("circle model needs >= 2 cells");
  return OneDModel{true, n, n};
}
inline OneDModel interval_model(int n_edges) {
  if (n_edges < 1) throw std::invalid_argument("interval model needs >= 1 edge");
  return OneDModel{false, n_edges + 1, n_edges};
}

template <class K>
CochainComplex<K> one_d_complex(const OneDModel& m, const std::string& tag = "") {
  GradedVectorSpace v;
  std::vector<std::string> vl, el;
  for (int i = 0; i < m.n_vertices; ++i) vl.push_back(tag + "v" + std::to_string(i));
  for (int i = 0; i < m.n_edges; ++i) el.push_back(tag + "e" + std::to_string(i));
  v.set(0, vl);
  v.set(1, el);
  CochainComplex<K> c;
  c.init(v);
  Mat<K> d0(m.n_edges, m.n_vertices);
  for (int e = 0; e < m.n_edges; ++e) {
    d0(e, m.back(e)) += K(1);
    d0(e, m.front(e)) -= K(1);
  }
  c.d.set_block(0, d0);
  return c;
}

template <class K>
CochainComplex<K> point_complex() {
  GradedVectorSpace v;
  v.set(0, {std::string("pt")});
  CochainComplex<K> c;
  c.init(v);
  return c;
}

/// Minimal cell model of S^{k-1}: two points for k=1, else one cell in
/// degrees 0 and k-1 with zero differential.
template <class K>
CochainComplex<K> sphere_complex(int k_minus_1) {
  GradedVectorSpace v;
  if (k_minus_1 == 0) {
    v.set(0, {std::string("pt+"), std::string("pt-")});
  } else {
    v.set(0, {std::string("1")});
    v.set(k_minus_1, {"vol S^" + std::to_string(k_minus_1)});
  }
  CochainComplex<K> c;
  c.init(v);
  return c;
}

/// Wedge-and-integrate pairing on a closed 1D model, stored with the
/// graded-skew sign convention (shift 1).
template <class K>
ShiftedPairing<K> circle_pairing(const OneDModel& m) {
  if (!m.circle) throw std::invalid_argument("circle_pairing needs a closed model");
  ShiftedPairing<K> p;
  p.complex = one_d_complex<K>(m);
  p.shift = 1;
  Mat<K> w(m.n_vertices, m.n_edges);  // int_e (hat_v wedge edge form) = 1/2 per incidence
  K half = K(1) / K(2);
  for (int e = 0; e < m.n_edges; ++e) {
    w(m.front(e), e) += half;
    w(m.back(e), e) += half;
  }
  p.set_block(0, w);
  p.set_block(1, K(-1) * w.transpose());
  return p;
}

// ---------------------------------------------------------------------------
// Tensor products of complexes, with Koszul signs.

struct TensorIndex {
  // per total degree: list of (degA, idxA, degB, idxB) in enumeration order
  std::map<int, std::vector<std::array<int, 4>>> cells;
  std::map<int, std::map<std::array<int, 4>, int>> lookup;

  int offset(int total, int pa, int ia, int pb, int ib) const {
    return lookup.at(total).at({pa, ia, pb, ib});
  }
};

template <class K>
CochainComplex<K> tensor_complex(const CochainComplex<K>& A, const CochainComplex<K>& B,
                                 TensorIndex& idx) {
  idx = TensorIndex{};
  GradedVectorSpace v;
  for (auto& [pa, da] : A.space.dims)
    for (auto& [pb, db] : B.space.dims) {
      int total = pa + pb;
      for (int ia = 0; ia < da; ++ia)
        for (int ib = 0; ib < db; ++ib) {
          std::array<int, 4> key{pa, ia, pb, ib};
          idx.lookup[total][key] = static_cast<int>(idx.cells[total].size());
          idx.cells[total].push_back(key);
        }
    }
  for (auto& [total, cells] : idx.cells) v.set(total, static_cast<int>(cells.size()));
  CochainComplex<K> c;
  c.init(v);
  // d(a (x) b) = da (x) b + (-1)^{|a|} a (x) db
  for (auto& [total, cells] : idx.cells) {
    if (v.dim(total + 1) == 0) {
      if (v.dim(total) > 0) c.d.set_block(total, Mat<K>::zero(0, v.dim(total)));
      continue;
    }
    Mat<K> blk(v.dim(total + 1), v.dim(total));
    for (size_t col = 0; col < cells.size(); ++col) {
      auto [pa, ia, pb, ib] = cells[col];
      Mat<K> da = A.d.block(pa);
      for (int r = 0; r < da.rows; ++r) {
        if (FieldOps<K>::is_zero(da(r, ia))) continue;
        int row = idx.offset(total + 1, pa + 1, r, pb, ib);
        blk(row, static_cast<int>(col)) += da(r, ia);
      }
      Mat<K> db = B.d.block(pb);
      K sgn = (pa % 2 == 0) ? K(1) : K(-1);
      for (int r = 0; r < db.rows; ++r) {
        if (FieldOps<K>::is_zero(db(r, ib))) continue;
        int row = idx.offset(total + 1, pa, ia, pb + 1, r);
        blk(row, static_cast<int>(col)) += sgn * db(r, ib);
      }
    }
    c.d.set_block(total, blk);
  }
  return c;
}

/// Tensor of two degree-0 chain maps, matching the given tensor indexings.
template <class K>
LinearMap<K> tensor_map(const LinearMap<K>& f, const LinearMap<K>& g,
                        const CochainComplex<K>& src, const TensorIndex& isrc,
                        const CochainComplex<K>& tgt, const TensorIndex& itgt) {
  LinearMap<K> h;
  h.source = src.space;
  h.target = tgt.space;
  h.degree = 0;
  for (auto& [total, cells] : isrc.cells) {
    Mat<K> blk(tgt.space.dim(total), src.space.dim(total));
    for (size_t col = 0; col < cells.size(); ++col) {
      auto [pa, ia, pb, ib] = cells[col];
      Mat<K> fb = f.block(pa);
      Mat<K> gb = g.block(pb);
      for (int r1 = 0; r1 < fb.rows; ++r1) {
        if (FieldOps<K>::is_zero(fb(r1, ia))) continue;
        for (int r2 = 0; r2 < gb.rows; ++r2) {
          if (FieldOps<K>::is_zero(gb(r2, ib))) continue;
          int row = itgt.offset(total, pa, r1, pb, r2);
          blk(row, static_cast<int>(col)) += fb(r1, ia) * gb(r2, ib);
        }
      }
    }
    h.blocks[total] = blk;
  }
  return h;
}

/// Cochain restriction from an interval model onto the full submodel spanned
/// by vertices [lo, hi]; a chain map because d is local.
template <class K>
LinearMap<K> interval_restriction(int n_edges, int lo, int hi, const CochainComplex<K>& big,
                                  const CochainComplex<K>& sub) {
  if (!(0 <= lo && lo < hi && hi <= n_edges))
    throw std::invalid_argument("interval_restriction: bad subrange");
  LinearMap<K> f;
  f.source = big.space;
  f.target = sub.space;
  f.degree = 0;
  Mat<K> b0(hi - lo + 1, n_edges + 1);
  for (int i = lo; i <= hi; ++i) b0(i - lo, i) = K(1);
  Mat<K> b1(hi - lo, n_edges);
  for (int e = lo; e < hi; ++e) b1(e - lo, e) = K(1);
  f.blocks[0] = b0;
  f.blocks[1] = b1;
  return f;
}

// ---------------------------------------------------------------------------
// Alexander-Whitney cup product on a product of two 1D models.
// A cochain is a coefficient vector per total degree, in TensorIndex order.

template <class K>
struct ProductCochain {
  int degree = 0;
  std::vector<K> coef;
};

namespace detail {

// 1D AW cup on single cells: returns list of (cell, coefficient-sign) pairs.
// deg0*deg0 -> vertex match; 0*1 -> front; 1*0 -> back; 1*1 -> zero.
inline bool cup1d(const OneDModel& m, int pa, int ca, int pb, int cb, int& out_deg,
                  int& out_cell) {
  if (pa == 0 && pb == 0) {
    if (ca != cb) return false;
    out_deg = 0;
    out_cell = ca;
    return true;
  }
  if (pa == 0 && pb == 1) {
    if (ca != m.front(cb)) return false;
    out_deg = 1;
    out_cell = cb;
    return true;
  }
  if (pa == 1 && pb == 0) {
    if (cb != m.back(ca)) return false;
    out_deg = 1;
    out_cell = ca;
    return true;
  }
  return false;
}

}  // namespace detail

/// Cup product on the product complex of models (m1, m2) with indexing idx.
template <class K>
ProductCochain<K> cup_product(const OneDModel& m1, const OneDModel& m2, const TensorIndex& idx,
                              const ProductCochain<K>& x, const ProductCochain<K>& y) {
  ProductCochain<K> z;
  z.degree = x.degree + y.degree;
  if (!idx.cells.count(z.degree)) {
    return z;  // lands above top degree
  }
  z.coef.assign(idx.cells.at(z.degree).size(), K(0));
  const auto& xc = idx.cells.at(x.degree);
  const auto& yc = idx.cells.at(y.degree);
  for (size_t i = 0; i < xc.size(); ++i) {
    if (FieldOps<K>::is_zero(x.coef[i])) continue;
    auto [xa, xia, xb, xib] = xc[i];
    for (size_t j = 0; j < yc.size(); ++j) {
      if (FieldOps<K>::is_zero(y.coef[j])) continue;
      auto [ya, yia, yb, yib] = yc[j];
      int d1, c1, d2, c2;
      if (!detail::cup1d(m1, xa, xia, ya, yia, d1, c1)) continue;
      if (!detail::cup1d(m2, xb, xib, yb, yib, d2, c2)) continue;
      // Koszul sign (-1)^{|x2||y1|}
      K sgn = ((xb * ya) % 2 != 0) ? K(-1) : K(1);
      int row = idx.offset(z.degree, d1, c1, d2, c2);
      z.coef[static_cast<size_t>(row)] += sgn * x.coef[i] * y.coef[j];
    }
  }
  return z;
}

/// Apply the product-complex differential to a cochain.
template <class K>
ProductCochain<K> apply_d(const CochainComplex<K>& c, const ProductCochain<K>& x) {
  ProductCochain<K> y;
  y.degree = x.degree + 1;
  Mat<K> blk = c.d.block(x.degree);
  y.coef = blk.apply(x.coef);
  return y;
}

}  // namespace dwb
