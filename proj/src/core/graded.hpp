#pragma once

#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "matrix.hpp"

namespace dwb {

struct StructuralError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Finite graded vector space: degree -> dimension, with optional basis labels.
struct GradedVectorSpace {
  std::map<int, int> dims;
  std::map<int, std::vector<std::string>> labels;

  int dim(int k) const {
    auto it = dims.find(k);
    return it == dims.end() ? 0 : it->second;
  }
  int total_dim() const {
    int t = 0;
    for (auto& [k, d] : dims) t += d;
    return t;
  }
  void set(int k, int d) {
    if (d < 0) throw StructuralError("negative dimension in degree " + std::to_string(k));
    if (d > 0) dims[k] = d;
  }
  void set(int k, std::vector<std::string> lbl) {
    set(k, static_cast<int>(lbl.size()));
    if (!lbl.empty()) labels[k] = std::move(lbl);
  }
  friend bool operator==(const GradedVectorSpace& a, const GradedVectorSpace& b) {
    return a.dims == b.dims;
  }
};

/// Degreewise linear map with a fixed degree shift.
/// blocks[p] maps the degree-p piece of source into degree p+degree of target.
template <class K>
struct LinearMap {
  GradedVectorSpace source;
  GradedVectorSpace target;
  int degree = 0;
  std::map<int, Mat<K>> blocks;

  Mat<K> block(int p) const {
    auto it = blocks.find(p);
    if (it != blocks.end()) return it->second;
    return Mat<K>::zero(target.dim(p + degree), source.dim(p));
  }
  void set_block(int p, Mat<K> m) {
    if (m.rows != target.dim(p + degree) || m.cols != source.dim(p))
      throw StructuralError("block shape mismatch at degree " + std::to_string(p));
    blocks[p] = std::move(m);
  }
  void validate() const {
    for (auto& [p, m] : blocks)
      if (m.rows != target.dim(p + degree) || m.cols != source.dim(p))
        throw StructuralError("block shape mismatch at degree " + std::to_string(p));
  }

  static LinearMap identity(const GradedVectorSpace& v) {
    LinearMap f;
    f.source = f.target = v;
    for (auto& [k, d] : v.dims) f.blocks[k] = Mat<K>::identity(d);
    return f;
  }
};

template <class K>
LinearMap<K> compose(const LinearMap<K>& f, const LinearMap<K>& g) {
  if (!(g.target == f.source)) throw StructuralError("composition source/target mismatch");
  LinearMap<K> h;
  h.source = g.source;
  h.target = f.target;
  h.degree = f.degree + g.degree;
  for (auto& [p, gd] : g.source.dims) {
    (void)gd;
    h.blocks[p] = f.block(p + g.degree) * g.block(p);
  }
  return h;
}

/// Complex: graded space with a degree +1 differential.
template <class K>
struct CochainComplex {
  GradedVectorSpace space;
  LinearMap<K> d;  // degree +1

  void init(GradedVectorSpace v) {
    space = std::move(v);
    d.source = d.target = space;
    d.degree = 1;
  }
  int min_degree() const { return space.dims.empty() ? 0 : space.dims.begin()->first; }
  int max_degree() const { return space.dims.empty() ? 0 : space.dims.rbegin()->first; }
};

struct DSquaredReport {
  bool ok = true;
  std::map<int, double> residuals;  // offending degrees -> max entry of d.d
};

template <class K>
DSquaredReport check_d_squared(const CochainComplex<K>& c) {
  c.d.validate();
  DSquaredReport rep;
  for (auto& [p, dim] : c.space.dims) {
    (void)dim;
    Mat<K> dd = c.d.block(p + 1) * c.d.block(p);
    if (!dd.is_zero()) {
      rep.ok = false;
      rep.residuals[p] = dd.max_abs();
    }
  }
  return rep;
}

template <class K>
struct Cohomology {
  std::map<int, int> dims;
  std::map<int, Mat<K>> representatives;  // columns: kernel vectors complementing the image
  std::map<int, Mat<K>> image;            // columns: basis of im d_{k-1}
};

template <class K>
Cohomology<K> cohomology(const CochainComplex<K>& c) {
  Cohomology<K> h;
  for (auto& [k, dim] : c.space.dims) {
    (void)dim;
    Mat<K> ker = kernel(c.d.block(k));
    Mat<K> img = column_space(c.d.block(k - 1));
    // pick kernel columns extending the span of the image
    Mat<K> reps(c.space.dim(k), 0);
    Mat<K> acc = img;
    int racc = rank(acc);
    for (int j = 0; j < ker.cols; ++j) {
      Mat<K> col(ker.rows, 1);
      for (int i = 0; i < ker.rows; ++i) col(i, 0) = ker(i, j);
      Mat<K> trym = hcat(acc, col);
      int r = rank(trym);
      if (r > racc) {
        acc = trym;
        racc = r;
        reps = hcat(reps, col);
      }
    }
    h.dims[k] = reps.cols;
    h.representatives[k] = reps;
    h.image[k] = img;
  }
  return h;
}

template <class K>
bool is_chain_map(const LinearMap<K>& f, const CochainComplex<K>& src,
                  const CochainComplex<K>& tgt) {
  for (auto& [p, dim] : src.space.dims) {
    (void)dim;
    Mat<K> lhs = tgt.d.block(p) * f.block(p);
    Mat<K> rhs = f.block(p + 1) * src.d.block(p);
    if (!(lhs - rhs).is_zero()) return false;
  }
  return true;
}

/// Matrix of the induced map H^p(src) -> H^p(tgt) in the representative bases.
template <class K>
Mat<K> induced_on_cohomology(const LinearMap<K>& f, const Cohomology<K>& hs,
                             const Cohomology<K>& ht, int p) {
  const Mat<K>& reps_s = hs.representatives.at(p);
  Mat<K> reps_t = ht.representatives.count(p) ? ht.representatives.at(p)
                                              : Mat<K>::zero(f.target.dim(p), 0);
  Mat<K> img_t = ht.image.count(p) ? ht.image.at(p) : Mat<K>::zero(f.target.dim(p), 0);
  Mat<K> basis = hcat(reps_t, img_t);
  Mat<K> out(reps_t.cols, reps_s.cols);
  for (int j = 0; j < reps_s.cols; ++j) {
    std::vector<K> v(reps_s.rows);
    for (int i = 0; i < reps_s.rows; ++i) v[static_cast<size_t>(i)] = reps_s(i, j);
    std::vector<K> w = f.block(p).apply(v);
    auto x = solve(basis, w);
    if (!x) throw StructuralError("image of cocycle not a cocycle; map is not a chain map");
    for (int i = 0; i < reps_t.cols; ++i) out(i, j) = (*x)[static_cast<size_t>(i)];
  }
  return out;
}

template <class K>
bool is_quasi_iso(const LinearMap<K>& f, const CochainComplex<K>& src,
                  const CochainComplex<K>& tgt) {
  if (!is_chain_map(f, src, tgt)) throw StructuralError("is_quasi_iso: not a chain map");
  Cohomology<K> hs = cohomology(src);
  Cohomology<K> ht = cohomology(tgt);
  std::map<int, int> degrees;
  for (auto& [k, d] : hs.dims) degrees[k] = 1;
  for (auto& [k, d] : ht.dims) degrees[k] = 1;
  for (auto& [k, unused] : degrees) {
    (void)unused;
    int ds = hs.dims.count(k) ? hs.dims.at(k) : 0;
    int dt = ht.dims.count(k) ? ht.dims.at(k) : 0;
    if (ds != dt) return false;
    if (ds == 0) continue;
    Mat<K> m = induced_on_cohomology(f, hs, ht, k);
    if (rank(m) != ds) return false;
  }
  return true;
}

/// Degree-shifted bilinear pairing: form[p] pairs degree p with degree shift-p,
/// <a,b> = a^T form[p] b.
template <class K>
struct ShiftedPairing {
  CochainComplex<K> complex;
  int shift = 0;
  std::map<int, Mat<K>> form;

  Mat<K> block(int p) const {
    auto it = form.find(p);
    if (it != form.end()) return it->second;
    return Mat<K>::zero(complex.space.dim(p), complex.space.dim(shift - p));
  }
  void set_block(int p, Mat<K> m) {
    if (m.rows != complex.space.dim(p) || m.cols != complex.space.dim(shift - p))
      throw StructuralError("pairing block shape mismatch at degree " + std::to_string(p));
    form[p] = std::move(m);
  }
};

template <class K>
struct PairingReport {
  bool skew = true;
  bool d_compatible = true;
  double max_skew_residual = 0;
  double max_d_residual = 0;
  std::map<int, int> radical_dims;
  std::map<int, Mat<K>> radical;  // columns per degree
};

template <class K>
PairingReport<K> check_pairing(const ShiftedPairing<K>& p) {
  PairingReport<K> rep;
  const int k = p.shift;
  for (auto& [deg, dim] : p.complex.space.dims) {
    (void)dim;
    // graded skew: <a,b> = -(-1)^{|a||b|}<b,a>
    int sgn = ((static_cast<long>(deg) * (k - deg)) % 2 != 0) ? 1 : -1;
    Mat<K> res = p.block(deg) - K(sgn) * p.block(k - deg).transpose();
    if (!res.is_zero()) {
      rep.skew = false;
      rep.max_skew_residual = std::max(rep.max_skew_residual, res.max_abs());
    }
    // d-compatibility: <da,b> +- <a,db> = 0 for a in deg, b in k-deg-1;
    // the sign may depend on the degree pair (cyclic invariance is what we need)
    if (p.complex.space.dim(k - deg - 1) > 0 && p.complex.space.dim(deg) > 0) {
      Mat<K> t1 = p.complex.d.block(deg).transpose() * p.block(deg + 1);
      Mat<K> t2 = p.block(deg) * p.complex.d.block(k - deg - 1);
      Mat<K> plus = t1 + t2;
      Mat<K> minus = t1 - t2;
      if (!plus.is_zero() && !minus.is_zero()) {
        rep.d_compatible = false;
        rep.max_d_residual =
            std::max(rep.max_d_residual, std::min(plus.max_abs(), minus.max_abs()));
      }
    }
    // radical in degree deg: a with <a,b> = 0 for all b, i.e. form[deg]^T a = 0
    Mat<K> rad = kernel(p.block(deg).transpose());
    rep.radical_dims[deg] = rad.cols;
    rep.radical[deg] = rad;
  }
  return rep;
}

/// A chain map claimed Lagrangian; the trivialization witness is the zero
/// homotopy in this strict linear setting.
template <class K>
struct LagrangianCandidate {
  CochainComplex<K> domain;
  LinearMap<K> map;  // degree 0 into the pairing's complex
};

template <class K>
bool is_isotropic(const LagrangianCandidate<K>& L, const ShiftedPairing<K>& p) {
  if (!(L.map.target == p.complex.space))
    throw StructuralError("candidate does not target the pairing's complex");
  if (!is_chain_map(L.map, L.domain, p.complex))
    throw StructuralError("candidate map is not a chain map");
  const int k = p.shift;
  for (auto& [deg, dim] : L.domain.space.dims) {
    (void)dim;
    Mat<K> m = L.map.block(deg).transpose() * p.block(deg) * L.map.block(k - deg);
    if (!m.is_zero()) return false;
  }
  return true;
}

template <class K>
struct LagrangianReport {
  bool isotropic = false;
  bool strict_self_perp = false;
  bool cohomology_lagrangian = false;
  bool modulo_radical = false;  // ambient pairing degenerate; checks done mod radical
  std::map<int, int> image_dims;
  std::map<int, int> radical_dims;
};

template <class K>
LagrangianReport<K> is_lagrangian(const LagrangianCandidate<K>& L, const ShiftedPairing<K>& p) {
  LagrangianReport<K> rep;
  rep.isotropic = is_isotropic(L, p);
  PairingReport<K> pr = check_pairing(p);
  rep.radical_dims = pr.radical_dims;
  for (auto& [deg, d] : pr.radical_dims)
    if (d > 0) rep.modulo_radical = true;

  const int k = p.shift;
  // strict self-perpendicularity degreewise, modulo the radical
  bool strict = rep.isotropic;
  std::map<int, int> degrees;
  for (auto& [deg, d] : p.complex.space.dims) degrees[deg] = d;
  for (auto& [deg, unused] : degrees) {
    (void)unused;
    Mat<K> W = column_space(L.map.block(deg));
    rep.image_dims[deg] = W.cols;
    if (!strict) continue;
    // orthogonal of image in complementary degree: b in V_deg with <a,b>=0
    // for a in W_{k-deg}
    Mat<K> Wc = column_space(L.map.block(k - deg));
    Mat<K> orth = kernel(Wc.transpose() * p.block(k - deg));
    Mat<K> rad = pr.radical.count(deg) ? pr.radical.at(deg)
                                       : Mat<K>::zero(p.complex.space.dim(deg), 0);
    if (!span_equal(hcat(W, rad), orth)) strict = false;
  }
  rep.strict_self_perp = strict;

  // cohomology level: H(L) -> H(V) injective with image equal to its own
  // orthogonal for the induced form, modulo the induced radical
  bool coh = rep.isotropic;
  if (coh) {
    Cohomology<K> hl = cohomology(L.domain);
    Cohomology<K> hv = cohomology(p.complex);
    std::map<int, Mat<K>> himg;  // image of H(L) in H(V) coordinates
    std::map<int, Mat<K>> hform;
    std::map<int, Mat<K>> hrad;
    for (auto& [deg, unused] : hv.dims) {
      (void)unused;
      Mat<K> m = hl.dims.count(deg)
                     ? induced_on_cohomology(L.map, hl, hv, deg)
                     : Mat<K>::zero(hv.dims.at(deg), 0);
      if (m.cols > 0 && rank(m) != m.cols) coh = false;  // injectivity
      himg[deg] = column_space(m);
      Mat<K> reps_p = hv.representatives.at(deg);
      Mat<K> reps_q = hv.representatives.count(k - deg)
                          ? hv.representatives.at(k - deg)
                          : Mat<K>::zero(p.complex.space.dim(k - deg), 0);
      hform[deg] = reps_p.transpose() * p.block(deg) * reps_q;
      hrad[deg] = kernel(hform[deg].transpose());
    }
    if (coh) {
      for (auto& [deg, unused] : hv.dims) {
        (void)unused;
        Mat<K> Wc = himg.count(k - deg) ? himg.at(k - deg)
                                        : Mat<K>::zero(hv.dims.count(k - deg)
                                                           ? hv.dims.at(k - deg)
                                                           : 0,
                                                       0);
        Mat<K> orth = kernel(Wc.transpose() * hform.at(k - deg));
        if (!span_equal(hcat(himg.at(deg), hrad.at(deg)), orth)) coh = false;
      }
    }
  }
  rep.cohomology_lagrangian = coh;
  return rep;
}

// ---------------------------------------------------------------------------
// JSON serialization: {degrees, labels, blocks}; rationals as "p/q" strings,
// complex as [re, im]. Stable field order via ordered_json.

using json = nlohmann::ordered_json;

inline json to_json(const Rat& x) { return rat_to_string(x); }
inline json to_json(const GaussRat& x) {
  if (x.im == 0) return rat_to_string(x.re);
  return json::array({rat_to_string(x.re), rat_to_string(x.im)});
}
inline json to_json(const std::complex<double>& x) {
  return json::array({x.real(), x.imag()});
}

template <class K>
json to_json(const Mat<K>& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows; ++i) {
    json r = json::array();
    for (int j = 0; j < m.cols; ++j) r.push_back(to_json(m(i, j)));
    rows.push_back(r);
  }
  return json{{"rows", m.rows}, {"cols", m.cols}, {"entries", rows}};
}

inline json to_json(const GradedVectorSpace& v) {
  json degrees = json::object();
  for (auto& [k, d] : v.dims) degrees[std::to_string(k)] = d;
  json labels = json::object();
  for (auto& [k, l] : v.labels) labels[std::to_string(k)] = l;
  return json{{"degrees", degrees}, {"labels", labels}};
}

template <class K>
json to_json(const LinearMap<K>& f) {
  json blocks = json::object();
  for (auto& [p, m] : f.blocks) blocks[std::to_string(p)] = to_json(m);
  return json{{"source", to_json(f.source)},
              {"target", to_json(f.target)},
              {"degree", f.degree},
              {"blocks", blocks}};
}

template <class K>
json to_json(const CochainComplex<K>& c) {
  return json{{"space", to_json(c.space)}, {"differential", to_json(c.d)}};
}

inline json to_json(const DSquaredReport& r) {
  json res = json::object();
  for (auto& [k, v] : r.residuals) res[std::to_string(k)] = v;
  return json{{"ok", r.ok}, {"residuals", res}};
}

template <class K>
json to_json(const PairingReport<K>& r) {
  json rad = json::object();
  for (auto& [k, v] : r.radical_dims) rad[std::to_string(k)] = v;
  return json{{"skew", r.skew},
              {"d_compatible", r.d_compatible},
              {"max_skew_residual", r.max_skew_residual},
              {"max_d_residual", r.max_d_residual},
              {"radical_dims", rad}};
}

template <class K>
json to_json(const LagrangianReport<K>& r) {
  json img = json::object(), rad = json::object();
  for (auto& [k, v] : r.image_dims) img[std::to_string(k)] = v;
  for (auto& [k, v] : r.radical_dims) rad[std::to_string(k)] = v;
  return json{{"isotropic", r.isotropic},
              {"strict_self_perp", r.strict_self_perp},
              {"cohomology_lagrangian", r.cohomology_lagrangian},
              {"modulo_radical", r.modulo_radical},
              {"image_dims", img},
              {"radical_dims", rad}};
}

}  // namespace dwb
