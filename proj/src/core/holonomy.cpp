#include "holonomy.hpp"

#include <cmath>
#include <stdexcept>

namespace dwb {

void LoopConnection::validate() const {
  if (seg.size() != len.size()) throw StructuralError("segment/length count mismatch");
  if (seg.empty()) throw StructuralError("loop needs at least one segment");
  const auto n = seg.front().rows();
  for (const auto& a : seg)
    if (a.rows() != a.cols() || a.rows() != n)
      throw StructuralError("loop samples must be square matrices of one size");
  for (double d : len)
    if (!(d > 0)) throw StructuralError("segment lengths must be positive");
}

double LoopConnection::total_length() const {
  double s = 0;
  for (double d : len) s += d;
  return s;
}

CMat expm(const CMat& a) {
  if (a.rows() != a.cols()) throw StructuralError("expm needs a square matrix");
  const auto n = a.rows();
  // Pade(13,13) with scaling and squaring; theta_13 from Higham's analysis.
  static const double theta13 = 5.371920351148152;
  static const double b[] = {64764752532480000., 32382376266240000., 7771770303897600.,
                             1187353796428800.,  129060195264000.,   10559470521600.,
                             670442572800.,      33522128640.,       1323241920.,
                             40840800.,          960960.,            16380.,
                             182.,               1.};
  double norm = a.cwiseAbs().rowwise().sum().maxCoeff();  // induced inf-norm
  int s = 0;
  if (norm > theta13) s = std::max(0, static_cast<int>(std::ceil(std::log2(norm / theta13))));
  CMat A = a / std::pow(2.0, s);
  CMat A2 = A * A;
  CMat A4 = A2 * A2;
  CMat A6 = A4 * A2;
  CMat I = CMat::Identity(n, n);
  CMat U = A * (A6 * (b[13] * A6 + b[11] * A4 + b[9] * A2) + b[7] * A6 + b[5] * A4 +
                b[3] * A2 + b[1] * I);
  CMat V = A6 * (b[12] * A6 + b[10] * A4 + b[8] * A2) + b[6] * A6 + b[4] * A4 + b[2] * A2 +
           b[0] * I;
  CMat R = (V - U).partialPivLu().solve(V + U);
  for (int i = 0; i < s; ++i) R = R * R;
  return R;
}

CMat monodromy(const LoopConnection& c) {
  c.validate();
  const auto n = c.seg.front().rows();
  CMat g = CMat::Identity(n, n);
  for (size_t i = 0; i < c.seg.size(); ++i) g = expm(c.seg[i] * c.len[i]) * g;
  return g;
}

LoopConnection refine(const LoopConnection& c, int pieces) {
  if (pieces < 1) throw std::invalid_argument("refinement factor must be positive");
  LoopConnection out;
  for (size_t i = 0; i < c.seg.size(); ++i)
    for (int p = 0; p < pieces; ++p) {
      out.seg.push_back(c.seg[i]);
      out.len.push_back(c.len[i] / pieces);
    }
  return out;
}

LoopConnection sample_loop(const std::function<CMat(double)>& a, double length, int n) {
  if (n < 1) throw std::invalid_argument("sample count must be positive");
  LoopConnection c;
  double h = length / n;
  for (int i = 0; i < n; ++i) {
    c.seg.push_back(a((i + 0.5) * h));
    c.len.push_back(h);
  }
  return c;
}

std::vector<std::complex<double>> char_poly(const CMat& g) {
  if (g.rows() != g.cols()) throw StructuralError("char_poly needs a square matrix");
  const auto n = g.rows();
  // Faddeev-LeVerrier: c_0 = 1, M_1 = g, c_k = -tr(g M_k)/k,
  // M_{k+1} = g M_k + c_k I.
  std::vector<std::complex<double>> c(n + 1);
  c[0] = 1.0;
  CMat M = CMat::Identity(n, n);
  for (int k = 1; k <= n; ++k) {
    M = g * M;
    c[k] = -M.trace() / static_cast<double>(k);
    M += c[k] * CMat::Identity(n, n);
  }
  return c;
}

std::complex<double> wilson_loop(const LoopConnection& c) { return monodromy(c).trace(); }

LoopConnection gauge_transform(const LoopConnection& c, const CMat& h) {
  c.validate();
  if (h.rows() != h.cols() || h.rows() != c.seg.front().rows())
    throw StructuralError("gauge transformation shape mismatch");
  CMat hinv = h.partialPivLu().inverse();
  LoopConnection out = c;
  for (auto& a : out.seg) a = h * a * hinv;
  return out;
}

LoopConnection u1_loop(double flux, int weight, int segments, double length) {
  LoopConnection c;
  std::complex<double> a(0.0, weight * flux / length);
  for (int i = 0; i < segments; ++i) {
    CMat m(1, 1);
    m(0, 0) = a;
    c.seg.push_back(m);
    c.len.push_back(length / segments);
  }
  return c;
}

std::vector<CMat> algebra_rep(const std::string& name) {
  using namespace std::complex_literals;
  if (name == "u1") {
    CMat m(1, 1);
    m(0, 0) = 1i;
    return {m};
  }
  if (name.rfind("abelian", 0) == 0) {
    int n = name.size() > 7 ? std::stoi(name.substr(7)) : 1;
    std::vector<CMat> out;
    for (int k = 0; k < n; ++k) {
      CMat m = CMat::Zero(n, n);
      m(k, k) = 1i;
      out.push_back(m);
    }
    return out;
  }
  if (name == "sl2") {
    CMat h = CMat::Zero(2, 2), e = CMat::Zero(2, 2), f = CMat::Zero(2, 2);
    h(0, 0) = 1;
    h(1, 1) = -1;
    e(0, 1) = 1;
    f(1, 0) = 1;
    return {h, e, f};
  }
  if (name == "heisenberg") {
    CMat x = CMat::Zero(3, 3), y = CMat::Zero(3, 3), z = CMat::Zero(3, 3);
    x(0, 1) = 1;
    y(1, 2) = 1;
    z(0, 2) = 1;
    return {x, y, z};
  }
  throw std::invalid_argument("no matrix realization for algebra: " + name);
}

double refinement_slope(const std::function<CMat(double)>& a, double length, int base,
                        int levels) {
  CMat ref = monodromy(sample_loop(a, length, base << (levels + 4)));
  std::vector<double> xs, ys;
  for (int k = 1; k <= levels; ++k) {
    int n = base << k;
    CMat g = monodromy(sample_loop(a, length, n));
    double err = (g - ref).cwiseAbs().maxCoeff();
    if (err <= 1e-15) continue;  // already at machine precision
    xs.push_back(std::log(length / n));
    ys.push_back(std::log(err));
  }
  if (xs.size() < 2) return 2.0;  // converged beyond measurability
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  double n = static_cast<double>(xs.size());
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

json to_json(const LoopConnection& c) {
  json segs = json::array();
  for (size_t i = 0; i < c.seg.size(); ++i) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < c.seg[i].rows(); ++r) {
      json row = json::array();
      for (Eigen::Index q = 0; q < c.seg[i].cols(); ++q)
        row.push_back(json{{"re", c.seg[i](r, q).real()}, {"im", c.seg[i](r, q).imag()}});
      rows.push_back(row);
    }
    segs.push_back(json{{"matrix", rows}, {"length", c.len[i]}});
  }
  return json{{"segments", segs}};
}

json monodromy_report(const LoopConnection& c) {
  CMat g = monodromy(c);
  json rows = json::array();
  for (Eigen::Index r = 0; r < g.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index q = 0; q < g.cols(); ++q)
      row.push_back(json{{"re", g(r, q).real()}, {"im", g(r, q).imag()}});
    rows.push_back(row);
  }
  auto cp = char_poly(g);
  json poly = json::array();
  for (auto& z : cp) poly.push_back(json{{"re", z.real()}, {"im", z.imag()}});
  return json{{"monodromy", rows},
              {"char_poly", poly},
              {"trace", json{{"re", g.trace().real()}, {"im", g.trace().imag()}}},
              {"loop_length", c.total_length()}};
}

}  // namespace dwb
