#include "lie.hpp"

#include <stdexcept>

namespace dwb {

namespace {

std::vector<Rat> column_vec(const MatR& m, int j) {
  std::vector<Rat> v(m.rows);
  for (int i = 0; i < m.rows; ++i) v[i] = m(i, j);
  return v;
}

}  // namespace

std::vector<Rat> LieAlgebraData::bracket(const std::vector<Rat>& x,
                                         const std::vector<Rat>& y) const {
  std::vector<Rat> z(dim, Rat(0));
  for (int i = 0; i < dim; ++i) {
    if (x[i] == 0) continue;
    for (int j = 0; j < dim; ++j) {
      if (y[j] == 0) continue;
      for (int k = 0; k < dim; ++k) z[k] += x[i] * y[j] * bracket_coef(i, j, k);
    }
  }
  return z;
}

void LieAlgebraData::validate() const {
  if (static_cast<int>(c.size()) != dim * dim * dim)
    throw StructuralError("structure constant table size mismatch");
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      for (int k = 0; k < dim; ++k)
        if (bracket_coef(i, j, k) != -bracket_coef(j, i, k))
          throw StructuralError("structure constants are not antisymmetric");
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      for (int k = 0; k < dim; ++k) {
        std::vector<Rat> jac(dim, Rat(0));
        for (int m = 0; m < dim; ++m)
          for (int l = 0; l < dim; ++l)
            jac[l] += bracket_coef(i, j, m) * bracket_coef(m, k, l) +
                      bracket_coef(j, k, m) * bracket_coef(m, i, l) +
                      bracket_coef(k, i, m) * bracket_coef(m, j, l);
        for (int l = 0; l < dim; ++l)
          if (jac[l] != 0) throw StructuralError("Jacobi identity fails");
      }
  if (kappa) {
    const MatR& K = *kappa;
    if (K.rows != dim || K.cols != dim) throw StructuralError("kappa shape mismatch");
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j)
        if (K(i, j) != K(j, i)) throw StructuralError("kappa is not symmetric");
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j)
        for (int k = 0; k < dim; ++k) {
          Rat s = 0;
          for (int m = 0; m < dim; ++m)
            s += bracket_coef(i, j, m) * K(m, k) + bracket_coef(i, k, m) * K(j, m);
          if (s != 0) throw StructuralError("kappa is not invariant");
        }
  }
}

LieAlgebraData LieAlgebraData::abelian(int n) {
  LieAlgebraData g;
  g.dim = n;
  g.c.assign(static_cast<size_t>(n) * n * n, Rat(0));
  for (int i = 0; i < n; ++i) g.labels.push_back("t" + std::to_string(i + 1));
  MatR K = MatR::identity(n);
  g.kappa = K;
  return g;
}

LieAlgebraData LieAlgebraData::sl2() {
  LieAlgebraData g;
  g.dim = 3;
  g.labels = {"h", "e", "f"};
  g.c.assign(27, Rat(0));
  g.bracket_coef(0, 1, 1) = 2;   // [h,e] = 2e
  g.bracket_coef(1, 0, 1) = -2;
  g.bracket_coef(0, 2, 2) = -2;  // [h,f] = -2f
  g.bracket_coef(2, 0, 2) = 2;
  g.bracket_coef(1, 2, 0) = 1;   // [e,f] = h
  g.bracket_coef(2, 1, 0) = -1;
  MatR K(3, 3);  // Killing form
  K(0, 0) = 8;
  K(1, 2) = 4;
  K(2, 1) = 4;
  g.kappa = K;
  return g;
}

LieAlgebraData LieAlgebraData::heisenberg() {
  LieAlgebraData g;
  g.dim = 3;
  g.labels = {"x", "y", "z"};
  g.c.assign(27, Rat(0));
  g.bracket_coef(0, 1, 2) = 1;  // [x,y] = z
  g.bracket_coef(1, 0, 2) = -1;
  return g;  // no nondegenerate invariant pairing exists
}

LieAlgebraData lie_by_name(const std::string& name) {
  if (name == "sl2") return LieAlgebraData::sl2();
  if (name == "heisenberg") return LieAlgebraData::heisenberg();
  if (name.rfind("abelian", 0) == 0) {
    int n = 1;
    if (name.size() > 7) n = std::stoi(name.substr(7));
    return LieAlgebraData::abelian(n);
  }
  if (name == "u1") return LieAlgebraData::abelian(1);
  throw std::invalid_argument("unknown Lie algebra: " + name);
}

// ---------------------------------------------------------------------------

MatQ matq_from(const MatR& m) {
  MatQ q(m.rows, m.cols);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) q(i, j) = GaussRat(m(i, j));
  return q;
}

ShiftedPairing<GaussRat> tstar_pairing(int n) {
  ShiftedPairing<GaussRat> p;
  GradedVectorSpace v;
  std::vector<std::string> lbl;
  for (int i = 0; i < n; ++i) lbl.push_back("x" + std::to_string(i + 1));
  for (int i = 0; i < n; ++i) lbl.push_back("xi" + std::to_string(i + 1));
  v.set(0, lbl);
  p.complex.init(v);
  p.shift = 0;
  MatQ F(2 * n, 2 * n);  // <(x,xi),(y,eta)> = xi(y) - eta(x)
  for (int i = 0; i < n; ++i) {
    F(i, n + i) = GaussRat(-1);
    F(n + i, i) = GaussRat(1);
  }
  p.set_block(0, F);
  return p;
}

namespace {

LagrangianCandidate<GaussRat> tstar_candidate(int n, const MatQ& block) {
  LagrangianCandidate<GaussRat> L;
  GradedVectorSpace dom;
  dom.set(0, block.cols);
  L.domain.init(dom);
  L.map.source = L.domain.space;
  L.map.target = tstar_pairing(n).complex.space;
  L.map.degree = 0;
  L.map.set_block(0, block);
  return L;
}

}  // namespace

LagrangianCandidate<GaussRat> bf_lagrangian_graph_with_form(int n, const Rat& s,
                                                            const MatR& form) {
  if (form.rows != n || form.cols != n) throw std::domain_error("form shape mismatch");
  MatQ block(2 * n, n);
  for (int j = 0; j < n; ++j) {
    block(j, j) = GaussRat(1);
    // xi = s kappa(e_j, .): component i is s kappa(j, i)
    for (int i = 0; i < n; ++i) block(n + i, j) = GaussRat(s * form(j, i));
  }
  return tstar_candidate(n, block);
}

LagrangianCandidate<GaussRat> bf_lagrangian_graph(const LieAlgebraData& g, const Rat& s) {
  if (!g.kappa) throw std::domain_error("bf_lagrangian_graph needs a pairing kappa");
  if (g.dim > 0 && rank(*g.kappa) != g.dim)
    throw std::domain_error("bf_lagrangian_graph needs nondegenerate kappa");
  return bf_lagrangian_graph_with_form(g.dim, s, *g.kappa);
}

LagrangianCandidate<GaussRat> bf_lagrangian_subalgebra(const LieAlgebraData& g,
                                                       const MatR& l_basis) {
  const int n = g.dim;
  if (l_basis.rows != n) throw std::domain_error("subalgebra basis row mismatch");
  for (int a = 0; a < l_basis.cols; ++a)
    for (int b = 0; b < l_basis.cols; ++b) {
      std::vector<Rat> br = g.bracket(column_vec(l_basis, a), column_vec(l_basis, b));
      MatR rhs(n, 1);
      for (int i = 0; i < n; ++i) rhs(i, 0) = br[i];
      if (!span_contains(l_basis, rhs))
        throw std::domain_error("not a subalgebra: bracket of basis columns " +
                                std::to_string(a) + ", " + std::to_string(b) + " escapes");
    }
  MatR ann = kernel(l_basis.transpose());  // xi with xi|_l = 0
  MatQ block(2 * n, l_basis.cols + ann.cols);
  for (int j = 0; j < l_basis.cols; ++j)
    for (int i = 0; i < n; ++i) block(i, j) = GaussRat(l_basis(i, j));
  for (int j = 0; j < ann.cols; ++j)
    for (int i = 0; i < n; ++i) block(n + i, l_basis.cols + j) = GaussRat(ann(i, j));
  return tstar_candidate(n, block);
}

// ---------------------------------------------------------------------------
// Cellular BF equations of motion.

GCochain gc_zero(const LieAlgebraData& g, const TensorIndex& idx, int degree) {
  GCochain x;
  x.degree = degree;
  x.comp.assign(g.dim, ProductCochain<GaussRat>{});
  size_t n = idx.cells.count(degree) ? idx.cells.at(degree).size() : 0;
  for (auto& c : x.comp) {
    c.degree = degree;
    c.coef.assign(n, GaussRat(0));
  }
  return x;
}

GCochain gc_d(const CochainComplex<GaussRat>& c, const GCochain& x) {
  GCochain y;
  y.degree = x.degree + 1;
  for (auto& comp : x.comp) y.comp.push_back(apply_d(c, comp));
  return y;
}

GCochain gc_bracket(const LieAlgebraData& g, const OneDModel& m1, const OneDModel& m2,
                    const TensorIndex& idx, const GCochain& x, const GCochain& y) {
  GCochain z = gc_zero(g, idx, x.degree + y.degree);
  for (int i = 0; i < g.dim; ++i)
    for (int j = 0; j < g.dim; ++j) {
      bool any = false;
      for (int k = 0; k < g.dim; ++k)
        if (g.bracket_coef(i, j, k) != 0) any = true;
      if (!any) continue;
      ProductCochain<GaussRat> w = cup_product(m1, m2, idx, x.comp[i], y.comp[j]);
      for (int k = 0; k < g.dim; ++k) {
        const Rat& ck = g.bracket_coef(i, j, k);
        if (ck == 0) continue;
        for (size_t t = 0; t < w.coef.size(); ++t)
          z.comp[k].coef[t] += GaussRat(ck) * w.coef[t];
      }
    }
  return z;
}

double gc_max_abs(const GCochain& x) {
  double m = 0;
  for (auto& c : x.comp)
    for (auto& v : c.coef) m = std::max(m, FieldOps<GaussRat>::abs_approx(v));
  return m;
}

BFResiduals eom_residuals_bf(const LieAlgebraData& g, const CochainComplex<GaussRat>& annulus,
                             const OneDModel& m1, const OneDModel& m2, const TensorIndex& idx,
                             const GCochain& A, const GCochain& B) {
  BFResiduals r;
  GCochain dA = gc_d(annulus, A);
  GCochain AA = gc_bracket(g, m1, m2, idx, A, A);
  GCochain F = dA;
  GaussRat half(Rat(1, 2));
  for (int k = 0; k < g.dim; ++k)
    for (size_t t = 0; t < F.comp[k].coef.size(); ++t)
      F.comp[k].coef[t] += half * AA.comp[k].coef[t];
  r.curvature = gc_max_abs(F);

  GCochain dB = gc_d(annulus, B);
  GCochain AB = gc_bracket(g, m1, m2, idx, A, B);
  for (int k = 0; k < g.dim; ++k)
    for (size_t t = 0; t < dB.comp[k].coef.size(); ++t)
      dB.comp[k].coef[t] += AB.comp[k].coef[t];
  r.covariant_const = gc_max_abs(dB);
  return r;
}

GCochain annulus_flat_cocycle(const LieAlgebraData& g, const OneDModel& m1, const OneDModel& m2,
                              const TensorIndex& idx, int dir) {
  if (dir < 0 || dir >= g.dim) throw std::out_of_range("Lie direction");
  GCochain A = gc_zero(g, idx, 1);
  const auto& cells = idx.cells.at(1);
  for (size_t t = 0; t < cells.size(); ++t) {
    auto [pa, ia, pb, ib] = cells[t];
    if (pa == 1 && pb == 0) A.comp[dir].coef[t] = GaussRat(1);
  }
  (void)m1;
  (void)m2;
  return A;
}

// ---------------------------------------------------------------------------
// Coupled dg Lie algebras.

CellAlgebra CellAlgebra::point() {
  CellAlgebra a;
  a.deg = {0};
  a.names = {"1"};
  a.mult[{0, 0}] = {{0, Rat(1)}};
  return a;
}

CellAlgebra CellAlgebra::circle() {
  CellAlgebra a;
  a.deg = {0, 1};
  a.names = {"1", "th"};
  a.mult[{0, 0}] = {{0, Rat(1)}};
  a.mult[{0, 1}] = {{1, Rat(1)}};
  a.mult[{1, 0}] = {{1, Rat(1)}};
  return a;  // th.th = 0
}

int CoupledDGLA::degree_of(int idx) const {
  if (idx < n_bulk()) return base.deg[idx / g.dim];
  int cell = (idx - n_bulk()) / v_dim;
  return base.deg[cell] + (parity == Parity::Odd ? 1 : 0);
}

std::string CoupledDGLA::name_of(int idx) const {
  if (idx < n_bulk())
    return base.names[idx / g.dim] + "." + g.labels[idx % g.dim];
  int off = idx - n_bulk();
  return base.names[off / v_dim] + ".v" + std::to_string(off % v_dim + 1);
}

std::vector<Rat> CoupledDGLA::bracket(int i, int j) const {
  std::vector<Rat> out(n_total(), Rat(0));
  bool bi = i < n_bulk(), bj = j < n_bulk();
  if (!bi && !bj) return out;  // defect part is abelian
  if (!bi && bj) {
    std::vector<Rat> rev = bracket(j, i);
    int s = (degree_of(i) * degree_of(j)) % 2 != 0 ? 1 : -1;
    for (auto& x : rev) x *= s;
    return rev;
  }
  int ca = i / g.dim, li = i % g.dim;
  if (bj) {
    int cb = j / g.dim, lj = j % g.dim;
    auto it = base.mult.find({ca, cb});
    if (it == base.mult.end()) return out;
    for (auto& [cell, coef] : it->second)
      for (int lk = 0; lk < g.dim; ++lk)
        out[cell * g.dim + lk] += coef * g.bracket_coef(li, lj, lk);
  } else {
    int off = j - n_bulk();
    int cb = off / v_dim, vj = off % v_dim;
    auto it = base.mult.find({ca, cb});
    if (it == base.mult.end()) return out;
    for (auto& [cell, coef] : it->second)
      for (int vi = 0; vi < v_dim; ++vi)
        out[n_bulk() + cell * v_dim + vi] += coef * rho[li](vi, vj);
  }
  return out;
}

CoupledDGLA coupled_dgla(const LieAlgebraData& g, const std::vector<MatR>& rho, int v_dim,
                         Parity parity, const CellAlgebra& base) {
  g.validate();
  if (static_cast<int>(rho.size()) != g.dim) throw std::domain_error("action table size mismatch");
  for (auto& m : rho)
    if (m.rows != v_dim || m.cols != v_dim) throw std::domain_error("action matrix shape");
  CoupledDGLA E;
  E.g = g;
  E.rho = rho;
  E.v_dim = v_dim;
  E.parity = parity;
  E.base = base;
  return E;
}

namespace {

std::vector<Rat> bracket_vec(const CoupledDGLA& E, int i, const std::vector<Rat>& v) {
  std::vector<Rat> out(E.n_total(), Rat(0));
  for (int j = 0; j < E.n_total(); ++j) {
    if (v[j] == 0) continue;
    std::vector<Rat> b = E.bracket(i, j);
    for (int k = 0; k < E.n_total(); ++k) out[k] += v[j] * b[k];
  }
  return out;
}

}  // namespace

JacobiReport check_coupled_jacobi(const CoupledDGLA& E) {
  JacobiReport rep;
  // module axiom: rho([x,y]) = [rho(x), rho(y)]
  for (int i = 0; i < E.g.dim && rep.module_ok; ++i)
    for (int j = 0; j < E.g.dim && rep.module_ok; ++j) {
      MatR lhs(E.v_dim, E.v_dim);
      for (int k = 0; k < E.g.dim; ++k)
        if (E.g.bracket_coef(i, j, k) != 0) lhs = lhs + E.g.bracket_coef(i, j, k) * E.rho[k];
      MatR rhs = E.rho[i] * E.rho[j] - E.rho[j] * E.rho[i];
      if (!(lhs - rhs).is_zero()) {
        rep.module_ok = false;
        rep.failing_triple = "module axiom at (" + E.g.labels[i] + ", " + E.g.labels[j] + ")";
      }
    }

  const int n = E.n_total();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      std::vector<Rat> a = E.bracket(i, j), b = E.bracket(j, i);
      int s = (E.degree_of(i) * E.degree_of(j)) % 2 != 0 ? -1 : 1;
      for (int k = 0; k < n; ++k)
        if (a[k] + Rat(s) * b[k] != 0) {
          rep.antisymmetric = false;
          if (rep.failing_triple.empty())
            rep.failing_triple = "antisymmetry at (" + E.name_of(i) + ", " + E.name_of(j) + ")";
        }
    }

  for (int i = 0; i < n && rep.jacobi_ok; ++i)
    for (int j = 0; j < n && rep.jacobi_ok; ++j)
      for (int k = 0; k < n; ++k) {
        std::vector<Rat> t1 = bracket_vec(E, i, E.bracket(j, k));
        std::vector<Rat> t2 = bracket_vec(E, j, E.bracket(i, k));
        std::vector<Rat> ij = E.bracket(i, j);
        std::vector<Rat> t3(n, Rat(0));
        for (int m = 0; m < n; ++m) {
          if (ij[m] == 0) continue;
          std::vector<Rat> b = E.bracket(m, k);
          for (int l = 0; l < n; ++l) t3[l] += ij[m] * b[l];
        }
        int s = (E.degree_of(i) * E.degree_of(j)) % 2 != 0 ? -1 : 1;
        bool fail = false;
        for (int l = 0; l < n; ++l)
          if (t1[l] - t3[l] - Rat(s) * t2[l] != 0) fail = true;
        if (fail) {
          rep.jacobi_ok = false;
          rep.failing_triple = "jacobi at (" + E.name_of(i) + ", " + E.name_of(j) + ", " +
                               E.name_of(k) + ")";
          break;
        }
      }
  return rep;
}

CoupledDGLA u1_semidirect(int n, Parity parity) {
  LieAlgebraData g = LieAlgebraData::abelian(1);
  g.labels = {"u"};
  MatR a(1, 1);
  a(0, 0) = n;
  return coupled_dgla(g, {a}, 1, parity, CellAlgebra::point());
}

// ---------------------------------------------------------------------------

double minimal_coupling_action(const std::vector<std::vector<double>>& psi,
                               const std::vector<Eigen::MatrixXd>& A, double L,
                               const Eigen::MatrixXd& inner) {
  if (psi.size() != A.size() || psi.size() < 2) throw std::invalid_argument("grid mismatch");
  const int N = static_cast<int>(psi.size()) - 1;
  const auto v_dim = inner.rows();
  double h = L / N;
  auto to_vec = [&](const std::vector<double>& x) {
    if (static_cast<Eigen::Index>(x.size()) != v_dim)
      throw std::invalid_argument("sample dimension mismatch");
    return Eigen::Map<const Eigen::VectorXd>(x.data(), v_dim);
  };
  double s = 0;
  for (int i = 0; i < N; ++i) {
    Eigen::VectorXd p0 = to_vec(psi[i]), p1 = to_vec(psi[i + 1]);
    Eigen::VectorXd mid = 0.5 * (p0 + p1);
    Eigen::VectorXd dpsi = (p1 - p0) / h;
    Eigen::VectorXd apsi = 0.5 * (A[i] * p0 + A[i + 1] * p1);
    s += mid.dot(inner * (dpsi + apsi)) * h;
  }
  return s;
}

json to_json(const LieAlgebraData& g) {
  json sc = json::array();
  for (int i = 0; i < g.dim; ++i)
    for (int j = 0; j < g.dim; ++j)
      for (int k = 0; k < g.dim; ++k)
        if (g.bracket_coef(i, j, k) != 0)
          sc.push_back(json{{"i", g.labels[i]},
                            {"j", g.labels[j]},
                            {"k", g.labels[k]},
                            {"c", rat_to_string(g.bracket_coef(i, j, k))}});
  json out{{"dim", g.dim}, {"labels", g.labels}, {"structure", sc}};
  out["has_kappa"] = static_cast<bool>(g.kappa);
  return out;
}

json to_json(const JacobiReport& r) {
  return json{{"module_ok", r.module_ok},
              {"antisymmetric", r.antisymmetric},
              {"jacobi_ok", r.jacobi_ok},
              {"failing_triple", r.failing_triple}};
}

json to_json(const BFResiduals& r) {
  return json{{"curvature", r.curvature}, {"covariant_const", r.covariant_const}};
}

}  // namespace dwb
