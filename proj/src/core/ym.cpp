#include "ym.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dwb {

namespace {

// Sorted index subsets of {0,1,2,3} of size p, lex order.
std::vector<std::vector<int>> form_basis(int p) {
  std::vector<std::vector<int>> out;
  for (int mask = 0; mask < 16; ++mask) {
    if (std::popcount(static_cast<unsigned>(mask)) != p) continue;
    std::vector<int> I;
    for (int j = 0; j < 4; ++j)
      if (mask & (1 << j)) I.push_back(j);
    out.push_back(I);
  }
  std::sort(out.begin(), out.end());
  return out;
}

int basis_index(const std::vector<std::vector<int>>& basis, const std::vector<int>& I) {
  return static_cast<int>(std::lower_bound(basis.begin(), basis.end(), I) - basis.begin());
}

}  // namespace

MatQ ext_d4(int p, const Mode4& k) {
  auto src = form_basis(p);
  auto tgt = form_basis(p + 1);
  MatQ d(static_cast<int>(tgt.size()), static_cast<int>(src.size()));
  for (size_t c = 0; c < src.size(); ++c) {
    const auto& I = src[c];
    for (int j = 0; j < 4; ++j) {
      if (std::find(I.begin(), I.end(), j) != I.end() || k[j] == 0) continue;
      std::vector<int> J = I;
      J.insert(std::lower_bound(J.begin(), J.end(), j), j);
      int below = static_cast<int>(std::lower_bound(I.begin(), I.end(), j) - I.begin());
      Rat s = below % 2 == 0 ? Rat(1) : Rat(-1);
      d(basis_index(tgt, J), static_cast<int>(c)) += GaussRat(Rat(0), s * Rat(k[j]));
    }
  }
  return d;
}

MatQ star2() {
  // basis (01, 02, 03, 12, 13, 23)
  MatQ s(6, 6);
  s(5, 0) = GaussRat(1);   // *01 = 23
  s(4, 1) = GaussRat(-1);  // *02 = -13
  s(3, 2) = GaussRat(1);   // *03 = 12
  s(2, 3) = GaussRat(1);   // *12 = 03
  s(1, 4) = GaussRat(-1);  // *13 = -02
  s(0, 5) = GaussRat(1);   // *23 = 01
  return s;
}

MatQ sd_embed() {
  // s_1 = 01 + 23, s_2 = 02 - 13, s_3 = 03 + 12
  MatQ e(6, 3);
  e(0, 0) = GaussRat(1);
  e(5, 0) = GaussRat(1);
  e(1, 1) = GaussRat(1);
  e(4, 1) = GaussRat(-1);
  e(2, 2) = GaussRat(1);
  e(3, 2) = GaussRat(1);
  return e;
}

MatQ sd_restrict() {
  // a self-dual form has components (a1, a2, a3, a3, -a2, a1)
  MatQ r(3, 6);
  r(0, 0) = GaussRat(1);
  r(1, 1) = GaussRat(1);
  r(2, 2) = GaussRat(1);
  return r;
}

MatQ sd_projector() {
  MatQ I = MatQ::identity(6);
  return GaussRat(Rat(1, 2)) * (I + star2());
}

std::vector<Mode4> YMComplex::modes() const {
  std::vector<Mode4> out;
  for (int a = -cutoff; a <= cutoff; ++a)
    for (int b = -cutoff; b <= cutoff; ++b)
      for (int cc = -cutoff; cc <= cutoff; ++cc)
        for (int d = -cutoff; d <= cutoff; ++d) out.push_back({a, b, cc, d});
  return out;
}

MatQ YMComplex::d_minus1(const Mode4& k) const {
  MatQ d(7, 1);
  MatQ d0 = ext_d4(0, k);
  for (int r = 0; r < 4; ++r) d(r, 0) = d0(r, 0);
  return d;
}

MatQ YMComplex::d_zero(const Mode4& k) const {
  MatQ d(7, 7);
  MatQ plus = sd_restrict() * sd_projector() * ext_d4(1, k);  // 3 x 4
  for (int r = 0; r < 3; ++r)
    for (int q = 0; q < 4; ++q) d(r, q) = plus(r, q);
  for (int r = 0; r < 3; ++r) d(r, 4 + r) = GaussRat(-c);  // -c.star on O^2+
  MatQ db = ext_d4(2, k) * sd_embed();  // 4 x 3
  for (int r = 0; r < 4; ++r)
    for (int q = 0; q < 3; ++q) d(3 + r, 4 + q) = db(r, q);
  return d;
}

MatQ YMComplex::d_plus1(const Mode4& k) const {
  MatQ d(1, 7);
  MatQ d3 = ext_d4(3, k);
  for (int q = 0; q < 4; ++q) d(0, 3 + q) = d3(0, q);
  return d;
}

YMComplex build_ym_complex(int cutoff, const Rat& c) {
  if (cutoff < 1) throw std::domain_error("mode cutoff must be >= 1");
  YMComplex ym;
  ym.cutoff = cutoff;
  ym.c = c;
  return ym;
}

YMReport check_ym_complex(const YMComplex& ym) {
  YMReport rep;
  MatQ P = sd_projector();
  rep.projector_idempotent = (P * P - P).is_zero();
  rep.star_fixes_projector = (star2() * P - P).is_zero();

  rep.d_squared_zero = true;
  rep.block_split = true;
  for (const auto& k : ym.modes()) {
    MatQ dm = ym.d_minus1(k), d0 = ym.d_zero(k), d1 = ym.d_plus1(k);
    if (!(d0 * dm).is_zero() || !(d1 * d0).is_zero()) rep.d_squared_zero = false;
    for (int r = 0; r < 3; ++r)
      if (!d0(r, 4 + r).is_zero()) rep.block_split = false;
  }

  // zero-mode A-row: all arrows vanish, cohomology is the cochain dimensions
  Mode4 zero{0, 0, 0, 0};
  MatQ dm = ym.d_minus1(zero), d0 = ym.d_zero(zero);
  MatQ a_arrow(3, 4);
  for (int r = 0; r < 3; ++r)
    for (int q = 0; q < 4; ++q) a_arrow(r, q) = d0(r, q);
  MatQ v_arrow(4, 1);
  for (int r = 0; r < 4; ++r) v_arrow(r, 0) = dm(r, 0);
  rep.zero_mode_a_row_cohomology[-1] = 1 - rank(v_arrow);
  rep.zero_mode_a_row_cohomology[0] = (4 - rank(v_arrow)) - rank(a_arrow);
  rep.zero_mode_a_row_cohomology[1] = 3 - rank(a_arrow);
  return rep;
}

namespace {

double field_max_abs(const std::vector<GaussRat>& v) {
  double m = 0;
  for (const auto& x : v) m = std::max(m, FieldOps<GaussRat>::abs_approx(x));
  return m;
}

std::vector<GaussRat> get_mode(const YMField& f, const Mode4& k, int dim) {
  auto it = f.find(k);
  if (it == f.end()) return std::vector<GaussRat>(dim);
  if (static_cast<int>(it->second.size()) != dim)
    throw std::invalid_argument("field component count mismatch");
  return it->second;
}

}  // namespace

YMResiduals eom_residuals_ym(const YMComplex& ym, const YMField& A, const YMField& B) {
  YMResiduals r;
  MatQ plus = sd_restrict() * sd_projector();
  for (const auto& k : ym.modes()) {
    std::vector<GaussRat> a = get_mode(A, k, 4), b = get_mode(B, k, 3);
    std::vector<GaussRat> pa = (plus * ext_d4(1, k)).apply(a);
    for (int j = 0; j < 3; ++j) pa[j] -= GaussRat(ym.c) * b[j];
    r.plus_eq = std::max(r.plus_eq, field_max_abs(pa));
    std::vector<GaussRat> db = (ext_d4(2, k) * sd_embed()).apply(b);
    r.b_eq = std::max(r.b_eq, field_max_abs(db));
  }
  return r;
}

YMField solve_b_from_a(const YMComplex& ym, const YMField& A) {
  if (ym.c == 0) throw std::domain_error("B = nabla_+ A / c needs c != 0");
  YMField B;
  MatQ plus = sd_restrict() * sd_projector();
  GaussRat inv(Rat(1) / ym.c);
  for (const auto& [k, a] : A) {
    std::vector<GaussRat> b = (plus * ext_d4(1, k)).apply(get_mode(A, k, 4));
    for (auto& x : b) x *= inv;
    B[k] = b;
  }
  return B;
}

// ---------------------------------------------------------------------------
// Cellular T^3 boundary model: three circles of two vertices / two edges;
// edge i runs from vertex i to vertex i+1 (mod 2).

namespace {

// T^3 cells of degree p: (direction subset, position in {0,1}^3); index =
// subset_index * 8 + pos with pos bits per direction.
const std::vector<std::vector<int>>& t3_dirsets(int p) {
  static const std::vector<std::vector<std::vector<int>>> sets = {
      {{}}, {{0}, {1}, {2}}, {{0, 1}, {0, 2}, {1, 2}}, {{0, 1, 2}}};
  return sets[p];
}

int t3_dim(int p) { return static_cast<int>(t3_dirsets(p).size()) * 8; }

int t3_index(int p, const std::vector<int>& S, int pos) {
  const auto& sets = t3_dirsets(p);
  int si = static_cast<int>(std::find(sets.begin(), sets.end(), S) - sets.begin());
  return si * 8 + pos;
}

// d of the dual of vertex i on one circle: -e_i + e_{i+1} read off from
// (d a)(e_j) = a(end j) - a(start j).
int circle_dv(int j, int i) { return j == i ? -1 : 1; }

MatQ t3_d(int p) {
  MatQ d(t3_dim(p + 1), t3_dim(p));
  for (const auto& S : t3_dirsets(p))
    for (int pos = 0; pos < 8; ++pos) {
      int col = t3_index(p, S, pos);
      for (int dir = 0; dir < 3; ++dir) {
        if (std::find(S.begin(), S.end(), dir) != S.end()) continue;
        int koszul = static_cast<int>(std::count_if(S.begin(), S.end(),
                                                    [&](int s) { return s < dir; }));
        std::vector<int> Sp = S;
        Sp.insert(std::lower_bound(Sp.begin(), Sp.end(), dir), dir);
        int i = (pos >> dir) & 1;
        for (int j = 0; j < 2; ++j) {
          int posp = (pos & ~(1 << dir)) | (j << dir);
          Rat coef = Rat(circle_dv(j, i)) * (koszul % 2 == 0 ? Rat(1) : Rat(-1));
          d(t3_index(p + 1, Sp, posp), col) += GaussRat(coef);
        }
      }
    }
  return d;
}

// Wedge-integrate pairing of a p-cochain with a (3-p)-cochain: factorwise
// circle pairings <v_i, e_j> = delta_ij, <e_i, v_j> = delta_{j, i+1}, with
// the Koszul interleaving sign.
MatQ t3_pair(int p) {
  MatQ P(t3_dim(p), t3_dim(3 - p));
  for (const auto& S : t3_dirsets(p))
    for (int pos = 0; pos < 8; ++pos) {
      // complement carries the edges of the second factor
      std::vector<int> Sc;
      for (int d = 0; d < 3; ++d)
        if (std::find(S.begin(), S.end(), d) == S.end()) Sc.push_back(d);
      int inter = 0;  // sum over d < d' of b_d a_{d'}
      for (int d = 0; d < 3; ++d)
        for (int dp = d + 1; dp < 3; ++dp) {
          bool bd = std::find(Sc.begin(), Sc.end(), d) != Sc.end();
          bool adp = std::find(S.begin(), S.end(), dp) != S.end();
          if (bd && adp) ++inter;
        }
      for (int posb = 0; posb < 8; ++posb) {
        bool hit = true;
        for (int d = 0; d < 3 && hit; ++d) {
          int a = (pos >> d) & 1, b = (posb >> d) & 1;
          if (std::find(S.begin(), S.end(), d) != S.end())
            hit = (b == (a + 1) % 2);  // <e_a, v_b>
          else
            hit = (a == b);  // <v_a, e_b>
        }
        if (hit)
          P(t3_index(p, S, pos), t3_index(3 - p, Sc, posb)) =
              GaussRat(inter % 2 == 0 ? 1 : -1);
      }
    }
  return P;
}

}  // namespace

bool t3_check_d2() {
  for (int p = 0; p <= 1; ++p)
    if (!(t3_d(p + 1) * t3_d(p)).is_zero()) return false;
  return true;
}

BoundaryYM build_boundary_ym() {
  BoundaryYM b;
  for (int p = 0; p <= 3; ++p) b.t3_dims[p] = t3_dim(p);

  GradedVectorSpace v;
  v.set(-1, t3_dim(0));
  v.set(0, t3_dim(1) + t3_dim(2));
  v.set(1, t3_dim(3));
  b.complex.init(v);
  MatQ d0 = t3_d(0), d2 = t3_d(2);
  MatQ dm(v.dim(0), v.dim(-1));
  for (int r = 0; r < d0.rows; ++r)
    for (int q = 0; q < d0.cols; ++q) dm(r, q) = d0(r, q);
  b.complex.d.set_block(-1, dm);
  MatQ dz(v.dim(1), v.dim(0));
  for (int r = 0; r < d2.rows; ++r)
    for (int q = 0; q < d2.cols; ++q) dz(r, t3_dim(1) + q) = d2(r, q);
  b.complex.d.set_block(0, dz);

  b.pairing.complex = b.complex;
  b.pairing.shift = 0;
  MatQ f_m1 = t3_pair(0);  // O^0 against z O^3
  b.pairing.set_block(-1, f_m1);
  b.pairing.set_block(1, f_m1.transpose());
  MatQ P = t3_pair(1);  // O^1 against z O^2
  MatQ f0(v.dim(0), v.dim(0));
  for (int r = 0; r < P.rows; ++r)
    for (int q = 0; q < P.cols; ++q) {
      f0(r, t3_dim(1) + q) = P(r, q);
      f0(t3_dim(1) + q, r) = -P(r, q);
    }
  b.pairing.set_block(0, f0);

  // the A-row inclusion
  GradedVectorSpace dv;
  dv.set(-1, t3_dim(0));
  dv.set(0, t3_dim(1));
  b.b0.domain.init(dv);
  b.b0.domain.d.set_block(-1, d0);
  b.b0.map.source = dv;
  b.b0.map.target = v;
  b.b0.map.degree = 0;
  b.b0.map.set_block(-1, MatQ::identity(t3_dim(0)));
  MatQ inc(v.dim(0), t3_dim(1));
  for (int r = 0; r < t3_dim(1); ++r) inc(r, r) = GaussRat(1);
  b.b0.map.set_block(0, inc);
  return b;
}

BoundaryReport check_boundary_b0(const BoundaryYM& b) {
  BoundaryReport rep;
  auto pr = check_pairing(b.pairing);
  rep.pairing_ok = pr.skew && pr.d_compatible;
  rep.chain_map = is_chain_map(b.b0.map, b.b0.domain, b.complex);
  auto lr = is_lagrangian(b.b0, b.pairing);
  rep.isotropic = lr.isotropic;
  rep.strict_self_perp = lr.strict_self_perp;
  int cand = 0, full = 0;
  for (auto& [deg, dim] : cohomology(b.b0.domain).dims) cand += dim;
  for (auto& [deg, dim] : cohomology(b.complex).dims) full += dim;
  rep.candidate_cohomology = cand;
  rep.boundary_cohomology = full;
  return rep;
}

LagrangianCandidate<GaussRat> b0_with_b_component(const BoundaryYM& b) {
  LagrangianCandidate<GaussRat> L = b.b0;
  GradedVectorSpace dv = L.domain.space;
  dv.set(0, dv.dim(0) + 1);
  CochainComplex<GaussRat> dom;
  dom.init(dv);
  // the adjoined vector is a z O^2 cocycle pairing nontrivially with O^1;
  // keep the domain differential zero into it so the map stays a chain map
  MatQ d0 = t3_d(0);
  MatQ dmm(dv.dim(0), dv.dim(-1));
  for (int r = 0; r < d0.rows; ++r)
    for (int q = 0; q < d0.cols; ++q) dmm(r, q) = d0(r, q);
  dom.d.set_block(-1, dmm);
  LagrangianCandidate<GaussRat> out;
  out.domain = dom;
  out.map.source = dv;
  out.map.target = b.complex.space;
  out.map.degree = 0;
  out.map.set_block(-1, MatQ::identity(t3_dim(0)));
  MatQ inc(b.complex.space.dim(0), dv.dim(0));
  for (int r = 0; r < t3_dim(1); ++r) inc(r, r) = GaussRat(1);
  // adjoin the constant-coefficient z O^2 cochain in directions (0,1): a
  // cocycle that pairs against the matching O^1 basis vectors
  for (int pos = 0; pos < 8; ++pos)
    inc(t3_dim(1) + t3_index(2, {0, 1}, pos), t3_dim(1)) = GaussRat(1);
  out.map.set_block(0, inc);
  return out;
}

// ---------------------------------------------------------------------------
// Dirac monopole quadrature.

double magnetic_charge(const MonopoleField& f, int n) {
  if (n < 8) throw std::domain_error("monopole grid needs n >= 8");
  const double pi = std::numbers::pi;
  double dth = pi / n, dph = 2 * pi / n;
  // product rule: open 2-point Gauss nodes per theta cell (poles excluded by
  // construction), midpoint in phi; pairwise-summed rows for bit stability
  const double off = 0.5 / std::sqrt(3.0);
  std::vector<double> rows(n);
  for (int a = 0; a < n; ++a) {
    double t0 = (a + 0.5 - off) * dth, t1 = (a + 0.5 + off) * dth;
    double cell = 0.5 * (std::sin(t0) + std::sin(t1)) * dth;
    rows[a] = (f.m / 2.0) * cell * dph * n;  // phi sum is n equal terms
  }
  for (int step = 1; step < n; step *= 2)
    for (int a = 0; a + step < n; a += 2 * step) rows[a] += rows[a + step];
  return rows[0] / (2 * pi);
}

double monopole_closedness(const MonopoleField& f, int n) {
  if (n < 8) throw std::domain_error("monopole grid needs n >= 8");
  const double pi = std::numbers::pi;
  double dth = pi / n, dph = 2 * pi / n;
  // dF = (d/dphi of the coefficient) dphi ^ dtheta ^ dphi plus the top-form
  // vanishing; on the chart the only possible obstruction is phi dependence
  double worst = 0;
  for (int a = 0; a < n; ++a) {
    double th = (a + 0.5) * dth;
    auto coef = [&](double) { return (f.m / 2.0) * std::sin(th); };
    for (int b = 0; b + 1 < n; ++b) {
      double p0 = (b + 0.5) * dph, p1 = (b + 1.5) * dph;
      worst = std::max(worst, std::abs(coef(p1) - coef(p0)) / dph);
    }
  }
  return worst;
}

double charge_convergence_slope(const MonopoleField& f, const std::vector<int>& grids) {
  std::vector<double> xs, ys;
  for (int n : grids) {
    double err = std::abs(magnetic_charge(f, n) - f.m);
    if (err <= 1e-15) continue;
    xs.push_back(std::log(static_cast<double>(n)));
    ys.push_back(std::log(err));
  }
  if (xs.size() < 2) return -2.0;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  double m = static_cast<double>(xs.size());
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

json dyonic_label(int m, int n, int grid, double flux) {
  MonopoleField f{m};
  double est = magnetic_charge(f, grid);
  bool mag_ok = std::abs(est - m) < 1e-6;
  auto E = u1_semidirect(n);
  auto jac = check_coupled_jacobi(E);
  auto w = wilson_loop(u1_loop(flux, n));
  auto want = std::exp(std::complex<double>(0.0, n * flux));
  bool wilson_ok = std::abs(w - want) < 1e-10;
  return json{{"charge", json::array({m, n})},
              {"trivial", m == 0 && n == 0},
              {"magnetic",
               json{{"charge", m}, {"estimate", est}, {"grid", grid}, {"ok", mag_ok}}},
              {"electric",
               json{{"weight", n},
                    {"jacobi_ok", jac.module_ok && jac.antisymmetric && jac.jacobi_ok},
                    {"wilson_phase", json{{"re", w.real()}, {"im", w.imag()}}},
                    {"flux", flux},
                    {"ok", wilson_ok}}},
              {"ok", mag_ok && wilson_ok && jac.jacobi_ok}};
}

json to_json(const YMReport& r) {
  json coh = json::object();
  for (auto& [deg, dim] : r.zero_mode_a_row_cohomology) coh[std::to_string(deg)] = dim;
  return json{{"d_squared_zero", r.d_squared_zero},
              {"projector_idempotent", r.projector_idempotent},
              {"star_fixes_projector", r.star_fixes_projector},
              {"block_split", r.block_split},
              {"zero_mode_a_row_cohomology", coh}};
}

json to_json(const BoundaryReport& r) {
  return json{{"pairing_ok", r.pairing_ok},
              {"chain_map", r.chain_map},
              {"isotropic", r.isotropic},
              {"strict_self_perp", r.strict_self_perp},
              {"candidate_cohomology", r.candidate_cohomology},
              {"boundary_cohomology", r.boundary_cohomology}};
}

}  // namespace dwb
