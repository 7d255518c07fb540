#include "scalar_defect.hpp"

#include <stdexcept>

namespace dwb {

namespace {

Rat rat_pow(const Rat& x, int n) {
  Rat y = 1;
  for (int i = 0; i < n; ++i) y *= x;
  return y;
}

Rat binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  Rat b = 1;
  for (int i = 0; i < k; ++i) b = b * Rat(n - i) / Rat(i + 1);
  return b;
}

}  // namespace

FourierJet::FourierJet(Rat radius, int order, int modes)
    : R(std::move(radius)), M(order), K(modes), exact_order(order) {
  if (R <= 0) throw std::domain_error("jet radius must be positive");
  if (M < 0 || K < 0) throw std::domain_error("jet truncation must be nonnegative");
  coef.assign(static_cast<size_t>(M + 1) * (2 * K + 1), GaussRat());
}

GaussRat& FourierJet::a(int m, int k) {
  return coef[static_cast<size_t>(m) * (2 * K + 1) + (k + K)];
}
const GaussRat& FourierJet::a(int m, int k) const {
  return coef[static_cast<size_t>(m) * (2 * K + 1) + (k + K)];
}

bool FourierJet::is_zero_up_to(int order) const {
  for (int m = 0; m <= std::min(order, M); ++m)
    for (int k = -K; k <= K; ++k)
      if (!a(m, k).is_zero()) return false;
  return true;
}

std::set<int> FourierJet::support() const {
  std::set<int> s;
  for (int k = -K; k <= K; ++k)
    for (int m = 0; m <= M; ++m)
      if (!a(m, k).is_zero()) {
        s.insert(k);
        break;
      }
  return s;
}

FourierJet jet_constant(const Rat& R, int M, int K) {
  FourierJet j(R, M, K);
  j.a(0, 0) = GaussRat(1);
  return j;
}

FourierJet jet_tpow(const Rat& R, int M, int K, int m, int k) {
  if (m > M || std::abs(k) > K) throw std::out_of_range("jet_tpow outside truncation");
  FourierJet j(R, M, K);
  j.a(m, k) = GaussRat(1);
  return j;
}

FourierJet jet_r_harmonic(const Rat& R, int M, int K, int k) {
  if (std::abs(k) > K) throw std::out_of_range("mode outside truncation");
  FourierJet j(R, M, K);
  int n = std::abs(k);
  for (int m = 0; m <= std::min(M, n); ++m) j.a(m, k) = GaussRat(binom(n, m) * rat_pow(R, n - m));
  return j;
}

FourierJet jet_log(const Rat& R, int M, int K) {
  FourierJet j(R, M, K);
  for (int m = 1; m <= M; ++m) {
    Rat c = Rat(1) / (Rat(m) * rat_pow(R, m));
    if (m % 2 == 0) c = -c;
    j.a(m, 0) = GaussRat(c);
  }
  return j;
}

FourierJet jet_add(const FourierJet& x, const FourierJet& y) {
  if (x.R != y.R || x.M != y.M || x.K != y.K) throw std::invalid_argument("jet shape mismatch");
  FourierJet z = x;
  z.exact_order = std::min(x.exact_order, y.exact_order);
  for (size_t i = 0; i < z.coef.size(); ++i) z.coef[i] += y.coef[i];
  return z;
}

FourierJet jet_scale(const GaussRat& s, FourierJet x) {
  for (auto& c : x.coef) c *= s;
  return x;
}

MatQ jet_operator_block(const Rat& R, int M, int k) {
  if (M < 2) throw std::domain_error("jet operator needs order M >= 2");
  if (R <= 0) throw std::domain_error("jet radius must be positive");
  MatQ D(M - 1, M + 1);
  // coefficient of t^m in D(t^{m'}), with 1/(R+t) expanded as the
  // alternating geometric series (1/R) sum (-t/R)^j
  for (int m = 0; m <= M - 2; ++m) {
    if (m + 2 <= M) D(m, m + 2) += GaussRat(Rat((m + 2) * (m + 1)));
    for (int mp = 1; mp <= std::min(m + 1, M); ++mp) {
      int jj = m + 1 - mp;  // g_R term: t^jj from the series, d/dt drops one order
      Rat c = Rat(mp) / rat_pow(R, jj + 1);
      if (jj % 2 != 0) c = -c;
      D(m, mp) += GaussRat(c);
    }
    if (k != 0) {
      for (int mp = 0; mp <= std::min(m, M); ++mp) {
        int jj = m - mp;  // g_R^2 = sum (j+1)(-1)^j t^j / R^{j+2}
        Rat c = -Rat(k) * Rat(k) * Rat(jj + 1) / rat_pow(R, jj + 2);
        if (jj % 2 != 0) c = -c;
        D(m, mp) += GaussRat(c);
      }
    }
  }
  return D;
}

FourierJet apply_D(const FourierJet& j) {
  if (j.M < 2) throw std::domain_error("apply_D needs order M >= 2");
  FourierJet out(j.R, j.M, j.K);
  out.exact_order = std::min(j.exact_order, j.M) - 2;
  for (int k = -j.K; k <= j.K; ++k) {
    MatQ D = jet_operator_block(j.R, j.M, k);
    std::vector<GaussRat> v(j.M + 1);
    for (int m = 0; m <= j.M; ++m) v[m] = j.a(m, k);
    std::vector<GaussRat> w = D.apply(v);
    for (int m = 0; m <= j.M - 2; ++m) out.a(m, k) = w[m];
  }
  return out;
}

KernelReport kernel_report(const Rat& R, int K, int M) {
  KernelReport rep;
  rep.R = R;
  rep.K = K;
  rep.M = M;
  for (int k = -K; k <= K; ++k) {
    KernelModeReport mr;
    mr.k = k;
    MatQ D = jet_operator_block(R, M, k);
    mr.basis = kernel(D);
    mr.dim = mr.basis.cols;
    MatQ row0(1, mr.basis.cols), rows01(2, mr.basis.cols);
    for (int c = 0; c < mr.basis.cols; ++c) {
      row0(0, c) = mr.basis(0, c);
      rows01(0, c) = mr.basis(0, c);
      rows01(1, c) = mr.basis(1, c);
    }
    mr.t0_injective = rank(row0) == mr.dim;
    mr.t01_injective = rank(rows01) == mr.dim;
    rep.modes.push_back(mr);
  }

  rep.harmonic_jets_in_kernel = true;
  for (int k = -K; k <= K; ++k) {
    FourierJet h = jet_r_harmonic(R, M, K, k);
    if (!apply_D(h).is_zero_up_to(M - 2)) rep.harmonic_jets_in_kernel = false;
  }
  rep.log_jet_in_kernel = apply_D(jet_log(R, M, K)).is_zero_up_to(M - 2);
  return rep;
}

SurjectivityReport surjectivity_report(const Rat& R, int K, int M) {
  SurjectivityReport rep;
  rep.R = R;
  rep.K = K;
  rep.M = M;
  rep.surjective = true;
  for (int k = -K; k <= K; ++k) {
    MatQ D = jet_operator_block(R, M, k);
    int cok = D.rows - rank(D);
    rep.cokernel_dims[k] = cok;
    if (cok != 0) rep.surjective = false;
  }
  return rep;
}

GaussRat omega_D(int k, int l) {
  if (l != -k || k == 0) return GaussRat(0);
  return GaussRat(k > 0 ? 1 : -1);
}

MatQ omega_D_matrix(int K) {
  MatQ W(2 * K + 1, 2 * K + 1);
  for (int k = -K; k <= K; ++k)
    for (int l = -K; l <= K; ++l) W(k + K, l + K) = omega_D(k, l);
  return W;
}

int omega_D_radical_dim(int K) {
  MatQ W = omega_D_matrix(K);
  return W.cols - rank(W);
}

void SpectralSet::validate() const {
  for (int k : S) {
    if (k == 0) throw std::domain_error("spectral set may not contain 0");
    if (std::abs(k) > K) throw std::domain_error("spectral set mode outside truncation");
  }
  for (int k = 1; k <= K; ++k) {
    bool pos = S.count(k) > 0, neg = S.count(-k) > 0;
    if (pos == neg)
      throw std::domain_error("spectral set must contain exactly one of k, -k");
  }
}

SpectralReport spectral_lagrangian_check(const SpectralSet& S) {
  S.validate();
  SpectralReport rep;
  const int K = S.K;
  std::vector<int> modes;
  for (int k = -K; k <= K; ++k)
    if (k != 0 && !S.S.count(k)) modes.push_back(k);
  rep.dim = static_cast<int>(modes.size());
  MatQ B(2 * K + 1, rep.dim);
  for (int c = 0; c < rep.dim; ++c) B(modes[c] + K, c) = GaussRat(1);
  MatQ g = B.transpose() * omega_D_matrix(K) * B;
  rep.isotropic = g.is_zero();
  rep.half_dimensional = (rep.dim == K);
  return rep;
}

HarmonicReport harmonic_lagrangian(int K, int M, const Rat& R) {
  HarmonicReport rep;
  rep.K = K;
  rep.M = M;
  rep.R = R;
  rep.members_in_kernel = true;
  MatQ t0(2 * K + 1, 2 * K + 1);
  for (int k = -K; k <= K; ++k) {
    FourierJet h = jet_r_harmonic(R, M, K, k);
    if (!apply_D(h).is_zero_up_to(M - 2)) rep.members_in_kernel = false;
    for (int l = -K; l <= K; ++l) t0(l + K, k + K) = h.a(0, l);
  }
  rep.t0_dim = rank(t0);
  MatQ g = t0.transpose() * omega_D_matrix(K) * t0;
  rep.t0_isotropic = g.is_zero();
  return rep;
}

bool scaling_law_holds(const Rat& R, const Rat& lambda, int M, int k) {
  if (lambda <= 0) throw std::domain_error("scaling factor must be positive");
  MatQ D1 = jet_operator_block(R, M, k);
  MatQ D2 = jet_operator_block(lambda * R, M, k);
  // substituting t = lambda tau turns D at radius lambda R into lambda^{-2}
  // times D at radius R, so D2(m, m') = lambda^{m' - m - 2} D1(m, m')
  for (int m = 0; m < D1.rows; ++m)
    for (int mp = 0; mp < D1.cols; ++mp) {
      Rat s = rat_pow(lambda, mp) / rat_pow(lambda, m) / (lambda * lambda);
      GaussRat want = GaussRat(s) * D1(m, mp);
      if (!(D2(m, mp) == want)) return false;
    }
  return true;
}

json scalar_defect_report(const Rat& R, int K, int M) {
  KernelReport kr = kernel_report(R, K, M);
  SurjectivityReport sr = surjectivity_report(R, K, M);
  HarmonicReport hr = harmonic_lagrangian(K, M, R);

  json modes = json::array();
  for (auto& m : kr.modes)
    modes.push_back(json{{"k", m.k},
                         {"kernel_dim", m.dim},
                         {"t0_injective", m.t0_injective},
                         {"t01_injective", m.t01_injective}});
  json cok = json::object();
  for (auto& [k, d] : sr.cokernel_dims) cok[std::to_string(k)] = d;

  SpectralSet trivial;
  trivial.K = K;
  for (int k = 1; k <= K; ++k) trivial.S.insert(-k);
  SpectralReport sp = spectral_lagrangian_check(trivial);

  return json{{"radius", rat_to_string(R)},
              {"modes", K},
              {"order", M},
              {"exact_order", M - 2},
              {"surjective", sr.surjective},
              {"cokernel_dims", cok},
              {"kernel_modes", modes},
              {"harmonic_jets_in_kernel", kr.harmonic_jets_in_kernel},
              {"log_jet_in_kernel", kr.log_jet_in_kernel},
              {"omega_radical_dim", omega_D_radical_dim(K)},
              {"trivial_spectral_set",
               json{{"isotropic", sp.isotropic},
                    {"half_dimensional", sp.half_dimensional},
                    {"dim", sp.dim}}},
              {"harmonic_lagrangian",
               json{{"members_in_kernel", hr.members_in_kernel},
                    {"t0_dim", hr.t0_dim},
                    {"t0_isotropic", hr.t0_isotropic}}}};
}

}  // namespace dwb
