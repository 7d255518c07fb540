#include "doctest.h"

#include "core/scalar_defect.hpp"

using namespace dwb;

TEST_CASE("jet operator block shape and an explicit column") {
  Rat R(1);
  int M = 6, k = 2;
  MatQ B = jet_operator_block(R, M, k);
  CHECK(B.rows == M - 1);  // orders 0..M-2
  CHECK(B.cols == M + 1);  // orders 0..M
  // D t^2 in mode 0: second derivative 2 plus g_R(t) * 2t; at order 0 the
  // coefficient is 2, at order 1 it is 2/R = 2
  MatQ B0 = jet_operator_block(R, M, 0);
  FourierJet t2 = jet_tpow(R, M, 0, 2, 0);
  FourierJet Dt2 = apply_D(t2);
  CHECK(Dt2.a(0, 0) == GaussRat(2));
  CHECK(Dt2.a(1, 0) == GaussRat(2));
  (void)B0;
}

TEST_CASE("harmonic jets lie in the kernel") {
  Rat R(1);
  int M = 8, K = 5;
  for (int k = -K; k <= K; ++k) {
    FourierJet h = jet_r_harmonic(R, M, K, k);
    FourierJet Dh = apply_D(h);
    CAPTURE(k);
    CHECK(Dh.is_zero_up_to(M - 2));
  }
  FourierJet lg = jet_log(R, M, K);
  CHECK(apply_D(lg).is_zero_up_to(M - 2));
}

TEST_CASE("kernel and surjectivity reports at the reference truncation") {
  Rat R(1);
  KernelReport kr = kernel_report(R, 5, 8);
  CHECK(kr.harmonic_jets_in_kernel);
  CHECK(kr.log_jet_in_kernel);
  for (auto& m : kr.modes) {
    CAPTURE(m.k);
    CHECK(m.dim >= 1);
    CHECK(m.basis.cols == m.dim);
  }
  SurjectivityReport sr = surjectivity_report(R, 5, 8);
  CHECK(sr.surjective);
  for (auto& [k, d] : sr.cokernel_dims) {
    CAPTURE(k);
    CHECK(d == 0);
  }
}

TEST_CASE("boundary pairing omega_D") {
  CHECK(omega_D(2, -2) == GaussRat(1));
  CHECK(omega_D(-2, 2) == GaussRat(-1));
  CHECK(omega_D(1, 3) == GaussRat(0));
  CHECK(omega_D(0, 0) == GaussRat(0));
  for (int K : {1, 3, 5}) {
    MatQ W = omega_D_matrix(K);
    CHECK(W.rows == 2 * K + 1);
    // skew
    CHECK((W + W.transpose()).is_zero());
    // the radical is exactly the constant mode
    CHECK(omega_D_radical_dim(K) == 1);
  }
}

TEST_CASE("spectral sets validate and give isotropic halves") {
  SpectralSet s;
  s.K = 3;
  s.S = {1, -2, 3};
  s.validate();
  SpectralReport r = spectral_lagrangian_check(s);
  CHECK(r.isotropic);
  CHECK(r.half_dimensional);
  CHECK(r.dim == 3);

  SpectralSet bad;
  bad.K = 2;
  bad.S = {0, 1};
  CHECK_THROWS(bad.validate());
  SpectralSet both;
  both.K = 2;
  both.S = {1, -1};
  CHECK_THROWS(both.validate());
}

TEST_CASE("harmonic boundary values span all modes, hence are not isotropic") {
  HarmonicReport h = harmonic_lagrangian(4, 8, Rat(1));
  CHECK(h.members_in_kernel);
  // r^{|k|} e^{ik th} restricts to e^{ik th}, so the t^0 image is everything
  // and omega_D pairs k with -k nontrivially on it
  CHECK(h.t0_dim == 9);
  CHECK_FALSE(h.t0_isotropic);
}

TEST_CASE("scaling covariance of the defect operator") {
  for (int k : {0, 1, 3}) {
    CHECK(scaling_law_holds(Rat(1), Rat(2), 8, k));
    CHECK(scaling_law_holds(Rat(3, 2), Rat(1, 3), 8, k));
  }
}

TEST_CASE("aggregate report carries the headline facts") {
  json rep = scalar_defect_report(Rat(1), 3, 6);
  CHECK(rep["surjective"].get<bool>());
  CHECK(rep["harmonic_jets_in_kernel"].get<bool>());
  CHECK(rep["log_jet_in_kernel"].get<bool>());
  CHECK(rep["omega_radical_dim"].get<int>() == 1);
  CHECK(rep["trivial_spectral_set"]["isotropic"].get<bool>());
  CHECK(rep.contains("kernel_modes"));
  CHECK(rep["kernel_modes"].size() == 7);  // modes -3..3
}
