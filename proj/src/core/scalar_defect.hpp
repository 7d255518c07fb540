#pragma once

#include <set>

#include "graded.hpp"

namespace dwb {

// The scalar point defect on the disk of radius R: jets in t = r - R of
// fields near the boundary circle, the operator
//   D = d^2/dt^2 + g_R(t) d/dt + g_R(t)^2 d^2/dth^2,  g_R(t) = 1/(R + t),
// truncated at Fourier modes |k| <= K and power-series order M.

struct FourierJet {
  Rat R;
  int M = 0;
  int K = 0;
  int exact_order = 0;  // coefficients above this order are unreliable
  std::vector<GaussRat> coef;

  FourierJet() = default;
  FourierJet(Rat radius, int order, int modes);
  GaussRat& a(int m, int k);
  const GaussRat& a(int m, int k) const;
  bool is_zero_up_to(int order) const;
  /// Modes carrying a nonzero coefficient at any order.
  std::set<int> support() const;
};

FourierJet jet_constant(const Rat& R, int M, int K);
/// Jet of t^m in mode k.
FourierJet jet_tpow(const Rat& R, int M, int K, int m, int k);
/// Jet of r^{|k|} e^{ik th} about r = R: binomial expansion of (R+t)^{|k|}.
FourierJet jet_r_harmonic(const Rat& R, int M, int K, int k);
/// Jet of log(R+t) - log R (mode 0): a_m = (-1)^{m+1}/(m R^m).
FourierJet jet_log(const Rat& R, int M, int K);

FourierJet jet_add(const FourierJet& x, const FourierJet& y);
FourierJet jet_scale(const GaussRat& s, FourierJet x);

/// D applied to a jet; exact up to order M-2.
FourierJet apply_D(const FourierJet& j);

/// Matrix of the mode-k block of D: orders 0..M -> orders 0..M-2.
MatQ jet_operator_block(const Rat& R, int M, int k);

struct KernelModeReport {
  int k = 0;
  int dim = 0;
  bool t0_injective = false;   // projection to the a_0 coefficient
  bool t01_injective = false;  // projection to (a_0, a_1)
  MatQ basis;
};

struct KernelReport {
  Rat R;
  int K = 0, M = 0;
  std::vector<KernelModeReport> modes;
  bool harmonic_jets_in_kernel = false;  // r^{|k|} e^{ik th} cross-check
  bool log_jet_in_kernel = false;
};

KernelReport kernel_report(const Rat& R, int K, int M);

struct SurjectivityReport {
  Rat R;
  int K = 0, M = 0;
  bool surjective = false;
  std::map<int, int> cokernel_dims;  // per mode at truncation
};

SurjectivityReport surjectivity_report(const Rat& R, int K, int M);

/// The boundary pairing on modes: 1 if k>0 and l=-k, -1 if k<0 and l=-k,
/// 0 otherwise.
GaussRat omega_D(int k, int l);

/// omega_D as a matrix on modes -K..K (row/col i holds mode i-K).
MatQ omega_D_matrix(int K);

/// Dimension of the radical of omega_D on modes -K..K.
int omega_D_radical_dim(int K);

struct SpectralSet {
  int K = 0;
  std::set<int> S;

  void validate() const;  // 0 not in S; k in S iff -k not in S; |k| <= K
};

struct SpectralReport {
  bool isotropic = false;
  bool half_dimensional = false;  // of the nonconstant sector
  int dim = 0;
};

/// Checks the span of {e^{ik th} : k not in S, k != 0}.
SpectralReport spectral_lagrangian_check(const SpectralSet& S);

struct HarmonicReport {
  int K = 0, M = 0;
  Rat R;
  bool members_in_kernel = false;
  int t0_dim = 0;             // dimension of the boundary-value image
  bool t0_isotropic = false;  // status of the t^0 image under omega_D
};

HarmonicReport harmonic_lagrangian(int K, int M, const Rat& R);

/// Conjugating t -> lambda t, R -> lambda R rescales D by lambda^{-2}
/// (exact check, mode k, orders <= M).
bool scaling_law_holds(const Rat& R, const Rat& lambda, int M, int k);

json scalar_defect_report(const Rat& R, int K, int M);

}  // namespace dwb
