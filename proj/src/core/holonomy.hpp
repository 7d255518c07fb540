#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <vector>

#include "lie.hpp"

namespace dwb {

using CMat = Eigen::MatrixXcd;

/// Piecewise-constant Lie-algebra-valued 1-form sampled along a loop linking
/// the defect. Segments are ordered counterclockwise starting at angle 0.
struct LoopConnection {
  std::vector<CMat> seg;     // matrix samples A_i
  std::vector<double> len;   // segment lengths, all > 0

  void validate() const;  // square, equal sizes, positive lengths
  int matrix_dim() const { return seg.empty() ? 0 : static_cast<int>(seg.front().rows()); }
  double total_length() const;
};

/// Matrix exponential by Pade(13,13) with scaling and squaring.
CMat expm(const CMat& a);

/// Ordered product exp(A_n D_n) ... exp(A_1 D_1); holonomy composes
/// right-to-left along the loop.
CMat monodromy(const LoopConnection& c);

/// Subdivide every segment into `pieces` equal parts (same sample matrix).
LoopConnection refine(const LoopConnection& c, int pieces);

/// Sample a continuous loop connection at segment midpoints into n pieces.
LoopConnection sample_loop(const std::function<CMat(double)>& a, double length, int n);

/// Coefficients of det(lambda I - g), highest power first (Faddeev-LeVerrier).
std::vector<std::complex<double>> char_poly(const CMat& g);

/// Trace of holonomy.
std::complex<double> wilson_loop(const LoopConnection& c);

/// Constant gauge transformation: A_i -> h A_i h^{-1}; then
/// Mon(h.c) = h Mon(c) h^{-1}.
LoopConnection gauge_transform(const LoopConnection& c, const CMat& h);

/// u(1) loop of the given total flux = Im(integral of A), in the weight-n
/// character: constant sample i n flux / length over `segments` pieces.
LoopConnection u1_loop(double flux, int weight, int segments = 4, double length = 1.0);

/// Matrix realization of the shipped algebras: basis matrices in the order of
/// LieAlgebraData labels (u1/abelian: skew diagonal units; sl2: fundamental;
/// heisenberg: upper-triangular 3x3).
std::vector<CMat> algebra_rep(const std::string& name);

/// Least-squares slope of log(err) against log(h) for the midpoint-sampled
/// monodromy of `a` at n = base*2^k, k = 1..levels, against a fine reference.
double refinement_slope(const std::function<CMat(double)>& a, double length, int base,
                        int levels);

json to_json(const LoopConnection& c);
json monodromy_report(const LoopConnection& c);

}  // namespace dwb
