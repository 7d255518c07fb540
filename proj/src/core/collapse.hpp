#pragma once

#include <array>
#include <string>
#include <vector>

#include "cellular.hpp"

namespace dwb {

/// Fiber-collapse profile f_t : [0,3] -> [0,3]: zero on [0,t], identity on
/// [2t,3], a monotone C^1 spline in between. family_param in [0,1] blends two
/// interpolants, realizing a two-parameter family f(t,s) monotone in t.
class CollapseProfile {
 public:
  explicit CollapseProfile(double t, double family_param = 0.0);

  double t() const { return t_; }
  double operator()(double s) const;
  double derivative(double s) const;

  /// Unique preimage of y under f_t for y > 0; inverse(0) = t (the upper end
  /// of the collapsed plateau). Bisection to 1e-12.
  double inverse(double y) const;

 private:
  double t_;
  double lambda_;
};

struct NormalPoint {
  std::string base;
  std::vector<double> v;

  double norm() const;
};

NormalPoint collapse_point(const NormalPoint& p, const CollapseProfile& profile);

/// Finite union of open intervals in R, sorted and disjoint.
class OpenSet1D {
 public:
  OpenSet1D() = default;
  explicit OpenSet1D(std::vector<std::pair<double, double>> intervals);

  const std::vector<std::pair<double, double>>& intervals() const { return ivs_; }
  bool contains(const OpenSet1D& other) const;     // other subset of this
  bool disjoint_from(const OpenSet1D& other) const;
  friend bool operator==(const OpenSet1D& a, const OpenSet1D& b);

 private:
  std::vector<std::pair<double, double>> ivs_;
};

/// Preimage of U under pi_t on the 1D model (M = R, D = {0}),
/// pi_t(x) = sign(x) f_t(|x|) for |x| <= 3 and the identity beyond.
OpenSet1D preimage_open(const OpenSet1D& u, const CollapseProfile& profile);

/// Annular-bundle complex factories over D: the theory's solution model on
/// A_(r,R) as a cellular product circle x interval (x coefficient space).
enum class AnnulusTheory {
  Topological,    // abelian CS/BF: de Rham collar, locally constant
  MassiveCollar,  // mass term destroys collar exactness: one mode per radial cell
};

/// Quasi-isomorphism check for restriction from A_(r,R) to A_(r2,R2).
bool annulus_equivalence(AnnulusTheory theory, int coefficient_dim, double r, double R,
                         double r2, double R2);

/// Cellular model of the blow-up boundary S^{k-1} x D for D = R^{n-k}.
CochainComplex<GaussRat> blowup_boundary(int n, int k);

}  // namespace dwb
