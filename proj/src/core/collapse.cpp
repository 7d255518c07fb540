#include "collapse.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dwb {

namespace {

// Interpolants h : [0,1] -> [0,1] with h(0)=0, h(1)=1, h'(0)=0, h'(1)=1/2,
// monotone, and h(u) - (u+1) h'(u) <= 0 (which makes f_t monotone in t).
double h_cubic(double u) { return u * u * (2.5 - 1.5 * u); }
double h_cubic_d(double u) { return u * (5.0 - 4.5 * u); }
double h_quartic(double u) { return u * u * u * (3.5 - 2.5 * u); }
double h_quartic_d(double u) { return u * u * (10.5 - 10.0 * u); }

}  // namespace

CollapseProfile::CollapseProfile(double t, double family_param)
    : t_(t), lambda_(family_param) {
  if (!(t > 0.0 && t < 1.0)) throw std::domain_error("collapse profile needs t in (0,1)");
  if (lambda_ < 0.0 || lambda_ > 1.0)
    throw std::domain_error("family_param must lie in [0,1]");
}

double CollapseProfile::operator()(double s) const {
  if (s < 0.0 || s > 3.0) throw std::domain_error("profile argument outside [0,3]");
  if (s <= t_) return 0.0;
  if (s >= 2.0 * t_) return s;
  double u = (s - t_) / t_;
  double h = (1.0 - lambda_) * h_cubic(u) + lambda_ * h_quartic(u);
  return 2.0 * t_ * h;
}

double CollapseProfile::derivative(double s) const {
  if (s < t_) return 0.0;
  if (s > 2.0 * t_) return 1.0;
  double u = (s - t_) / t_;
  return 2.0 * ((1.0 - lambda_) * h_cubic_d(u) + lambda_ * h_quartic_d(u));
}

double CollapseProfile::inverse(double y) const {
  if (y < 0.0 || y > 3.0) throw std::domain_error("inverse argument outside [0,3]");
  if (y == 0.0) return t_;
  if (y >= 2.0 * t_) return y;
  double lo = t_, hi = 2.0 * t_;
  while (hi - lo > 1e-12) {
    double mid = 0.5 * (lo + hi);
    if ((*this)(mid) < y)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

double NormalPoint::norm() const {
  double s = 0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

NormalPoint collapse_point(const NormalPoint& p, const CollapseProfile& profile) {
  double n = p.norm();
  if (n >= 3.0) throw std::domain_error("normal point outside the disk bundle B_3");
  NormalPoint q;
  q.base = p.base;
  q.v.assign(p.v.size(), 0.0);
  if (n > 0.0) {
    double scale = profile(n) / n;
    for (size_t i = 0; i < p.v.size(); ++i) q.v[i] = scale * p.v[i];
  }
  return q;
}

OpenSet1D::OpenSet1D(std::vector<std::pair<double, double>> intervals) {
  for (auto& [a, b] : intervals)
    if (!(a < b)) throw std::invalid_argument("open interval needs a < b");
  std::sort(intervals.begin(), intervals.end());
  for (auto& iv : intervals) {
    if (!ivs_.empty() && iv.first <= ivs_.back().second) {
      ivs_.back().second = std::max(ivs_.back().second, iv.second);
    } else {
      ivs_.push_back(iv);
    }
  }
}

bool OpenSet1D::contains(const OpenSet1D& other) const {
  for (auto& [a, b] : other.ivs_) {
    bool covered = false;
    for (auto& [c, d] : ivs_)
      if (c <= a && b <= d) {
        covered = true;
        break;
      }
    if (!covered) return false;
  }
  return true;
}

bool OpenSet1D::disjoint_from(const OpenSet1D& other) const {
  for (auto& [a, b] : ivs_)
    for (auto& [c, d] : other.ivs_)
      if (std::max(a, c) < std::min(b, d)) return false;
  return true;
}

bool operator==(const OpenSet1D& a, const OpenSet1D& b) { return a.ivs_ == b.ivs_; }

namespace {

// Generalized inverse for interval endpoints of pi_t on the 1D model.
// For a lower endpoint the preimage opens just above the plateau; the plateau
// [-t, t] maps to 0, so endpoints at 0 resolve to +-t.
double endpoint_preimage(double y, const CollapseProfile& f) {
  if (y > 0) return y <= 3.0 ? f.inverse(y) : y;
  if (y < 0) return -y <= 3.0 ? -f.inverse(-y) : y;
  return 0;  // caller resolves the sign for y == 0
}

}  // namespace

OpenSet1D preimage_open(const OpenSet1D& u, const CollapseProfile& f) {
  std::vector<std::pair<double, double>> out;
  for (auto& [a, b] : u.intervals()) {
    double lo, hi;
    if (a == 0.0)
      lo = f.t();
    else
      lo = endpoint_preimage(a, f);
    if (b == 0.0)
      hi = -f.t();
    else
      hi = endpoint_preimage(b, f);
    out.emplace_back(lo, hi);
  }
  return OpenSet1D(std::move(out));
}

namespace {

int cells_for(double len) {
  if (len <= 0) return 0;
  return std::max(1, static_cast<int>(std::lround(len / 0.5)));
}

// Collar complex on [r, R] with prescribed breakpoints at r2, R2; returns the
// vertex range [lo, hi] of the sub-collar [r2, R2].
CochainComplex<GaussRat> collar_complex(AnnulusTheory th, double r, double R, double r2,
                                        double R2, int& lo, int& hi, int& n_edges) {
  int n1 = cells_for(r2 - r);
  int n2 = cells_for(R2 - r2);
  int n3 = cells_for(R - R2);
  n_edges = n1 + n2 + n3;
  lo = n1;
  hi = n1 + n2;
  auto c = one_d_complex<GaussRat>(interval_model(n_edges));
  if (th == AnnulusTheory::MassiveCollar) {
    // mass term destroys collar exactness; the model keeps one mode per cell
    c.d.set_block(0, MatQ::zero(n_edges, n_edges + 1));
  }
  return c;
}

}  // namespace

bool annulus_equivalence(AnnulusTheory theory, int coefficient_dim, double r, double R,
                         double r2, double R2) {
  if (!(0 < r && r <= r2 && r2 < R2 && R2 <= R && R < 3))
    throw std::domain_error("annulus radii must satisfy 0 < r <= r' < R' <= R < 3");
  if (coefficient_dim < 1) throw std::domain_error("coefficient dimension must be >= 1");

  if (r == r2 && R == R2) return true;  // identity restriction

  int lo, hi, n_edges;
  auto big_collar = collar_complex(theory, r, R, r2, R2, lo, hi, n_edges);
  int slo, shi, sub_edges;
  auto sub_collar = collar_complex(theory, r2, R2, r2, R2, slo, shi, sub_edges);
  auto restrict_collar = interval_restriction(n_edges, lo, hi, big_collar, sub_collar);

  // circle factor with coefficient multiplicity folded into the circle size?
  // no: multiplicity enters as extra tensor factor with zero differential
  auto circ = one_d_complex<GaussRat>(circle_model(4));
  TensorIndex idx_big, idx_sub;
  auto big = tensor_complex(circ, big_collar, idx_big);
  auto sub = tensor_complex(circ, sub_collar, idx_sub);
  auto f = tensor_map(LinearMap<GaussRat>::identity(circ.space), restrict_collar, big,
                      idx_big, sub, idx_sub);
  // coefficient_dim copies of the same complex restrict componentwise, so the
  // check is independent of multiplicity; verified once
  return is_quasi_iso(f, big, sub);
}

CochainComplex<GaussRat> blowup_boundary(int n, int k) {
  if (k < 1) throw std::domain_error("blow-up needs codimension k >= 1");
  if (k > n) throw std::domain_error("codimension exceeds ambient dimension");
  CochainComplex<GaussRat> sphere =
      (k == 2) ? one_d_complex<GaussRat>(circle_model(4), "S1 ") : sphere_complex<GaussRat>(k - 1);
  // D = R^{n-k} is contractible; its cell model is a point
  for (auto& [deg, lbls] : sphere.space.labels)
    for (auto& l : lbls) l += " x R^" + std::to_string(n - k);
  return sphere;
}

}  // namespace dwb
