#pragma once

#include <optional>

#include "cellular.hpp"
#include "weyl.hpp"

namespace dwb {

struct LieAlgebraData {
  int dim = 0;
  std::vector<std::string> labels;
  std::vector<Rat> c;  // [e_i, e_j] = sum_k c(i,j,k) e_k, flattened
  std::optional<MatR> kappa;

  Rat& bracket_coef(int i, int j, int k) {
    return c[(static_cast<size_t>(i) * dim + j) * dim + k];
  }
  const Rat& bracket_coef(int i, int j, int k) const {
    return c[(static_cast<size_t>(i) * dim + j) * dim + k];
  }
  std::vector<Rat> bracket(const std::vector<Rat>& x, const std::vector<Rat>& y) const;

  void validate() const;  // antisymmetry, Jacobi, kappa invariance when given

  static LieAlgebraData abelian(int n);
  static LieAlgebraData sl2();         // (h, e, f) with the Killing form
  static LieAlgebraData heisenberg();  // (x, y, z), [x,y] = z, no kappa
};

LieAlgebraData lie_by_name(const std::string& name);

// ---------------------------------------------------------------------------
// T*g = g (+) g* with omega((x,xi),(y,eta)) = xi(y) - eta(x), encoded as a
// degree-0 complex so the Lagrangian checks run in core machinery.

ShiftedPairing<GaussRat> tstar_pairing(int n);

MatQ matq_from(const MatR& m);

/// Graph of s f_kappa: {(x, s kappa(x, .))}. Throws on missing or degenerate
/// kappa; the form argument variant admits non-symmetric counterexamples.
LagrangianCandidate<GaussRat> bf_lagrangian_graph(const LieAlgebraData& g, const Rat& s);
LagrangianCandidate<GaussRat> bf_lagrangian_graph_with_form(int n, const Rat& s, const MatR& form);

/// l (+) Ann(l) for a subalgebra l given by basis columns; throws with the
/// failing bracket if l is not closed.
LagrangianCandidate<GaussRat> bf_lagrangian_subalgebra(const LieAlgebraData& g,
                                                       const MatR& l_basis);

// ---------------------------------------------------------------------------
// Cellular BF equations of motion on the annulus model.

/// g-valued cochain on a product cell complex: one component per Lie basis
/// element, all of the same degree.
struct GCochain {
  int degree = 0;
  std::vector<ProductCochain<GaussRat>> comp;
};

GCochain gc_zero(const LieAlgebraData& g, const TensorIndex& idx, int degree);
GCochain gc_d(const CochainComplex<GaussRat>& c, const GCochain& x);
/// [x, y]^k = sum_ij c^k_ij x^i cup y^j.
GCochain gc_bracket(const LieAlgebraData& g, const OneDModel& m1, const OneDModel& m2,
                    const TensorIndex& idx, const GCochain& x, const GCochain& y);
double gc_max_abs(const GCochain& x);

struct BFResiduals {
  double curvature = 0;        // max coefficient of F_A = dA + [A,A]/2
  double covariant_const = 0;  // max coefficient of dB + [A,B]
};

BFResiduals eom_residuals_bf(const LieAlgebraData& g, const CochainComplex<GaussRat>& annulus,
                             const OneDModel& m1, const OneDModel& m2, const TensorIndex& idx,
                             const GCochain& A, const GCochain& B);

/// The class generating H^1 of the annulus: the circle volume cochain times
/// the constant function, placed in Lie direction `dir`.
GCochain annulus_flat_cocycle(const LieAlgebraData& g, const OneDModel& m1, const OneDModel& m2,
                              const TensorIndex& idx, int dir);

// ---------------------------------------------------------------------------
// Coupled dg Lie algebras E_{g,V} = (A (x) g) |x (A_D (x) V[-1]).

/// Minimal commutative cell model of the defect support (and of its thickened
/// neighborhood, which is homotopy equivalent).
struct CellAlgebra {
  std::vector<int> deg;
  std::vector<std::string> names;
  std::map<std::pair<int, int>, std::vector<std::pair<int, Rat>>> mult;

  int size() const { return static_cast<int>(deg.size()); }
  static CellAlgebra point();
  static CellAlgebra circle();  // exterior algebra on one degree-1 generator
};

enum class Parity { Odd, Even };

struct CoupledDGLA {
  LieAlgebraData g;
  std::vector<MatR> rho;  // action of each Lie basis element on V
  int v_dim = 0;
  Parity parity = Parity::Odd;
  CellAlgebra base;

  // basis: bulk pairs (cell, lie index) then defect pairs (cell, V index)
  int n_bulk() const { return base.size() * g.dim; }
  int n_total() const { return n_bulk() + base.size() * v_dim; }
  int degree_of(int idx) const;
  std::string name_of(int idx) const;
  /// Bracket of basis elements as a dense coefficient vector.
  std::vector<Rat> bracket(int i, int j) const;
};

struct JacobiReport {
  bool module_ok = true;
  bool antisymmetric = true;
  bool jacobi_ok = true;
  std::string failing_triple;
};

CoupledDGLA coupled_dgla(const LieAlgebraData& g, const std::vector<MatR>& rho, int v_dim,
                         Parity parity, const CellAlgebra& base);
JacobiReport check_coupled_jacobi(const CoupledDGLA& E);

/// u(1) |x V_n: one bulk generator acting on one defect generator by n.
CoupledDGLA u1_semidirect(int n, Parity parity = Parity::Even);

// ---------------------------------------------------------------------------
// Minimal coupling along the defect line.

/// Trapezoidal quadrature of int (psi, (d + A) psi) over a uniform grid on
/// [0, L]; inner is the pairing matrix on V (skew for odd parity).
double minimal_coupling_action(const std::vector<std::vector<double>>& psi,
                               const std::vector<Eigen::MatrixXd>& A, double L,
                               const Eigen::MatrixXd& inner);

json to_json(const LieAlgebraData& g);
json to_json(const JacobiReport& r);
json to_json(const BFResiduals& r);

}  // namespace dwb
