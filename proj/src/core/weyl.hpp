#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "graded.hpp"
#include "hpoly.hpp"
#include "matrix.hpp"

namespace dwb {

using MatR = Mat<Rat>;
using ExpVec = std::vector<int>;  // exponent per generator, normal order ascending

inline int total_degree(const ExpVec& e) {
  int t = 0;
  for (int x : e) t += x;
  return t;
}

struct SymplecticVS {
  int dim = 0;
  std::vector<std::string> labels;
  MatR omega;

  void validate() const;
  Rat pair(int i, int j) const { return omega(i, j); }
  Rat pair(const std::vector<Rat>& u, const std::vector<Rat>& v) const;

  /// Standard (q1..qn, p1..pn) model with omega(q_i, p_i) = 1.
  static SymplecticVS darboux(int n);
};

struct LagrangianSubspace {
  MatR basis;  // dim x n columns

  void validate(const SymplecticVS& V) const;
};

/// Is the span of the columns omega-isotropic?
bool is_isotropic_subspace(const SymplecticVS& V, const MatR& basis);

// ---------------------------------------------------------------------------
// Weyl algebra: normal-ordered coefficient tables with hbar carried exactly.

struct WeylElement {
  int dim = 0;
  int cap = 6;
  bool truncated = false;
  std::map<ExpVec, HPoly> table;

  bool is_zero() const;
  friend bool operator==(const WeylElement& a, const WeylElement& b);
  std::string str(const SymplecticVS& V) const;
};

WeylElement weyl_zero(const SymplecticVS& V, int cap = 6);
WeylElement weyl_unit(const SymplecticVS& V, int cap = 6);
WeylElement weyl_generator(const SymplecticVS& V, int i, int cap = 6);
WeylElement weyl_monomial(const SymplecticVS& V, const ExpVec& e, HPoly coef, int cap = 6);
WeylElement weyl_add(const WeylElement& a, const WeylElement& b);
WeylElement weyl_scale(const HPoly& s, WeylElement a);
WeylElement weyl_mul(const SymplecticVS& V, const WeylElement& a, const WeylElement& b);

// ---------------------------------------------------------------------------
// Fock modules O(L) = Sym(L*): polynomials in n position generators, with the
// Weyl algebra acting through a chosen Lagrangian complement.

struct FockModel {
  SymplecticVS V;
  LagrangianSubspace L;
  MatR complement;  // Lagrangian complement, columns
  // generator i acts as sum_k mult[i][k] * l_k + hbar * sum_k der[i][k] * d/dl_k
  // (left action; the right action flips the sign of der)
  std::vector<std::vector<Rat>> mult;
  std::vector<std::vector<Rat>> der;

  int n() const { return L.basis.cols; }
  static FockModel build(const SymplecticVS& V, const LagrangianSubspace& L);
};

struct FockVector {
  int n = 0;
  int cap = 6;
  bool truncated = false;
  std::map<ExpVec, HPoly> table;  // exponents in the n module generators

  bool is_zero() const;
  friend bool operator==(const FockVector& a, const FockVector& b);
};

FockVector fock_vacuum(const FockModel& F, int cap = 6);
FockVector fock_monomial(const FockModel& F, const ExpVec& e, HPoly coef, int cap = 6);

enum class Side { Left, Right };

/// Side::Left computes a.v (algebra homomorphism), Side::Right computes v.a
/// (anti-homomorphism); the two commutator conventions differ by a sign.
FockVector fock_act(const FockModel& F, const FockVector& v, const WeylElement& a, Side side);

// ---------------------------------------------------------------------------
// The defect prefactorization algebra on the line, D = {0}.

struct BimodElement {
  int cap = 6;
  bool truncated = false;
  std::map<std::pair<ExpVec, ExpVec>, HPoly> table;  // (F_- exponents, F_+ exponents)

  bool is_zero() const;
  friend bool operator==(const BimodElement& a, const BimodElement& b);
};

struct PrefactLine {
  SymplecticVS V;
  FockModel Fm;  // Fock(L_-*), boundary observables left of the defect
  FockModel Fp;  // Fock(L_+*)
  double t = 0.25;
  bool quantum = true;
  bool flip_actions = false;  // test hook: breaks bimodule coherence
};

PrefactLine build_defect_prefact(const SymplecticVS& V, const LagrangianSubspace& Lm,
                                 const LagrangianSubspace& Lp, double t);

BimodElement bimod_vacuum(const PrefactLine& P, int cap = 6);
BimodElement bimod_monomial(const PrefactLine& P, const ExpVec& em, const ExpVec& ep,
                            HPoly coef, int cap = 6);
BimodElement bimod_act_left(const PrefactLine& P, const WeylElement& a, BimodElement m);
BimodElement bimod_act_right(const PrefactLine& P, BimodElement m, const WeylElement& b);

/// One inserted observable: a Weyl element on an interval avoiding 0, or a
/// bimodule element on an interval containing 0.
struct ConfigElement {
  double a = 0, b = 0;
  std::optional<WeylElement> alg;
  std::optional<BimodElement> mod;
};

struct PrefactValue {
  bool is_module = false;
  WeylElement alg;
  BimodElement mod;

  friend bool operator==(const PrefactValue& x, const PrefactValue& y);
};

/// Which observable space the assignment puts on the interval (a,b).
enum class IntervalSpace { Weyl, Bimodule };
IntervalSpace space_for_interval(const PrefactLine& P, double a, double b);

/// The structure map for the configuration of disjoint intervals inside
/// (A, B), evaluated on the given elements in spatial order.
PrefactValue prefact_evaluate(const PrefactLine& P, std::vector<ConfigElement> config,
                              double A, double B);

struct AxiomReport {
  bool pass = true;
  int configurations = 0;
  int depth = 0;
  std::string first_failure;
};

/// Composition coherence for nested configurations up to `depth` levels over a
/// fixed rational endpoint grid; exact equality of coefficient tables.
AxiomReport check_prefact_axioms(const PrefactLine& P, int depth, bool weyl_only = false);

// ---------------------------------------------------------------------------
// Classical (Poisson) counterpart.

struct PolyV {
  int dim = 0;
  std::map<ExpVec, Rat> table;

  bool is_zero() const;
  friend bool operator==(const PolyV& a, const PolyV& b);
};

PolyV poly_monomial(int dim, const ExpVec& e, Rat coef);
PolyV poly_add(const PolyV& f, const PolyV& g);
PolyV poly_mul(const PolyV& f, const PolyV& g);
PolyV poly_scale(const Rat& s, PolyV f);

/// {f,g} with {x_i, x_j} = omega_ij, matching [x_i, x_j] = hbar omega_ij.
PolyV poisson_bracket(const SymplecticVS& V, const PolyV& f, const PolyV& g);

/// Pull back along the inclusion of span(basis): substitute x = basis . s.
PolyV restrict_to_subspace(const MatR& basis, const PolyV& f);

/// hbar -> 0 shadow of a Weyl element: the hbar^0 coefficient table.
PolyV classical_shadow(const WeylElement& a);

struct SideReport {
  bool lagrangian = false;
  bool ideal_bracket_closed = false;  // vanishing ideal closed under {,}
  bool restriction_algebra_map = false;
};

struct PoissonPrefact {
  SymplecticVS V;
  MatR Lm_basis, Lp_basis;
  SideReport minus, plus;
  bool valid = false;  // both sides Lagrangian with closed ideals
};

/// Accepts arbitrary half-dimensional subspaces so that failures of
/// coisotropy are reported rather than rejected up front.
PoissonPrefact classical_defect_prefact(const SymplecticVS& V, const MatR& Lm_basis,
                                        const MatR& Lp_basis, int check_degree = 4);

// ---------------------------------------------------------------------------
// Domain walls: BF boundary data compactified to V = H*(D) (x) (g (+) g*).

struct DomainWallModel {
  SymplecticVS V;
  LagrangianSubspace L0, L1;
  PrefactLine line;
};

/// D modeled by its cohomology (point: H = k in degree 0; circle: k in
/// degrees 0 and 1). L0, L1 default to the A-field summand H (x) g.
DomainWallModel domain_wall_assignment(bool circle, int g_dim, double t = 0.25);

// JSON views.
json to_json(const SymplecticVS& V);
json to_json(const WeylElement& a, const SymplecticVS& V);
json to_json(const AxiomReport& r);
json to_json(const PoissonPrefact& p);

}  // namespace dwb
