#include "weyl.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace dwb {

namespace {

MatR inverse(const MatR& m) {
  if (m.rows != m.cols) throw std::invalid_argument("inverse of non-square matrix");
  MatR aug = hcat(m, MatR::identity(m.rows));
  auto pivots = detail::row_reduce(aug);
  if (static_cast<int>(pivots.size()) != m.rows)
    throw std::domain_error("singular matrix");
  MatR inv(m.rows, m.rows);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.rows; ++j) inv(i, j) = aug(i, m.cols + j);
  return inv;
}

std::vector<Rat> column(const MatR& m, int j) {
  std::vector<Rat> v(m.rows);
  for (int i = 0; i < m.rows; ++i) v[i] = m(i, j);
  return v;
}

}  // namespace

void SymplecticVS::validate() const {
  if (dim % 2 != 0) throw std::domain_error("symplectic space needs even dimension");
  if (omega.rows != dim || omega.cols != dim)
    throw std::domain_error("omega shape mismatch");
  if (static_cast<int>(labels.size()) != dim)
    throw std::domain_error("label count mismatch");
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      if (omega(i, j) != -omega(j, i)) throw std::domain_error("omega is not skew");
  if (dim > 0 && rank(omega) != dim) throw std::domain_error("omega is degenerate");
}

Rat SymplecticVS::pair(const std::vector<Rat>& u, const std::vector<Rat>& v) const {
  Rat s = 0;
  for (int i = 0; i < dim; ++i) {
    if (u[i] == 0) continue;
    for (int j = 0; j < dim; ++j) s += u[i] * omega(i, j) * v[j];
  }
  return s;
}

SymplecticVS SymplecticVS::darboux(int n) {
  SymplecticVS V;
  V.dim = 2 * n;
  V.omega = MatR::zero(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    V.labels.push_back(n == 1 ? "q" : "q" + std::to_string(i + 1));
    V.omega(i, n + i) = 1;
    V.omega(n + i, i) = -1;
  }
  for (int i = 0; i < n; ++i)
    V.labels.push_back(n == 1 ? "p" : "p" + std::to_string(i + 1));
  return V;
}

bool is_isotropic_subspace(const SymplecticVS& V, const MatR& basis) {
  MatR g = basis.transpose() * V.omega * basis;
  return g.is_zero();
}

void LagrangianSubspace::validate(const SymplecticVS& V) const {
  if (basis.rows != V.dim) throw std::domain_error("subspace basis row mismatch");
  if (basis.cols * 2 != V.dim)
    throw std::domain_error("Lagrangian must have half dimension");
  if (basis.cols > 0 && rank(basis) != basis.cols)
    throw std::domain_error("subspace basis is dependent");
  if (!is_isotropic_subspace(V, basis))
    throw std::domain_error("subspace is not isotropic");
}

// ---------------------------------------------------------------------------
// Weyl algebra.

bool WeylElement::is_zero() const {
  for (auto& [e, c] : table)
    if (!c.is_zero()) return false;
  return true;
}

bool operator==(const WeylElement& a, const WeylElement& b) {
  if (a.dim != b.dim) return false;
  std::map<ExpVec, HPoly> diff = a.table;
  for (auto& [e, c] : b.table) {
    auto it = diff.find(e);
    if (it == diff.end())
      diff[e] = -c;
    else
      it->second -= c;
  }
  for (auto& [e, c] : diff)
    if (!c.is_zero()) return false;
  return true;
}

std::string WeylElement::str(const SymplecticVS& V) const {
  std::string s;
  for (auto& [e, c] : table) {
    if (c.is_zero()) continue;
    if (!s.empty()) s += " + ";
    std::string mono;
    for (int i = 0; i < dim; ++i)
      for (int k = 0; k < e[i]; ++k) mono += (mono.empty() ? "" : " ") + V.labels[i];
    if (mono.empty())
      s += "(" + c.str() + ")";
    else
      s += "(" + c.str() + ") " + mono;
  }
  return s.empty() ? "0" : s;
}

WeylElement weyl_zero(const SymplecticVS& V, int cap) {
  WeylElement a;
  a.dim = V.dim;
  a.cap = cap;
  return a;
}

WeylElement weyl_unit(const SymplecticVS& V, int cap) {
  WeylElement a = weyl_zero(V, cap);
  a.table[ExpVec(V.dim, 0)] = HPoly(1);
  return a;
}

WeylElement weyl_generator(const SymplecticVS& V, int i, int cap) {
  if (i < 0 || i >= V.dim) throw std::out_of_range("generator index");
  WeylElement a = weyl_zero(V, cap);
  ExpVec e(V.dim, 0);
  e[i] = 1;
  a.table[e] = HPoly(1);
  return a;
}

WeylElement weyl_monomial(const SymplecticVS& V, const ExpVec& e, HPoly coef, int cap) {
  if (static_cast<int>(e.size()) != V.dim) throw std::invalid_argument("exponent size");
  if (total_degree(e) > cap) throw std::domain_error("monomial exceeds the degree cap");
  WeylElement a = weyl_zero(V, cap);
  if (!coef.is_zero()) a.table[e] = std::move(coef);
  return a;
}

WeylElement weyl_add(const WeylElement& a, const WeylElement& b) {
  if (a.dim != b.dim) throw std::invalid_argument("weyl_add parent mismatch");
  WeylElement c = a;
  c.cap = std::min(a.cap, b.cap);
  c.truncated = a.truncated || b.truncated;
  for (auto& [e, x] : b.table) {
    c.table[e] += x;
    if (c.table[e].is_zero()) c.table.erase(e);
  }
  return c;
}

WeylElement weyl_scale(const HPoly& s, WeylElement a) {
  for (auto it = a.table.begin(); it != a.table.end();) {
    it->second *= s;
    if (it->second.is_zero())
      it = a.table.erase(it);
    else
      ++it;
  }
  return a;
}

namespace {

// Multiply the normal-ordered monomial `a` on the right by generator g.
// A multidegree e realizes the word x_{d-1}^{e_{d-1}} ... x_0^{e_0}
// (descending index order), so the table monomial (a,b) in the Darboux case
// is the word p^b q^a. Rewriting uses x_m x_g = x_g x_m + hbar omega(m, g).
std::map<ExpVec, HPoly> insert_gen(const SymplecticVS& V, const ExpVec& a, int g) {
  int m = -1;
  for (int i = 0; i < static_cast<int>(a.size()); ++i)
    if (a[i] > 0) {
      m = i;
      break;
    }
  std::map<ExpVec, HPoly> out;
  if (m == -1 || m >= g) {
    ExpVec e = a;
    e[g] += 1;
    out[e] = HPoly(1);
    return out;
  }
  ExpVec head = a;
  head[m] -= 1;
  for (auto& [e, c] : insert_gen(V, head, g)) {
    ExpVec e2 = e;
    e2[m] += 1;
    out[e2] += c;
  }
  Rat w = V.omega(m, g);
  if (w != 0) {
    HPoly c = HPoly::hbar();
    c *= HPoly(w);
    out[head] += c;
  }
  for (auto it = out.begin(); it != out.end();)
    it = it->second.is_zero() ? out.erase(it) : std::next(it);
  return out;
}

std::map<ExpVec, HPoly> mul_mono(const SymplecticVS& V, const ExpVec& a, const ExpVec& b) {
  std::map<ExpVec, HPoly> cur;
  cur[a] = HPoly(1);
  for (int g = V.dim - 1; g >= 0; --g) {  // b's word reads indices high to low
    for (int rep = 0; rep < b[g]; ++rep) {
      std::map<ExpVec, HPoly> next;
      for (auto& [e, c] : cur)
        for (auto& [e2, c2] : insert_gen(V, e, g)) {
          next[e2] += c * c2;
        }
      cur = std::move(next);
    }
  }
  return cur;
}

}  // namespace

WeylElement weyl_mul(const SymplecticVS& V, const WeylElement& a, const WeylElement& b) {
  if (a.dim != b.dim || a.dim != V.dim) throw std::invalid_argument("weyl_mul parent mismatch");
  WeylElement c = weyl_zero(V, std::min(a.cap, b.cap));
  c.truncated = a.truncated || b.truncated;
  for (auto& [ea, ca] : a.table) {
    if (ca.is_zero()) continue;
    for (auto& [eb, cb] : b.table) {
      if (cb.is_zero()) continue;
      HPoly coef = ca * cb;
      for (auto& [e, w] : mul_mono(V, ea, eb)) {
        if (total_degree(e) > c.cap) {
          c.truncated = true;
          continue;
        }
        c.table[e] += coef * w;
      }
    }
  }
  for (auto it = c.table.begin(); it != c.table.end();)
    it = it->second.is_zero() ? c.table.erase(it) : std::next(it);
  return c;
}

// ---------------------------------------------------------------------------
// Fock modules.

FockModel FockModel::build(const SymplecticVS& V, const LagrangianSubspace& L) {
  V.validate();
  L.validate(V);
  FockModel F;
  F.V = V;
  F.L = L;
  const int n = L.basis.cols;
  const int d = V.dim;

  // extend L to a basis of V with standard vectors, then correct the
  // complement to be Lagrangian: c_j = w_j + (1/2) sum_k S B^{-T} l_k
  MatR acc = L.basis;
  MatR W(d, 0);
  for (int i = 0; i < d && W.cols < n; ++i) {
    MatR e(d, 1);
    e(i, 0) = 1;
    MatR trial = hcat(acc, e);
    if (rank(trial) > rank(acc)) {
      acc = trial;
      W = hcat(W, e);
    }
  }
  MatR S = W.transpose() * V.omega * W;         // S_jm = omega(w_j, w_m)
  MatR B = W.transpose() * V.omega * L.basis;   // B_jk = omega(w_j, l_k)
  MatR A = Rat(1) / Rat(2) * (S * inverse(B.transpose()));
  F.complement = W + L.basis * A.transpose();

  MatR M = hcat(L.basis, F.complement);
  MatR coords = inverse(M);
  MatR Wcl = F.complement.transpose() * V.omega * L.basis;  // omega(c_j, l_k)
  F.mult.assign(d, std::vector<Rat>(n, Rat(0)));
  F.der.assign(d, std::vector<Rat>(n, Rat(0)));
  for (int i = 0; i < d; ++i)
    for (int k = 0; k < n; ++k) {
      F.mult[i][k] = coords(k, i);
      for (int j = 0; j < n; ++j) F.der[i][k] += coords(n + j, i) * Wcl(j, k);
    }
  return F;
}

bool FockVector::is_zero() const {
  for (auto& [e, c] : table)
    if (!c.is_zero()) return false;
  return true;
}

bool operator==(const FockVector& a, const FockVector& b) {
  if (a.n != b.n) return false;
  std::map<ExpVec, HPoly> diff = a.table;
  for (auto& [e, c] : b.table) diff[e] -= c;
  for (auto& [e, c] : diff)
    if (!c.is_zero()) return false;
  return true;
}

FockVector fock_vacuum(const FockModel& F, int cap) {
  FockVector v;
  v.n = F.n();
  v.cap = cap;
  v.table[ExpVec(v.n, 0)] = HPoly(1);
  return v;
}

FockVector fock_monomial(const FockModel& F, const ExpVec& e, HPoly coef, int cap) {
  if (static_cast<int>(e.size()) != F.n()) throw std::invalid_argument("exponent size");
  if (total_degree(e) > cap) throw std::domain_error("monomial exceeds the degree cap");
  FockVector v;
  v.n = F.n();
  v.cap = cap;
  if (!coef.is_zero()) v.table[e] = std::move(coef);
  return v;
}

namespace {

// Apply one algebra generator to a Fock polynomial:
// mult part raises degree (flag truncation past the cap), derivative part
// carries hbar and the falling exponent.
void apply_generator(const FockModel& F, int gen, bool right_action, FockVector& v) {
  const int n = F.n();
  std::map<ExpVec, HPoly> out;
  Rat sgn = right_action ? Rat(-1) : Rat(1);
  for (auto& [e, c] : v.table) {
    if (c.is_zero()) continue;
    for (int k = 0; k < n; ++k) {
      if (F.mult[gen][k] != 0) {
        if (total_degree(e) + 1 > v.cap) {
          v.truncated = true;
        } else {
          ExpVec e2 = e;
          e2[k] += 1;
          out[e2] += HPoly(F.mult[gen][k]) * c;
        }
      }
      if (F.der[gen][k] != 0 && e[k] > 0) {
        ExpVec e2 = e;
        e2[k] -= 1;
        HPoly w = HPoly::hbar();
        w *= HPoly(sgn * F.der[gen][k] * Rat(e[k]));
        out[e2] += w * c;
      }
    }
  }
  for (auto it = out.begin(); it != out.end();)
    it = it->second.is_zero() ? out.erase(it) : std::next(it);
  v.table = std::move(out);
}

}  // namespace

FockVector fock_act(const FockModel& F, const FockVector& v, const WeylElement& a, Side side) {
  if (a.dim != F.V.dim) throw std::invalid_argument("fock_act parent mismatch");
  if (v.n != F.n()) throw std::invalid_argument("fock_act module mismatch");
  FockVector out;
  out.n = v.n;
  out.cap = std::min(v.cap, a.cap);
  out.truncated = v.truncated || a.truncated;
  for (auto& [ea, ca] : a.table) {
    if (ca.is_zero()) continue;
    FockVector w = v;
    w.cap = out.cap;
    // the word reads indices high to low; the homomorphism applies the last
    // letter (lowest index) first, the anti-homomorphism the first letter
    std::vector<int> gens;
    for (int i = 0; i < a.dim; ++i)
      for (int r = 0; r < ea[i]; ++r) gens.push_back(i);
    if (side == Side::Right) std::reverse(gens.begin(), gens.end());
    for (int g : gens) apply_generator(F, g, side == Side::Right, w);
    out.truncated = out.truncated || w.truncated;
    for (auto& [e, c] : w.table) out.table[e] += ca * c;
  }
  for (auto it = out.table.begin(); it != out.table.end();)
    it = it->second.is_zero() ? out.table.erase(it) : std::next(it);
  return out;
}

// ---------------------------------------------------------------------------
// Defect bimodule and the prefactorization structure maps.

bool BimodElement::is_zero() const {
  for (auto& [e, c] : table)
    if (!c.is_zero()) return false;
  return true;
}

bool operator==(const BimodElement& a, const BimodElement& b) {
  std::map<std::pair<ExpVec, ExpVec>, HPoly> diff = a.table;
  for (auto& [e, c] : b.table) diff[e] -= c;
  for (auto& [e, c] : diff)
    if (!c.is_zero()) return false;
  return true;
}

PrefactLine build_defect_prefact(const SymplecticVS& V, const LagrangianSubspace& Lm,
                                 const LagrangianSubspace& Lp, double t) {
  if (!(t > 0.0 && t < 1.0)) throw std::domain_error("defect scale t must lie in (0,1)");
  PrefactLine P;
  P.V = V;
  P.Fm = FockModel::build(V, Lm);
  P.Fp = FockModel::build(V, Lp);
  P.t = t;
  return P;
}

BimodElement bimod_vacuum(const PrefactLine& P, int cap) {
  BimodElement m;
  m.cap = cap;
  m.table[{ExpVec(P.Fm.n(), 0), ExpVec(P.Fp.n(), 0)}] = HPoly(1);
  return m;
}

BimodElement bimod_monomial(const PrefactLine& P, const ExpVec& em, const ExpVec& ep,
                            HPoly coef, int cap) {
  if (static_cast<int>(em.size()) != P.Fm.n() || static_cast<int>(ep.size()) != P.Fp.n())
    throw std::invalid_argument("bimodule exponent size");
  BimodElement m;
  m.cap = cap;
  if (!coef.is_zero()) m.table[{em, ep}] = std::move(coef);
  return m;
}

namespace {

BimodElement bimod_apply(const PrefactLine& P, const WeylElement& a, const BimodElement& m,
                         bool minus_factor, Side side) {
  const FockModel& F = minus_factor ? P.Fm : P.Fp;
  BimodElement out;
  out.cap = std::min(m.cap, a.cap);
  out.truncated = m.truncated || a.truncated;
  for (auto& [key, c] : m.table) {
    if (c.is_zero()) continue;
    FockVector v;
    v.n = F.n();
    v.cap = out.cap;
    v.table[minus_factor ? key.first : key.second] = c;
    FockVector w = fock_act(F, v, a, side);
    out.truncated = out.truncated || w.truncated;
    for (auto& [e, c2] : w.table) {
      auto key2 = key;
      (minus_factor ? key2.first : key2.second) = e;
      out.table[key2] += c2;
    }
  }
  for (auto it = out.table.begin(); it != out.table.end();)
    it = it->second.is_zero() ? out.table.erase(it) : std::next(it);
  return out;
}

}  // namespace

BimodElement bimod_act_left(const PrefactLine& P, const WeylElement& a, BimodElement m) {
  Side s = P.flip_actions ? Side::Right : Side::Left;
  return bimod_apply(P, a, m, true, s);
}

BimodElement bimod_act_right(const PrefactLine& P, BimodElement m, const WeylElement& b) {
  Side s = P.flip_actions ? Side::Left : Side::Right;
  return bimod_apply(P, b, m, false, s);
}

bool operator==(const PrefactValue& x, const PrefactValue& y) {
  if (x.is_module != y.is_module) return false;
  return x.is_module ? x.mod == y.mod : x.alg == y.alg;
}

IntervalSpace space_for_interval(const PrefactLine& P, double a, double b) {
  (void)P;
  if (!(a < b)) throw std::domain_error("empty interval");
  return (a < 0.0 && 0.0 < b) ? IntervalSpace::Bimodule : IntervalSpace::Weyl;
}

PrefactValue prefact_evaluate(const PrefactLine& P, std::vector<ConfigElement> config,
                              double A, double B) {
  if (!(A < B)) throw std::domain_error("empty target interval");
  std::sort(config.begin(), config.end(),
            [](const ConfigElement& x, const ConfigElement& y) { return x.a < y.a; });
  for (size_t i = 0; i < config.size(); ++i) {
    const auto& e = config[i];
    if (!(e.a < e.b)) throw std::domain_error("empty configuration interval");
    if (e.a < A || e.b > B) throw std::domain_error("configuration escapes the target");
    if (i + 1 < config.size() && config[i + 1].a < e.b)
      throw std::domain_error("configuration intervals overlap");
    bool needs_mod = space_for_interval(P, e.a, e.b) == IntervalSpace::Bimodule;
    if (needs_mod && !e.mod) throw std::domain_error("interval through 0 needs a bimodule element");
    if (!needs_mod && !e.alg) throw std::domain_error("interval avoiding 0 needs an algebra element");
  }

  PrefactValue out;
  if (space_for_interval(P, A, B) == IntervalSpace::Weyl) {
    out.is_module = false;
    out.alg = weyl_unit(P.V);
    for (auto& e : config) out.alg = weyl_mul(P.V, out.alg, *e.alg);
    return out;
  }

  out.is_module = true;
  WeylElement wl = weyl_unit(P.V), wr = weyl_unit(P.V);
  BimodElement m = bimod_vacuum(P);
  for (auto& e : config) {
    if (e.b <= 0.0)
      wl = weyl_mul(P.V, wl, *e.alg);
    else if (e.a >= 0.0)
      wr = weyl_mul(P.V, wr, *e.alg);
    else
      m = *e.mod;
  }
  out.mod = bimod_act_right(P, bimod_act_left(P, wl, m), wr);
  return out;
}

// ---------------------------------------------------------------------------
// Axiom enumeration.

namespace {

struct Node {
  double a, b;
  std::vector<Node> kids;
  std::optional<ConfigElement> leaf;
};

Node leaf_node(double a, double b, WeylElement w) {
  Node n{a, b, {}, ConfigElement{a, b, std::move(w), std::nullopt}};
  return n;
}

Node leaf_mod(double a, double b, BimodElement m) {
  Node n{a, b, {}, ConfigElement{a, b, std::nullopt, std::move(m)}};
  return n;
}

void collect_leaves(const Node& n, std::vector<ConfigElement>& out) {
  if (n.leaf) {
    out.push_back(*n.leaf);
    return;
  }
  for (auto& k : n.kids) collect_leaves(k, out);
}

ConfigElement evaluate_staged(const PrefactLine& P, const Node& n) {
  if (n.leaf) return *n.leaf;
  std::vector<ConfigElement> parts;
  for (auto& k : n.kids) parts.push_back(evaluate_staged(P, k));
  PrefactValue v = prefact_evaluate(P, std::move(parts), n.a, n.b);
  ConfigElement e;
  e.a = n.a;
  e.b = n.b;
  if (v.is_module)
    e.mod = v.mod;
  else
    e.alg = v.alg;
  return e;
}

int tree_depth(const Node& n) {
  if (n.leaf) return 1;
  int d = 0;
  for (auto& k : n.kids) d = std::max(d, tree_depth(k));
  return d + 1;
}

std::string describe(const Node& n) {
  std::ostringstream os;
  os << "(" << n.a << "," << n.b << ")";
  if (!n.kids.empty()) {
    os << "[";
    for (size_t i = 0; i < n.kids.size(); ++i) os << (i ? " " : "") << describe(n.kids[i]);
    os << "]";
  }
  return os.str();
}

}  // namespace

AxiomReport check_prefact_axioms(const PrefactLine& P, int depth, bool weyl_only) {
  if (depth < 1 || depth > 3) throw std::domain_error("axiom depth must lie in [1,3]");
  AxiomReport rep;
  rep.depth = depth;

  auto gen = [&](int i) {
    if (P.V.dim == 0) return weyl_unit(P.V);
    return weyl_generator(P.V, i % P.V.dim);
  };
  auto gen_sq = [&](int i) {
    if (P.V.dim == 0) return weyl_unit(P.V);
    WeylElement g = gen(i);
    return weyl_mul(P.V, g, g);
  };
  // a defect state the momentum generators do not annihilate
  auto state = [&]() {
    ExpVec em(P.Fm.n(), 0), ep(P.Fp.n(), 0);
    if (!em.empty()) em[0] = 1;
    if (!ep.empty()) ep[0] = 1;
    return bimod_monomial(P, em, ep, HPoly(1));
  };

  std::vector<Node> trees;
  for (int off = 0; off < 3; ++off) {
    if (weyl_only) {
      // all intervals to the right of the defect
      Node t1{0.1, 3.0, {}, std::nullopt};
      t1.kids.push_back(Node{0.2, 1.4, {leaf_node(0.3, 0.6, gen(off)), leaf_node(0.7, 1.3, gen(off + 1))}, std::nullopt});
      t1.kids.push_back(Node{1.5, 2.9, {leaf_node(1.6, 2.0, gen_sq(off)), leaf_node(2.1, 2.8, gen(off + 2))}, std::nullopt});
      trees.push_back(t1);
      if (depth >= 3) {
        Node mid{0.2, 2.9, {}, std::nullopt};
        mid.kids.push_back(Node{0.3, 1.4, {leaf_node(0.4, 0.7, gen(off)), leaf_node(0.8, 1.3, gen(off + 1))}, std::nullopt});
        mid.kids.push_back(leaf_node(1.6, 2.0, gen_sq(off + 1)));
        Node t2{0.1, 3.0, {mid, leaf_node(2.92, 2.98, gen(off + 2))}, std::nullopt};
        trees.push_back(t2);
      }
    } else {
      Node t1{-3.0, 3.0, {}, std::nullopt};
      t1.kids.push_back(Node{-2.6, -0.4, {leaf_node(-2.5, -2.0, gen(off)), leaf_node(-1.5, -1.0, gen(off + 1))}, std::nullopt});
      t1.kids.push_back(leaf_mod(-0.3, 0.3, bimod_vacuum(P)));
      t1.kids.push_back(Node{0.4, 2.6, {leaf_node(0.5, 1.0, gen(off)), leaf_node(1.5, 2.0, gen(off + 1))}, std::nullopt});
      trees.push_back(t1);

      Node t2{-3.0, 3.0, {}, std::nullopt};
      t2.kids.push_back(Node{-1.2, 1.2,
                             {leaf_node(-1.0, -0.5, gen(off + 1)), leaf_mod(-0.3, 0.3, state()),
                              leaf_node(0.5, 1.0, gen(off))},
                             std::nullopt});
      t2.kids.push_back(leaf_node(-2.8, -1.4, gen_sq(off)));
      t2.kids.push_back(leaf_node(1.4, 2.8, gen(off + 2)));
      trees.push_back(t2);

      if (depth >= 3) {
        Node inner{-2.7, 2.7, {}, std::nullopt};
        inner.kids.push_back(Node{-2.6, -0.4, {leaf_node(-2.5, -2.0, gen(off)), leaf_node(-1.5, -1.0, gen(off + 1))}, std::nullopt});
        inner.kids.push_back(leaf_mod(-0.3, 0.3, bimod_vacuum(P)));
        inner.kids.push_back(Node{0.4, 2.6, {leaf_node(0.5, 1.0, gen(off + 1)), leaf_node(1.5, 2.0, gen(off))}, std::nullopt});
        Node t3{-3.0, 3.0, {inner, leaf_node(2.8, 2.9, gen(off))}, std::nullopt};
        trees.push_back(t3);
      }
    }
  }

  for (auto& t : trees) {
    if (tree_depth(t) - 1 > depth) continue;  // nesting levels, not node levels
    ++rep.configurations;
    ConfigElement staged = evaluate_staged(P, t);
    std::vector<ConfigElement> leaves;
    collect_leaves(t, leaves);
    PrefactValue flat = prefact_evaluate(P, std::move(leaves), t.a, t.b);
    PrefactValue nested;
    nested.is_module = static_cast<bool>(staged.mod);
    if (staged.mod)
      nested.mod = *staged.mod;
    else
      nested.alg = *staged.alg;
    if (!(flat == nested)) {
      rep.pass = false;
      if (rep.first_failure.empty())
        rep.first_failure = "composition mismatch on " + describe(t);
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Classical counterpart.

bool PolyV::is_zero() const {
  for (auto& [e, c] : table)
    if (c != 0) return false;
  return true;
}

bool operator==(const PolyV& a, const PolyV& b) {
  if (a.dim != b.dim) return false;
  std::map<ExpVec, Rat> diff = a.table;
  for (auto& [e, c] : b.table) diff[e] -= c;
  for (auto& [e, c] : diff)
    if (c != 0) return false;
  return true;
}

PolyV poly_monomial(int dim, const ExpVec& e, Rat coef) {
  if (static_cast<int>(e.size()) != dim) throw std::invalid_argument("exponent size");
  PolyV f;
  f.dim = dim;
  if (coef != 0) f.table[e] = std::move(coef);
  return f;
}

PolyV poly_add(const PolyV& f, const PolyV& g) {
  PolyV h = f;
  for (auto& [e, c] : g.table) {
    h.table[e] += c;
    if (h.table[e] == 0) h.table.erase(e);
  }
  return h;
}

PolyV poly_mul(const PolyV& f, const PolyV& g) {
  PolyV h;
  h.dim = f.dim;
  for (auto& [ef, cf] : f.table)
    for (auto& [eg, cg] : g.table) {
      ExpVec e = ef;
      for (size_t i = 0; i < e.size(); ++i) e[i] += eg[i];
      h.table[e] += cf * cg;
    }
  for (auto it = h.table.begin(); it != h.table.end();)
    it = (it->second == 0) ? h.table.erase(it) : std::next(it);
  return h;
}

PolyV poly_scale(const Rat& s, PolyV f) {
  if (s == 0) {
    f.table.clear();
    return f;
  }
  for (auto& [e, c] : f.table) c *= s;
  return f;
}

namespace {

PolyV poly_derivative(const PolyV& f, int i) {
  PolyV g;
  g.dim = f.dim;
  for (auto& [e, c] : f.table) {
    if (e[i] == 0) continue;
    ExpVec e2 = e;
    e2[i] -= 1;
    g.table[e2] += c * Rat(e[i]);
  }
  return g;
}

}  // namespace

PolyV poisson_bracket(const SymplecticVS& V, const PolyV& f, const PolyV& g) {
  PolyV out;
  out.dim = f.dim;
  for (int i = 0; i < V.dim; ++i) {
    PolyV fi = poly_derivative(f, i);
    if (fi.table.empty()) continue;
    for (int j = 0; j < V.dim; ++j) {
      if (V.omega(i, j) == 0) continue;
      PolyV gj = poly_derivative(g, j);
      if (gj.table.empty()) continue;
      out = poly_add(out, poly_scale(V.omega(i, j), poly_mul(fi, gj)));
    }
  }
  return out;
}

PolyV restrict_to_subspace(const MatR& basis, const PolyV& f) {
  const int n = basis.cols;
  PolyV out;
  out.dim = n;
  for (auto& [e, c] : f.table) {
    PolyV term = poly_monomial(n, ExpVec(n, 0), c);
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      PolyV lin;
      lin.dim = n;
      for (int k = 0; k < n; ++k)
        if (basis(static_cast<int>(i), k) != 0) {
          ExpVec ek(n, 0);
          ek[k] = 1;
          lin.table[ek] = basis(static_cast<int>(i), k);
        }
      for (int r = 0; r < e[i]; ++r) term = poly_mul(term, lin);
    }
    out = poly_add(out, term);
  }
  return out;
}

PolyV classical_shadow(const WeylElement& a) {
  PolyV f;
  f.dim = a.dim;
  for (auto& [e, c] : a.table) {
    Rat c0 = c.coeff(0);
    if (c0 != 0) f.table[e] = c0;
  }
  return f;
}

namespace {

// Vanishing ideal of span(basis): generated by the linear forms omega . u for
// u in the omega-orthogonal of the span. Membership is decided by restriction.
std::vector<PolyV> ideal_generators(const SymplecticVS& V, const MatR& basis) {
  MatR perp = kernel(basis.transpose() * V.omega);
  MatR forms = V.omega * perp;
  std::vector<PolyV> gens;
  for (int j = 0; j < forms.cols; ++j) {
    PolyV g;
    g.dim = V.dim;
    for (int i = 0; i < V.dim; ++i)
      if (forms(i, j) != 0) {
        ExpVec e(V.dim, 0);
        e[i] = 1;
        g.table[e] = forms(i, j);
      }
    gens.push_back(std::move(g));
  }
  return gens;
}

std::vector<ExpVec> monomials_up_to(int dim, int deg) {
  std::vector<ExpVec> out;
  ExpVec cur(dim, 0);
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == dim) {
      out.push_back(cur);
      return;
    }
    for (int k = 0; k <= left; ++k) {
      cur[i] = k;
      rec(i + 1, left - k);
    }
    cur[i] = 0;
  };
  rec(0, deg);
  return out;
}

SideReport analyze_side(const SymplecticVS& V, const MatR& basis, int check_degree) {
  SideReport rep;
  rep.lagrangian = (basis.cols * 2 == V.dim) && (basis.cols == 0 || rank(basis) == basis.cols) &&
                   is_isotropic_subspace(V, basis);

  auto in_ideal = [&](const PolyV& f) { return restrict_to_subspace(basis, f).is_zero(); };
  std::vector<PolyV> gens = ideal_generators(V, basis);
  rep.ideal_bracket_closed = true;
  std::vector<ExpVec> monos = monomials_up_to(V.dim, std::max(0, check_degree - 2));
  for (auto& gi : gens) {
    for (auto& gj : gens) {
      for (auto& e : monos) {
        PolyV f = poly_mul(gj, poly_monomial(V.dim, e, 1));
        if (!in_ideal(poisson_bracket(V, gi, f))) {
          rep.ideal_bracket_closed = false;
          break;
        }
      }
      if (!rep.ideal_bracket_closed) break;
    }
    if (!rep.ideal_bracket_closed) break;
  }

  rep.restriction_algebra_map = true;
  std::vector<ExpVec> small = monomials_up_to(V.dim, check_degree / 2);
  for (auto& e1 : small)
    for (auto& e2 : small) {
      PolyV f = poly_monomial(V.dim, e1, 1), g = poly_monomial(V.dim, e2, 1);
      PolyV lhs = restrict_to_subspace(basis, poly_mul(f, g));
      PolyV rhs = poly_mul(restrict_to_subspace(basis, f), restrict_to_subspace(basis, g));
      if (!(lhs == rhs)) {
        rep.restriction_algebra_map = false;
        break;
      }
    }
  return rep;
}

}  // namespace

PoissonPrefact classical_defect_prefact(const SymplecticVS& V, const MatR& Lm_basis,
                                        const MatR& Lp_basis, int check_degree) {
  V.validate();
  PoissonPrefact P;
  P.V = V;
  P.Lm_basis = Lm_basis;
  P.Lp_basis = Lp_basis;
  P.minus = analyze_side(V, Lm_basis, check_degree);
  P.plus = analyze_side(V, Lp_basis, check_degree);
  P.valid = P.minus.lagrangian && P.minus.ideal_bracket_closed && P.plus.lagrangian &&
            P.plus.ideal_bracket_closed;
  return P;
}

// ---------------------------------------------------------------------------
// Domain walls.

DomainWallModel domain_wall_assignment(bool circle, int g_dim, double t) {
  if (g_dim < 0) throw std::domain_error("Lie algebra dimension must be >= 0");
  DomainWallModel M;
  const int h = circle ? 2 : 1;  // dim H*(D)
  const int g = g_dim;
  SymplecticVS V;
  if (circle) {
    // basis: 1 (x) x_a, 1 (x) xi_a, th (x) x_a, th (x) xi_a; the pairing
    // integrates the product of cohomology factors and evaluates g against g*
    V.dim = 2 * h * g;
    V.omega = MatR::zero(V.dim, V.dim);
    for (int a = 0; a < g; ++a) {
      std::string sa = std::to_string(a + 1);
      V.labels.push_back("1.x" + sa);
    }
    for (int a = 0; a < g; ++a) V.labels.push_back("1.xi" + std::to_string(a + 1));
    for (int a = 0; a < g; ++a) V.labels.push_back("th.x" + std::to_string(a + 1));
    for (int a = 0; a < g; ++a) V.labels.push_back("th.xi" + std::to_string(a + 1));
    for (int a = 0; a < g; ++a) {
      int i1x = a, i1xi = g + a, ithx = 2 * g + a, ithxi = 3 * g + a;
      V.omega(i1x, ithxi) = 1;
      V.omega(ithxi, i1x) = -1;
      V.omega(i1xi, ithx) = 1;
      V.omega(ithx, i1xi) = -1;
    }
  } else {
    // contractible D: V = g (+) g* with the evaluation pairing
    V.dim = 2 * g;
    V.omega = MatR::zero(V.dim, V.dim);
    for (int a = 0; a < g; ++a) V.labels.push_back("x" + std::to_string(a + 1));
    for (int a = 0; a < g; ++a) V.labels.push_back("xi" + std::to_string(a + 1));
    for (int a = 0; a < g; ++a) {
      V.omega(a, g + a) = 1;
      V.omega(g + a, a) = -1;
    }
  }
  M.V = V;

  // A-field summand H*(D) (x) g
  int n = V.dim / 2;
  MatR L(V.dim, n);
  if (circle) {
    for (int a = 0; a < g; ++a) {
      L(a, a) = 1;              // 1 (x) x_a
      L(2 * g + a, g + a) = 1;  // th (x) x_a
    }
  } else {
    for (int a = 0; a < g; ++a) L(a, a) = 1;
  }
  M.L0.basis = L;
  M.L1.basis = L;
  if (V.dim > 0) {
    M.line = build_defect_prefact(V, M.L0, M.L1, t);
  } else {
    M.line.V = V;
    M.line.t = t;
    M.line.Fm.V = V;
    M.line.Fp.V = V;
    M.line.Fm.L.basis = MatR::zero(0, 0);
    M.line.Fp.L.basis = MatR::zero(0, 0);
    M.line.Fm.complement = MatR::zero(0, 0);
    M.line.Fp.complement = MatR::zero(0, 0);
  }
  return M;
}

// ---------------------------------------------------------------------------
// JSON views.

json to_json(const SymplecticVS& V) {
  return json{{"dim", V.dim}, {"labels", V.labels}, {"omega", to_json(V.omega)}};
}

json to_json(const WeylElement& a, const SymplecticVS& V) {
  json terms = json::array();
  for (auto& [e, c] : a.table) {
    if (c.is_zero()) continue;
    json hc = json::array();
    for (auto& x : c.c) hc.push_back(rat_to_string(x));
    terms.push_back(json{{"exponents", e}, {"hbar_coeffs", hc}});
  }
  return json{{"dim", a.dim},
              {"cap", a.cap},
              {"truncated", a.truncated},
              {"terms", terms},
              {"pretty", a.str(V)}};
}

json to_json(const AxiomReport& r) {
  return json{{"pass", r.pass},
              {"configurations", r.configurations},
              {"depth", r.depth},
              {"first_failure", r.first_failure}};
}

json to_json(const PoissonPrefact& p) {
  auto side = [](const SideReport& s) {
    return json{{"lagrangian", s.lagrangian},
                {"ideal_bracket_closed", s.ideal_bracket_closed},
                {"restriction_algebra_map", s.restriction_algebra_map}};
  };
  return json{{"valid", p.valid}, {"minus", side(p.minus)}, {"plus", side(p.plus)}};
}

}  // namespace dwb
