#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "magnus/cyclotomic.hpp"
#include "magnus/finite_group.hpp"
#include "magnus/intmatrix.hpp"
#include "magnus/lattice.hpp"
#include "magnus/rational.hpp"
#include "magnus/smith.hpp"

namespace magnus {

class CrystalGroup;

/**
 * Element in normal form u^i v^j . b(t): a holonomy coset representative
 * followed by a translation.  For the rank-3 group read u = x, v = y and
 * t = (a,b,c) meaning x^{2a} y^{2b} z^{2c}; for odd p the translation is the
 * coefficient vector over the block basis (see CrystalGroup::rank).
 */
struct CrystalElement {
  const CrystalGroup* group = nullptr;
  int qi = 0, qj = 0;
  IntVec t;

  bool operator==(const CrystalElement& o) const {
    return group == o.group && qi == o.qi && qj == o.qj && t == o.t;
  }
  bool operator!=(const CrystalElement& o) const { return !(*this == o); }
  // Lexicographic on (qi, qj, t); used for deterministic report ordering.
  bool operator<(const CrystalElement& o) const {
    if (qi != o.qi) return qi < o.qi;
    if (qj != o.qj) return qj < o.qj;
    return t < o.t;
  }
};

/**
 * Normal closure of rep, split along <g>^G = <g> . [g,G]:
 *   - commutators: the lattice of translations of [g,w], w in G;
 *   - translations: commutators + Z.trans(g^d), exactly the elements of the
 *     closure with trivial holonomy;
 *   - d: order of the holonomy image of rep.
 * Membership: holonomy(w) = holonomy(rep)^k for some 0 <= k < d and
 * trans(w.rep^{-k}) in translations.
 */
struct NormalClosure {
  CrystalElement rep;
  int d = 1;
  Lattice commutators;
  Lattice translations;
};

struct ScanOptions {
  long long bound = 1;
  // Maximum number of nonzero translation coordinates per element; -1 means
  // unrestricted unless the budget forces one.
  int max_support = -1;
  // Upper bound on enumerated elements; the support limit is lowered until
  // the region fits.
  long long budget = 200000;
  bool translations_only = false;
};

// One equal-closure, non-conjugate pair.  Members are representatives of two
// conjugacy units (class together with inverse class) inside one closure
// class; every cross pair between the two units violates the Magnus
// condition, so one representative pair is reported per unit pair.
struct ScanViolation {
  CrystalElement a, b;
};

struct ScanReport {
  long long elements = 0;        // elements enumerated
  long long closure_classes = 0; // distinct normal closures seen
  int effective_support = 0;
  bool support_restricted = false;
  std::string region;            // human-readable description of the box
  std::vector<ScanViolation> violations;
  bool magnus_within_region() const { return violations.empty(); }
};

/**
 * Finite quotient by the translations in m.Z^n, as an explicit Cayley table
 * plus the projection map.  Element order in the table is lexicographic in
 * (qi, qj, t mod m), so index 0 is the identity.
 */
struct CrystalQuotient {
  const CrystalGroup* source = nullptr;
  long long modulus = 0;
  FiniteGroup group;

  int project(const CrystalElement& g) const;
};

/**
 * The two crystallographic families, fixed at construction and immutable:
 *
 *   hw()  - the rank-3 torsion-free group <x,y | x^{-1}y^2x = y^{-2},
 *           y^{-1}x^2y = x^{-2}> (Hantzsche-Wendt), holonomy C2 x C2 acting
 *           on A = <x^2, y^2, z^2> with z = xy;
 *   gp(p) - for odd p in {3,5,7}: holonomy Cp x Cp acting on a rank
 *           (p-1)(p+1) lattice B = sum of p+1 blocks Z[zeta], indexed
 *           (inf, 0, 1, ..., p-1), block coefficients over the basis
 *           (1, zeta, ..., zeta^{p-2}).  u acts trivially on block inf and
 *           by zeta elsewhere; v acts by zeta on block inf, trivially on
 *           block 0 and by zeta^i on block i.
 *
 * Construction precomputes the holonomy representatives, the 2-cocycle of
 * the extension, the action matrices and their image lattices, and verifies
 * the defining relations through the faithful affine representation; any
 * mismatch throws std::logic_error.
 */
class CrystalGroup {
 public:
  static const CrystalGroup& hw();
  static const CrystalGroup& gp(int p);

  int p() const { return p_; }
  bool is_hw() const { return p_ == 2; }
  std::size_t rank() const { return n_; }
  std::size_t rep_dim() const { return n_slots_ + 1; }
  std::string name() const { return p_ == 2 ? "hw" : "g" + std::to_string(p_); }

  // --- element factories -------------------------------------------------
  CrystalElement identity_element() const { return make(0, 0, IntVec(n_)); }
  CrystalElement gen_u() const { return make(1, 0, IntVec(n_)); }
  CrystalElement gen_v() const { return make(0, 1, IntVec(n_)); }
  CrystalElement make(int qi, int qj, IntVec t) const;
  CrystalElement translation(IntVec t) const { return make(0, 0, std::move(t)); }
  // Translation with a single cyclotomic coefficient: block index in
  // [0, p+1) ordered (inf, 0, ..., p-1).  Odd p only.
  CrystalElement block_translation(std::size_t block, const CycloInt& coeff) const;

  // Generator environment for the word evaluator: x,y,z for hw();
  // u,v,e_inf,e_0,...  plus the hatted basis names eh_* for gp(3).
  std::map<std::string, CrystalElement> word_environment() const;

  // --- group law ----------------------------------------------------------
  CrystalElement mul(const CrystalElement& a, const CrystalElement& b) const;
  CrystalElement inv(const CrystalElement& a) const;
  CrystalElement power(const CrystalElement& a, const BigInt& k) const;
  CrystalElement conjugate(const CrystalElement& a, const CrystalElement& w) const;
  CrystalElement commutator(const CrystalElement& a, const CrystalElement& b) const;

  // --- representation views ------------------------------------------------
  // Affine matrix of the element: rows/cols ordered (affine slot, block
  // slots).  The rational view is defined for hw(), the cyclotomic one for
  // odd p; the wrong view throws std::domain_error.
  std::vector<std::vector<BigRat>> matrix_rat(const CrystalElement& g) const;
  std::vector<std::vector<CycloRat>> matrix_cyclo(const CrystalElement& g) const;
  CrystalElement from_matrix_rat(const std::vector<std::vector<BigRat>>& m) const;
  CrystalElement from_matrix_cyclo(const std::vector<std::vector<CycloRat>>& m) const;

  // --- holonomy data --------------------------------------------------------
  int holonomy_order(const CrystalElement& g) const {
    return (g.qi == 0 && g.qj == 0) ? 1 : (p_ == 2 ? 2 : p_);
  }
  // rho(u^i v^j): right-action matrix on translation coordinates.
  const IntMatrix& action(int qi, int qj) const;
  // K(q) = image lattice of rho(q) - I; conjugating by translations shifts
  // trans(g) exactly by K(holonomy(g)).
  const Lattice& conjugation_image(int qi, int qj) const;

  // --- closures ---------------------------------------------------------------
  Lattice commutator_module(const CrystalElement& g) const;
  NormalClosure normal_closure(const CrystalElement& g) const;
  bool closure_contains(const NormalClosure& n, const CrystalElement& w) const;
  bool closure_equal(const CrystalElement& g, const CrystalElement& h) const;
  // d * [NA : L]: the order of <g>^G modulo the commutator part (finite for
  // every g != id; returns 1 for the identity).
  BigInt closure_cyclic_index(const CrystalElement& g) const;

  // --- conjugacy ---------------------------------------------------------------
  std::pair<CrystalElement, Lattice> conjugates_lattice(const CrystalElement& g) const;
  // Translations of g conjugated by each holonomy representative, reduced
  // modulo K(holonomy(g)); complete list of A-coset orbits.
  std::vector<IntVec> conjugacy_orbit(const CrystalElement& g) const;
  bool are_conjugate(const CrystalElement& g, const CrystalElement& h) const;
  bool conjugate_to_inverse(const CrystalElement& g) const;

  // --- global structure ---------------------------------------------------------
  AbelianInvariants abelianization() const;
  // Translation lattice of the commutator subgroup.
  Lattice commutator_subgroup_lattice() const;

  // --- automorphisms (odd p) -------------------------------------------------
  // sigma: u -> u, v -> uv, block coefficients shifted one block down
  // (b_i <- b_{i+1}, with inf+1 = inf).
  CrystalElement sigma(const CrystalElement& g) const;
  // tau: u <-> v, b_inf <- -b_0, b_0 <- -b_inf, b_i <- -b_{1/i}(zeta^i).
  CrystalElement tau(const CrystalElement& g) const;
  // Re-runs the relator-preservation checks done at construction; throws
  // std::logic_error on failure.  Odd p only.
  void verify_automorphisms() const;

  // --- scanning and quotients ---------------------------------------------------
  ScanReport magnus_scan(const ScanOptions& opt) const;
  CrystalQuotient finite_quotient(long long m, int cap = FiniteGroup::kDefaultCap) const;

  // --- printing -------------------------------------------------------------------
  std::string to_string(const CrystalElement& g) const;
  // Translation vector rendered per block for odd p ("[-2-z | 0 | 0 | 0]"),
  // plain triple for hw.
  std::string translation_string(const IntVec& t) const;

 private:
  friend struct CrystalQuotient;
  explicit CrystalGroup(int p);

  std::size_t qindex(int qi, int qj) const {
    return static_cast<std::size_t>(qi) * static_cast<std::size_t>(p_) +
           static_cast<std::size_t>(qj);
  }
  void check_element(const CrystalElement& g) const;
  CrystalElement rep_element(std::size_t q) const {
    return {this, static_cast<int>(q) / p_, static_cast<int>(q) % p_, IntVec(n_)};
  }
  std::vector<BigRat> w_of(const CrystalElement& g) const;
  void build_hw();
  void build_gp();
  void verify_hw() const;
  void verify_gp() const;
  void verify_automorphism(const IntMatrix& mb, const CrystalElement& img_u,
                           const CrystalElement& img_v) const;

  int p_;
  std::size_t n_;        // translation rank
  std::size_t n_slots_;  // blocks in the representation (3 for hw, p+1 odd)
  std::size_t blk_;      // coordinates per block (1 for hw, p-1 odd)
  std::size_t hcount_;   // p^2 holonomy classes

  // Indexed by qindex: representative translation row (flattened to
  // rationals for hw; cyclotomic per block for odd p), diagonal exponents,
  // action matrix, image lattice of (action - I).
  std::vector<std::vector<BigRat>> wrep_rat_;
  std::vector<std::vector<CycloRat>> wrep_cyc_;
  std::vector<std::vector<int>> dexp_;
  std::vector<IntMatrix> rho_;
  std::vector<Lattice> kimg_;
  // Cocycle: kappa_[q1*hcount_+q2] = trans(R(q1) R(q2) R(q1+q2)^{-1}).
  std::vector<IntVec> kappa_;
  // trans([R(q1), R(q2)]): with these cached, trans([g, R(q)]) is
  // trans([R(q_g), R(q)]) + t_g (rho(q) - I), one row product per class.
  std::vector<IntVec> comm_reps_;
  // Automorphism data (odd p): coefficient matrices of the lattice parts.
  std::optional<IntMatrix> sigma_b_, tau_b_;
};

// Operations context for evaluate() over a crystallographic group.
struct CrystalOps {
  const CrystalGroup* g;
  using Element = CrystalElement;
  Element identity() const { return g->identity_element(); }
  Element mul(const Element& a, const Element& b) const { return g->mul(a, b); }
  Element inv(const Element& a) const { return g->inv(a); }
};

}  // namespace magnus
