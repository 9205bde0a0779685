#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "magnus/crystal.hpp"
#include "magnus/finite_group.hpp"
#include "magnus/lattice.hpp"
#include "magnus/rational.hpp"

namespace magnus {

class ProductGroup;

// One coordinate of a direct-product element: a crystallographic element or
// an index into a finite Cayley table.
using FactorElement = std::variant<CrystalElement, int>;

struct ProductElement {
  FactorElement left;
  FactorElement right;

  bool operator==(const ProductElement& o) const {
    return left == o.left && right == o.right;
  }
  bool operator!=(const ProductElement& o) const { return !(*this == o); }
};

/**
 * Normal closure of rep in a two-factor direct product, split the same way
 * as NormalClosure: commutators decouple, [(g,h), GxH] = [g,G] x [h,H], and
 * modulo that part the closure is cyclic, generated by rep itself.
 *
 * With two crystallographic factors the commutator part is kept as lattices
 * in concatenated coordinates (left block, then right block) and membership
 * runs exactly as in the single-factor case with d = the order of the pair
 * of holonomy images.  Otherwise membership is decided per factor: w lies in
 * g^j.[g,G] for j in a single residue class modulo the factor period, and a
 * pair belongs to the closure iff its two residue classes intersect, i.e.
 * agree modulo gcd(left_period, right_period).
 */
struct ProductClosure {
  ProductElement rep;
  int d = 1;                            // crystal x crystal: holonomy order of the pair
  std::optional<Lattice> commutators;   // [g,G] (+) [h,H], concatenated
  std::optional<Lattice> translations;  // commutators + Z.vec(rep^d)

  // per-factor cyclic data, set for whichever route the factor uses
  std::optional<NormalClosure> left_crystal;
  std::optional<NormalClosure> right_crystal;
  std::optional<ElementSet> left_table;  // [g,G] inside the left Cayley table
  std::optional<ElementSet> right_table;
  BigInt left_period = 1;  // order of g modulo [g,G] in the left factor
  BigInt right_period = 1;

  // Order of rep modulo the commutator part of its closure.
  BigInt cyclic_index() const;
};

// [g,G] as a subgroup of the Cayley table: the closure of every commutator
// of g, conjugation-stable by the Hall-Witt shuffle [g,x]^y = [g,y]^{-1}[g,xy].
ElementSet element_commutators(const FiniteGroup& group, int g);

// The unique j in [0, period) with w in g^j.[g,G], if one exists.  period
// must be the factor's cyclic index for g (closure_cyclic_index resp.
// closure_cyclic_quotient_order); n resp. commutators the matching closure
// data of g.
std::optional<BigInt> closure_residue(const CrystalGroup& group, const NormalClosure& n,
                                      const BigInt& period, const CrystalElement& w);
std::optional<long long> closure_residue(const FiniteGroup& group, int rep,
                                         const ElementSet& commutators, long long period,
                                         int w);

/**
 * Direct product of two factors, each either a crystallographic group or a
 * finite Cayley-table group.  Factor groups are borrowed, not owned, and
 * must outlive the product and every element made through it.
 */
class ProductGroup {
 public:
  ProductGroup(const CrystalGroup& left, const CrystalGroup& right);
  ProductGroup(const CrystalGroup& left, const FiniteGroup& right);
  ProductGroup(const FiniteGroup& left, const CrystalGroup& right);
  ProductGroup(const FiniteGroup& left, const FiniteGroup& right);

  bool left_is_crystal() const { return lc_ != nullptr; }
  bool right_is_crystal() const { return rc_ != nullptr; }
  std::string name() const;

  // Validates that the coordinates match the factor descriptors.
  ProductElement element(FactorElement left, FactorElement right) const;
  ProductElement identity() const;

  // --- group law, coordinatewise -------------------------------------------
  ProductElement mul(const ProductElement& a, const ProductElement& b) const;
  ProductElement inv(const ProductElement& a) const;
  ProductElement power(const ProductElement& a, const BigInt& k) const;
  ProductElement conjugate(const ProductElement& a, const ProductElement& w) const;
  ProductElement commutator(const ProductElement& a, const ProductElement& b) const;

  // --- normal closures ------------------------------------------------------
  ProductClosure closure(const ProductElement& g) const;
  bool closure_contains(const ProductClosure& n, const ProductElement& w) const;
  bool closure_equal(const ProductElement& a, const ProductElement& b) const;
  BigInt closure_cyclic_index(const ProductElement& g) const;

  // --- conjugacy, coordinatewise --------------------------------------------
  bool are_conjugate(const ProductElement& a, const ProductElement& b) const;
  bool conjugate_to_inverse(const ProductElement& g) const;

  // Obstructions of (g,h) against (g,h^-1); when every flag is clear and
  // both factors have the Magnus property, the product does not.
  InversePairFlags inverse_pair_obstruction(const ProductElement& g) const;

  std::string to_string(const ProductElement& g) const;

 private:
  void check_element(const ProductElement& g) const;

  const CrystalGroup* lc_ = nullptr;
  const FiniteGroup* lf_ = nullptr;
  const CrystalGroup* rc_ = nullptr;
  const FiniteGroup* rf_ = nullptr;
};

/**
 * Computed evidence that hw x gp(3) lacks the Magnus property even though
 * both factors have it.  The witness pair is (x, e_inf) against
 * (x, e_inf^-1): equal normal closures, yet neither coordinate is conjugate
 * to its inverse, so the pair is conjugate to neither the other nor its
 * inverse.
 */
struct CounterexampleReport {
  std::string left_group, right_group;
  std::string left_element, right_element;

  // cyclic quotients <g>^G / [g,G] of the two coordinates
  BigInt left_cyclic_index = 0;   // 4
  BigInt right_cyclic_index = 0;  // 3
  int left_holonomy_order = 0;    // 2
  int right_holonomy_order = 0;   // 1

  // conjugator nonexistence: for every holonomy class of a would-be
  // conjugator the translation of the inverse misses the reachable coset;
  // one reduced nonzero difference per class
  bool left_conjugate_to_inverse = true;
  bool right_conjugate_to_inverse = true;
  std::vector<std::string> left_misses;   // 4 entries
  std::vector<std::string> right_misses;  // 9 entries

  // equal closures, certified both ways through the product machinery
  bool closures_equal = false;
  // residues of (x, e_inf^-1) against the closure of (x, e_inf)
  BigInt left_residue = 0, right_residue = 0;       // 1 mod 4, 2 mod 3
  BigInt combined_residue = 0, combined_modulus = 0;  // 5 mod 12

  // image of the closure modulo the decoupled commutator part: the cyclic
  // subdirect subgroup of C4 x C3 generated by the pair of cosets
  BigInt subdirect_order = 0;  // 12
  bool projects_left = false, projects_right = false;

  InversePairFlags flags;

  bool magnus_fails() const { return flags.certifies_violation() && closures_equal; }
  std::string to_string() const;
};

// Runs the whole computation; left must be hw(), right must be gp(3).
CounterexampleReport counterexample_report(const CrystalGroup& left,
                                           const CrystalGroup& right);

// ProductGroup context for the word evaluator is intentionally absent: words
// name elements of a single factor; pairs are assembled by the caller.

}  // namespace magnus
