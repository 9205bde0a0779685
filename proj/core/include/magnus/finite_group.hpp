#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "magnus/smith.hpp"

namespace magnus {

class FiniteGroup;
struct GroupQuotient;
struct CentralImageResult;

// Subset of a finite group's elements, fixed universe size.
class ElementSet {
 public:
  explicit ElementSet(int universe) : bits_(universe, false), count_(0) {}

  int universe() const { return static_cast<int>(bits_.size()); }
  int count() const { return count_; }
  bool contains(int i) const { return bits_[static_cast<size_t>(i)]; }

  void add(int i) {
    if (!bits_[static_cast<size_t>(i)]) {
      bits_[static_cast<size_t>(i)] = true;
      ++count_;
    }
  }

  std::vector<int> elements() const {
    std::vector<int> out;
    out.reserve(count_);
    for (int i = 0; i < universe(); ++i)
      if (bits_[static_cast<size_t>(i)]) out.push_back(i);
    return out;
  }

  bool is_subset_of(const ElementSet& o) const {
    if (universe() != o.universe()) return false;
    for (int i = 0; i < universe(); ++i)
      if (bits_[static_cast<size_t>(i)] && !o.bits_[static_cast<size_t>(i)]) return false;
    return true;
  }

  bool operator==(const ElementSet& o) const { return bits_ == o.bits_; }
  bool operator!=(const ElementSet& o) const { return !(*this == o); }
  // lexicographic on the bit pattern; used for deterministic bucketing
  bool operator<(const ElementSet& o) const { return bits_ < o.bits_; }

 private:
  std::vector<bool> bits_;
  int count_;
};

struct MagnusResult {
  bool has_property = true;
  // lexicographically least ordered pair (x, y) with equal normal closures
  // where x is conjugate to neither y nor y^-1
  std::optional<std::pair<int, int>> witness;
};

/**
 * Finite group as an explicit Cayley table.  Element 0 is the identity.
 * Tables come only from verified constructions (cyclic factors, permutation
 * closures, direct products, quotients by checked normal subgroups), so
 * associativity is inherited rather than asserted per table.
 */
class FiniteGroup {
 public:
  static constexpr int kDefaultCap = 5000;

  static FiniteGroup from_cyclic_factors(const std::vector<long long>& factors,
                                         int cap = kDefaultCap);
  static FiniteGroup from_permutations(const std::vector<std::vector<int>>& gens,
                                       int cap = kDefaultCap);
  static FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b,
                                    int cap = kDefaultCap);

  // Trusted-table constructor for callers that already guarantee a group
  // (crystallographic quotients).  Checks identity/inverse axioms plus
  // closure bounds; associativity is the caller's invariant.
  static FiniteGroup from_table(std::vector<std::vector<int>> table, std::vector<int> gens,
                                std::vector<std::string> labels);

  int order() const { return n_; }
  int id() const { return 0; }
  int mul(int a, int b) const { return mul_[static_cast<size_t>(a) * n_ + b]; }
  int inv(int a) const { return inv_[static_cast<size_t>(a)]; }
  int conj(int g, int w) const { return mul(mul(inv(w), g), w); }
  int comm(int a, int b) const { return mul(mul(inv(a), inv(b)), mul(a, b)); }
  int power(int g, long long e) const;
  long long element_order(int g) const;
  bool is_abelian() const;
  bool is_prime_power_order(long long& p_out) const;

  const std::vector<int>& generators() const { return gens_; }
  std::string label(int g) const {
    return labels_.empty() ? std::to_string(g) : labels_[static_cast<size_t>(g)];
  }

  // Exhaustive associativity audit, O(n^3); for test-sized groups.
  bool associativity_holds_full() const;
  // Spot-check for larger tables, deterministic sampling.
  bool associativity_holds_sampled(int samples) const;

  ElementSet subgroup_closure(const std::vector<int>& gens) const;
  ElementSet normal_closure(int g) const;
  ElementSet normal_closure_of_set(const std::vector<int>& gens) const;
  ElementSet conjugacy_class(int g) const;
  bool are_conjugate(int g, int h) const;

  // |<g>^G| / |<[g,x] : x in G>^G|, the order of the cyclic quotient of the
  // normal closure by the commutator part.
  long long closure_cyclic_quotient_order(int g) const;

  MagnusResult has_magnus() const;

  std::vector<ElementSet> lower_central_series() const;

  GroupQuotient quotient(const ElementSet& normal_subgroup) const;

  // For a p-group and x != id: the quotient by the next lower-central term
  // below the deepest one containing x; the image of x is central there.
  CentralImageResult central_image_quotient(int x) const;

  ElementSet commutator_subgroup() const;
  AbelianInvariants abelian_invariants() const;

 private:
  FiniteGroup() = default;
  void finish_tables(int cap);

  int n_ = 0;
  std::vector<int32_t> mul_;
  std::vector<int32_t> inv_;
  std::vector<int> gens_;
  std::vector<std::string> labels_;
};

struct GroupQuotient {
  FiniteGroup group;
  std::vector<int> projection;  // element index -> coset index
};

struct CentralImageResult {
  FiniteGroup quotient;
  std::vector<int> projection;
  int image;  // nontrivial central image of x
};

// Obstructions to reading a Magnus violation off the pair (g,h) versus
// (g,h^-1) in G x H.  When all three are false and both factors have the
// Magnus property, the pair witnesses that the product does not.
struct InversePairFlags {
  bool left_conj_inverse = false;   // g ~ g^-1 in G
  bool right_conj_inverse = false;  // h ~ h^-1 in H
  bool closures_differ = false;     // <(g,h)>^(GxH) != <(g,h^-1)>^(GxH)

  bool certifies_violation() const {
    return !left_conj_inverse && !right_conj_inverse && !closures_differ;
  }
  bool operator==(const InversePairFlags& o) const {
    return left_conj_inverse == o.left_conj_inverse &&
           right_conj_inverse == o.right_conj_inverse &&
           closures_differ == o.closures_differ;
  }
};
InversePairFlags inverse_pair_flags(const FiniteGroup& g_group,
                                    const FiniteGroup& h_group, int g, int h,
                                    int cap = FiniteGroup::kDefaultCap);

// True iff some m | closure_cyclic_quotient_order(G,g) and
// n | closure_cyclic_quotient_order(H,h) exist with gcd(m,n) not in {1,2};
// equivalently gcd of the two orders is at least 3.
bool product_gcd_obstruction(const FiniteGroup& g_group, const FiniteGroup& h_group, int g, int h);

// wordlang operation context
struct FiniteOps {
  using Element = int;
  const FiniteGroup* group;
  Element identity() const { return 0; }
  Element mul(Element a, Element b) const { return group->mul(a, b); }
  Element inv(Element a) const { return group->inv(a); }
};

}  // namespace magnus
