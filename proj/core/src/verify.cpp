#include "magnus/verify.hpp"

#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "magnus/catalog.hpp"
#include "magnus/crystal.hpp"
#include "magnus/cyclotomic.hpp"
#include "magnus/finite_group.hpp"
#include "magnus/lattice.hpp"
#include "magnus/product_magnus.hpp"
#include "magnus/word.hpp"

namespace magnus {

namespace {

// Accumulates requirements; remembers the first failure only, so the
// reported detail points at the earliest broken fact.
struct Gate {
  bool ok = true;
  std::string why;
  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      why = what;
    }
  }
};

CheckResult run_one(const std::string& name,
                    const std::function<void(Gate&, std::string&)>& body) {
  CheckResult r;
  r.name = name;
  Gate gate;
  std::string summary;
  try {
    body(gate, summary);
  } catch (const std::exception& e) {
    gate.require(false, std::string("exception: ") + e.what());
  }
  r.pass = gate.ok;
  r.detail = gate.ok ? summary : gate.why;
  return r;
}

IntVec vec3(long long a, long long b, long long c) {
  IntVec v(3);
  v[0] = a;
  v[1] = b;
  v[2] = c;
  return v;
}

// Translation vector with the given per-block ring coefficients.
IntVec block_vec(const CrystalGroup& G, const std::vector<CycloInt>& per_block) {
  size_t blk = static_cast<size_t>(G.p() - 1);
  IntVec t(G.rank());
  for (size_t s = 0; s < per_block.size(); ++s)
    for (size_t c = 0; c < blk; ++c) t[s * blk + c] = per_block[s].coeffs()[c];
  return t;
}

long long totient(long long n) {
  long long count = 0;
  for (long long k = 1; k <= n; ++k)
    if (std::gcd(k, n) == 1) ++count;
  return count;
}

// Word evaluation by plain repeated multiplication, no exponent tricks.
// Deliberately independent of the template evaluator it is checked against.
CrystalElement eval_plain(const Word& w,
                          const std::map<std::string, CrystalElement>& env,
                          const CrystalGroup& G) {
  switch (w.kind) {
    case Word::Kind::Identity:
      return G.identity_element();
    case Word::Kind::Generator: {
      auto it = env.find(w.name);
      if (it == env.end()) throw std::invalid_argument("unbound name " + w.name);
      return it->second;
    }
    case Word::Kind::Product: {
      CrystalElement acc = G.identity_element();
      for (const Word& f : w.args) acc = G.mul(acc, eval_plain(f, env, G));
      return acc;
    }
    case Word::Kind::Power: {
      CrystalElement base = eval_plain(w.args[0], env, G);
      BigInt e = w.exponent;
      if (e < 0) {
        base = G.inv(base);
        e = -e;
      }
      CrystalElement acc = G.identity_element();
      for (BigInt i = 0; i < e; ++i) acc = G.mul(acc, base);
      return acc;
    }
    case Word::Kind::Commutator: {
      CrystalElement a = eval_plain(w.args[0], env, G);
      CrystalElement b = eval_plain(w.args[1], env, G);
      return G.mul(G.mul(G.inv(a), G.inv(b)), G.mul(a, b));
    }
  }
  throw std::logic_error("unhandled word kind");
}

const char* const kRank3Words[] = {
    "x",
    "y",
    "z",
    "x y",
    "y x",
    "x^2",
    "y^-2",
    "z^2",
    "x^2 y^2",
    "x^-1 y^2 x",
    "y^-1 x^2 y",
    "[x, y]",
    "[y, x]",
    "[x, y]^3",
    "(x y)^2",
    "(x y^-1)^2",
    "x (y z)^-1",
    "[x^2, y]",
    "[x, y^2] x^4",
    "z^-1 x^2 z y^2",
    "(x^2 y^2)^-3",
    "[z, x] [z, y]",
    "x^5 y^-4 z^3",
    "[x, [x, y]]",
    "(x^-2 y^2 z^-2)^2",
};

const char* const kOddPWords[] = {
    "u",
    "v",
    "u v",
    "u^3",
    "v^-3",
    "(u v)^3",
    "[u, v]",
    "[v, u]",
    "e_inf",
    "eh_0 e_1^-1",
    "u^-1 e_0 u",
    "v^-1 e_inf v",
    "[e_1, u]",
    "[u, v]^2 e_2",
    "(u^2 v)^-2",
    "u e_inf u^-1 eh_inf",
    "[u, [u, v]]",
    "(e_0 eh_0)^3",
    "v^2 u^2 e_1^-2",
    "[e_2, v] [e_2, u]",
    "u^4 v^-2 (e_inf eh_1)^2",
};

void check_cyclic_magnus_law(Gate& g, std::string& sum) {
  for (long long n = 1; n <= 200; ++n) {
    FiniteGroup c = FiniteGroup::from_cyclic_factors({n});
    bool expect = n == 1 || n == 2 || n == 3 || n == 4 || n == 6;
    MagnusResult r = c.has_magnus();
    g.require(r.has_property == expect,
              "verdict for order " + std::to_string(n) + " is wrong");
    if (!expect)
      g.require(r.witness.has_value(),
                "missing witness for order " + std::to_string(n));
    // independent route: the property holds iff phi(n) <= 2
    g.require((totient(n) <= 2) == expect,
              "totient cross-check broke at " + std::to_string(n));
  }
  sum = "orders 1..200: property exactly on {1,2,3,4,6}, totient route agrees";
}

void check_cyclic_product_closure_law(Gate& g, std::string& sum) {
  int equal_count = 0;
  for (long long m = 1; m <= 12; ++m)
    for (long long n = 1; n <= 12; ++n) {
      FiniteGroup cm = FiniteGroup::from_cyclic_factors({m});
      FiniteGroup cn = FiniteGroup::from_cyclic_factors({n});
      FiniteGroup prod = FiniteGroup::direct_product(cm, cn);
      int x = m > 1 ? 1 : 0;
      int y = n > 1 ? 1 : 0;
      int a = x * static_cast<int>(n) + y;
      int b = x * static_cast<int>(n) + cn.inv(y);
      bool equal = prod.normal_closure(a) == prod.normal_closure(b);
      bool expect = std::gcd(m, n) <= 2;
      if (equal) ++equal_count;
      g.require(equal == expect, "closure comparison broke at m=" +
                                     std::to_string(m) + " n=" + std::to_string(n));
    }
  sum = "m,n <= 12: closures of (x,y) and (x,y^-1) coincide exactly when "
        "gcd(m,n) <= 2 (" +
        std::to_string(equal_count) + "/144 equal)";
}

void check_order_12_witness(Gate& g, std::string& sum) {
  FiniteGroup c4 = FiniteGroup::from_cyclic_factors({4});
  FiniteGroup c3 = FiniteGroup::from_cyclic_factors({3});
  g.require(c4.has_magnus().has_property, "C4 alone should pass");
  g.require(c3.has_magnus().has_property, "C3 alone should pass");
  FiniteGroup t = FiniteGroup::direct_product(c4, c3);
  MagnusResult r = t.has_magnus();
  g.require(!r.has_property, "C4 x C3 should fail");
  g.require(r.witness.has_value(), "C4 x C3 verdict lacks a witness");
  if (r.witness) {
    auto [a, b] = *r.witness;
    g.require(t.normal_closure(a) == t.normal_closure(b),
              "witness closures differ");
    g.require(!t.are_conjugate(a, b) && !t.are_conjugate(a, t.inv(b)),
              "witness pair is conjugate after all");
    sum = "factors pass, order-12 product fails with witness (" + t.label(a) +
          ", " + t.label(b) + ")";
  }
}

void check_hw_construction(Gate& g, std::string& sum) {
  const CrystalGroup& G = CrystalGroup::hw();
  auto x = G.gen_u(), y = G.gen_v();
  auto z = G.mul(x, y);
  auto x2 = G.power(x, 2), y2 = G.power(y, 2), z2 = G.power(z, 2);

  g.require(x2 == G.translation(vec3(1, 0, 0)), "x^2 is not the first basis shift");
  g.require(y2 == G.translation(vec3(0, 1, 0)), "y^2 is not the second basis shift");
  g.require(z2 == G.translation(vec3(0, 0, 1)), "(xy)^2 is not the third basis shift");

  g.require(G.conjugate(y2, x) == G.inv(y2), "x fails to invert y^2");
  g.require(G.conjugate(z2, x) == G.inv(z2), "x fails to invert z^2");
  g.require(G.conjugate(x2, y) == G.inv(x2), "y fails to invert x^2");
  g.require(G.conjugate(z2, y) == G.inv(z2), "y fails to invert z^2");
  g.require(G.conjugate(x2, z) == G.inv(x2), "z fails to invert x^2");
  g.require(G.conjugate(y2, z) == G.inv(y2), "z fails to invert y^2");
  g.require(G.conjugate(x2, x) == x2 && G.conjugate(y2, y) == y2,
            "squares fail to centralize their own roots");

  g.require(G.commutator(x, y) == G.translation(vec3(-1, 1, 1)),
            "[x,y] has the wrong translation");
  auto rhs = G.mul(G.mul(G.power(x, -2), y2), z2);
  g.require(G.commutator(x, y) == rhs, "[x,y] != x^-2 y^2 z^2");

  auto top = [&](const CrystalElement& e) { return G.matrix_rat(e)[0]; };
  using Row = std::vector<BigRat>;
  g.require(top(x) == Row{BigRat(1), BigRat(-1, 2), BigRat(0), BigRat(0)},
            "affine row of x is off");
  g.require(top(y) == Row{BigRat(1), BigRat(0), BigRat(1, 2), BigRat(1, 2)},
            "affine row of y is off");
  g.require(top(x2) == Row{BigRat(1), BigRat(-1), BigRat(0), BigRat(0)},
            "affine row of x^2 is off");
  g.require(top(G.commutator(x, y)) ==
                Row{BigRat(1), BigRat(1), BigRat(1), BigRat(1)},
            "affine row of [x,y] is off");
  sum = "presentation relators, z-relations, [x,y] = x^-2 y^2 z^2 and the "
        "affine matrices all hold";
}

void check_hw_abelianization(Gate& g, std::string& sum) {
  const CrystalGroup& G = CrystalGroup::hw();
  auto ab = G.abelianization();
  g.require(ab.free_rank == 0, "abelianization has free rank");
  g.require(ab.torsion == std::vector<BigInt>{BigInt(4), BigInt(4)},
            "abelianization is not C4 x C4");

  auto Q = G.finite_quotient(4);
  g.require(Q.group.order() == 256, "mod-4 quotient order is not 256");
  auto qab = Q.group.abelian_invariants();
  g.require(qab.torsion == std::vector<BigInt>{BigInt(4), BigInt(4)},
            "mod-4 quotient abelianization is not C4 x C4");
  sum = "abelianization C4 x C4; the order-256 quotient reproduces it";
}

void check_hw_box_closures(Gate& g, std::string& sum) {
  const CrystalGroup& G = CrystalGroup::hw();
  for (long long a = -2; a <= 2; ++a)
    for (long long b = -2; b <= 2; ++b)
      for (long long c = -2; c <= 2; ++c) {
        IntVec t = vec3(a, b, c);
        auto n = G.normal_closure(G.translation(t));
        std::vector<IntVec> na{t};
        for (size_t i = 0; i < 3; ++i) {
          if (t[i] == 0) continue;
          IntVec unit(3);
          unit[i] = 2 * t[i];
          na.push_back(unit);
        }
        std::vector<IntVec> l{vec3(0, 2 * b, 2 * c), vec3(2 * a, 0, 2 * c),
                              vec3(2 * a, 2 * b, 0)};
        std::ostringstream at;
        at << "(" << a << "," << b << "," << c << ")";
        g.require(n.translations == Lattice(3, na),
                  "translation lattice off at " + at.str());
        g.require(n.commutators == Lattice(3, l),
                  "commutator lattice off at " + at.str());
      }

  ScanOptions opt;
  opt.bound = 2;
  auto rep = G.magnus_scan(opt);
  g.require(rep.elements == 500, "bound-2 scan should enumerate 500 elements");
  g.require(rep.violations.empty(), "bound-2 scan found violations");
  sum = "125 translation closures match the support patterns; bound-2 scan "
        "(500 elements) is clean";
}

void check_hw_quotient_agreement(Gate& g, std::string& sum) {
  const CrystalGroup& G = CrystalGroup::hw();
  auto Q = G.finite_quotient(4);
  g.require(Q.group.order() == 256, "mod-4 quotient order is not 256");

  std::vector<CrystalElement> box;
  for (int qi = 0; qi < 2; ++qi)
    for (int qj = 0; qj < 2; ++qj)
      for (long long a = -1; a <= 1; ++a)
        for (long long b = -1; b <= 1; ++b)
          for (long long c = -1; c <= 1; ++c)
            box.push_back(G.make(qi, qj, vec3(a, b, c)));

  std::vector<int> img;
  img.reserve(box.size());
  for (const auto& e : box) img.push_back(Q.project(e));

  for (size_t i = 0; i < box.size(); ++i) {
    auto n = G.normal_closure(box[i]);
    std::vector<int> gens{img[i]};
    for (const auto& row : n.translations.basis())
      gens.push_back(Q.project(G.translation(row)));
    g.require(Q.group.subgroup_closure(gens) == Q.group.normal_closure(img[i]),
              "closure image mismatch at " + G.to_string(box[i]));
  }

  long long carried = 0;
  for (size_t i = 0; i < box.size(); ++i)
    for (size_t j = 0; j < box.size(); ++j) {
      if (!G.are_conjugate(box[i], box[j])) continue;
      ++carried;
      g.require(Q.group.are_conjugate(img[i], img[j]),
                "conjugacy not carried into the quotient for " +
                    G.to_string(box[i]) + " vs " + G.to_string(box[j]));
    }
  sum = "108 closures project onto quotient closures; " +
        std::to_string(carried) + " conjugate pairs survive projection";
}

void check_g3_construction(Gate& g, std::string& sum) {
  const CrystalGroup& H = CrystalGroup::gp(3);
  auto u = H.gen_u(), v = H.gen_v();

  CycloInt c = p_over_pi(3);
  g.require(c == CycloInt(3, {BigInt(-2), BigInt(-1)}), "p/pi is not -2 - zeta");
  g.require(H.power(u, 3) == H.block_translation(0, c), "u^3 lands elsewhere");
  g.require(H.power(v, 3) == H.block_translation(1, -c), "v^3 lands elsewhere");
  g.require(H.power(H.mul(u, v), 3) == H.block_translation(3, -c),
            "(uv)^3 lands elsewhere");

  const CycloInt one = CycloInt::constant(3, 1);
  IntVec ones(H.rank());
  for (size_t s = 0; s < 4; ++s) ones[s * 2] = 1;
  g.require(H.commutator(u, v) == H.translation(ones),
            "[u,v] is not the all-blocks shift");

  // every generator-conjugation of a basis shift, certified through the
  // faithful matrix view: M(e) M(a) == M(a) M(e^a)
  auto matmul = [&](const std::vector<std::vector<CycloRat>>& A,
                    const std::vector<std::vector<CycloRat>>& B) {
    size_t n = A.size();
    std::vector<std::vector<CycloRat>> C(n, std::vector<CycloRat>(n, CycloRat(3)));
    for (size_t i = 0; i < n; ++i)
      for (size_t k = 0; k < n; ++k)
        for (size_t j = 0; j < n; ++j) C[i][j] += A[i][k] * B[k][j];
    return C;
  };
  int entries = 0;
  for (const auto& a : {u, v})
    for (size_t s = 0; s < 4; ++s)
      for (long long cc = 0; cc < 2; ++cc) {
        auto e = H.block_translation(s, CycloInt::zeta_pow(3, cc));
        auto lhs = matmul(H.matrix_cyclo(e), H.matrix_cyclo(a));
        auto rhs = matmul(H.matrix_cyclo(a), H.matrix_cyclo(H.conjugate(e, a)));
        g.require(lhs == rhs, "conjugation entry broke at block " +
                                  std::to_string(s));
        ++entries;
      }
  sum = "cube relators, [u,v] and " + std::to_string(entries) +
        " conjugation entries verified through the matrix representation";
}

void check_g3_closure_modules(Gate& g, std::string& sum) {
  const CrystalGroup& H = CrystalGroup::gp(3);
  const CycloInt zero(3);
  const CycloInt one = CycloInt::constant(3, 1);
  const CycloInt pi = pi_element(3);
  const size_t n = H.rank();

  auto three_zw = [&](size_t block, std::vector<IntVec>& rows) {
    for (size_t c = 0; c < 2; ++c) {
      IntVec r(n);
      r[block * 2 + c] = 3;
      rows.push_back(r);
    }
  };
  auto pi_block = [&](size_t block, std::vector<IntVec>& rows) {
    for (size_t c = 0; c < 2; ++c) {
      CycloInt x = pi * CycloInt::zeta_pow(3, static_cast<long long>(c));
      IntVec r(n);
      for (size_t cc = 0; cc < 2; ++cc) r[block * 2 + cc] = x.coeffs()[cc];
      rows.push_back(r);
    }
  };

  {
    auto e = H.block_translation(0, one);
    auto nc = H.normal_closure(e);
    IntVec e0(n), e1(n);
    e0[0] = 1;
    e1[1] = 1;
    g.require(nc.translations == Lattice(n, {e0, e1}),
              "support-1 closure is not the full block");
    std::vector<IntVec> lrows;
    pi_block(0, lrows);
    g.require(nc.commutators == Lattice(n, lrows),
              "support-1 commutator part is not the pi-multiple block");
    g.require(H.closure_cyclic_index(e) == 3, "support-1 cyclic index is not 3");
  }
  {
    auto e = H.translation(block_vec(H, {one, one, zero, zero}));
    std::vector<IntVec> rows{block_vec(H, {one, one, zero, zero})};
    pi_block(0, rows);
    pi_block(1, rows);
    g.require(H.normal_closure(e).translations == Lattice(n, rows),
              "support-2 closure module is off");
  }
  {
    auto e = H.translation(block_vec(H, {one, one, one, zero}));
    std::vector<IntVec> rows{block_vec(H, {one, one, one, zero}),
                             block_vec(H, {zero, pi, pi, zero}),
                             block_vec(H, {pi, zero, pi, zero})};
    three_zw(0, rows);
    three_zw(1, rows);
    three_zw(2, rows);
    g.require(H.normal_closure(e).translations == Lattice(n, rows),
              "support-3 closure module is off");
  }
  {
    auto e = H.translation(block_vec(H, {one, one, one, one}));
    std::vector<IntVec> rows{block_vec(H, {one, one, one, one}),
                             block_vec(H, {zero, pi, pi, pi}),
                             block_vec(H, {pi, zero, pi, -pi})};
    for (size_t s = 0; s < 4; ++s) three_zw(s, rows);
    g.require(H.normal_closure(e).translations == Lattice(n, rows),
              "support-4 closure module is off");
  }
  sum = "closure modules for supports 1..4 match the block decompositions";
}

void check_g3_abelianization(Gate& g, std::string& sum) {
  const CrystalGroup& H = CrystalGroup::gp(3);
  const size_t n = H.rank();

  std::vector<IntVec> rows;
  IntVec ones(n);
  for (size_t s = 0; s < 4; ++s) ones[s * 2] = 1;
  rows.push_back(ones);
  const CycloInt pi = pi_element(3);
  for (size_t s = 0; s < 4; ++s)
    for (size_t c = 0; c < 2; ++c) {
      CycloInt x = pi * CycloInt::zeta_pow(3, static_cast<long long>(c));
      IntVec r(n);
      for (size_t cc = 0; cc < 2; ++cc) r[s * 2 + cc] = x.coeffs()[cc];
      rows.push_back(r);
    }
  Lattice described(n, rows);
  g.require(H.commutator_subgroup_lattice() == described,
            "commutator lattice is not the equal-augmentation module");

  std::vector<IntVec> full;
  for (size_t i = 0; i < n; ++i) {
    IntVec r(n);
    r[i] = 1;
    full.push_back(r);
  }
  auto idx = described.index_in(Lattice(n, full));
  g.require(idx.has_value() && *idx == 27, "commutator lattice index is not 27");

  auto ab = H.abelianization();
  g.require(ab.free_rank == 0 &&
                ab.torsion == std::vector<BigInt>(5, BigInt(3)),
            "abelianization is not (C3)^5");
  sum = "commutator lattice = equal-augmentation module (index 27), "
        "abelianization (C3)^5";
}

void check_automorphism_relators(Gate& g, std::string& sum) {
  CrystalGroup::gp(3).verify_automorphisms();
  CrystalGroup::gp(5).verify_automorphisms();

  // spot check on the p = 3 member: both maps commute with cubes and
  // commutators of the generators
  const CrystalGroup& H = CrystalGroup::gp(3);
  auto u = H.gen_u(), v = H.gen_v();
  for (int which = 0; which < 2; ++which) {
    auto f = [&](const CrystalElement& e) {
      return which == 0 ? H.sigma(e) : H.tau(e);
    };
    g.require(H.power(f(u), 3) == f(H.power(u, 3)), "image of u^3 disagrees");
    g.require(H.power(f(v), 3) == f(H.power(v, 3)), "image of v^3 disagrees");
    g.require(H.commutator(f(u), f(v)) == f(H.commutator(u, v)),
              "image of [u,v] disagrees");
  }
  sum = "both automorphisms re-verified for p = 3 and p = 5; relator images "
        "spot-checked";
}

void check_product_counterexample(Gate& g, std::string& sum) {
  auto rep = counterexample_report(CrystalGroup::hw(), CrystalGroup::gp(3));
  g.require(rep.left_cyclic_index == 4, "left cyclic index is not 4");
  g.require(rep.right_cyclic_index == 3, "right cyclic index is not 3");
  g.require(rep.left_holonomy_order == 2, "left holonomy order is not 2");
  g.require(rep.right_holonomy_order == 1, "right element is not a translation");
  g.require(!rep.left_conjugate_to_inverse && rep.left_misses.size() == 4,
            "left conjugator obstruction incomplete");
  g.require(!rep.right_conjugate_to_inverse && rep.right_misses.size() == 9,
            "right conjugator obstruction incomplete");
  g.require(rep.closures_equal, "closures should coincide");
  g.require(rep.left_residue == 1 && rep.right_residue == 2,
            "membership residues are off");
  g.require(rep.combined_residue == 5 && rep.combined_modulus == 12,
            "combined residue is not 5 mod 12");
  g.require(rep.subdirect_order == 12 && rep.projects_left && rep.projects_right,
            "subdirect image is not all of C4 x C3");
  g.require(rep.flags.certifies_violation(), "obstruction flags are not clear");
  g.require(rep.magnus_fails(), "report does not certify the failure");
  sum = "(x, e_inf) vs its inverse mate: equal closures, conjugate to "
        "neither, residues 1 mod 4 and 2 mod 3 combine to 5 mod 12";
}

void check_g5_magnus_failure(Gate& g, std::string& sum) {
  const CrystalGroup& F = CrystalGroup::gp(5);
  const CycloInt one = CycloInt::constant(5, 1);
  CycloInt unit = one + CycloInt::zeta_pow(5, 1);
  g.require(norm(unit) == 1 && is_unit(unit), "1 + zeta is not a unit");

  auto e0 = F.block_translation(1, one);
  auto e0u = F.block_translation(1, unit);
  g.require(F.closure_equal(e0, e0u), "unit scaling changed the closure");
  g.require(!F.are_conjugate(e0, e0u) && !F.are_conjugate(e0, F.inv(e0u)),
            "the scaled shift is conjugate after all");

  auto orbit = F.conjugacy_orbit(e0);
  std::set<IntVec> distinct(orbit.begin(), orbit.end());
  g.require(orbit.size() == 25, "orbit table should have one entry per class pair");
  g.require(distinct.size() == 5, "orbit of a basis shift should have 5 points");

  ScanOptions opt;
  opt.bound = 1;
  auto rep = F.magnus_scan(opt);
  g.require(rep.support_restricted, "bound-1 scan should restrict support");
  g.require(!rep.violations.empty(), "bound-1 scan found no violation");
  sum = "1 + zeta has norm 1; scaling e_0 by it keeps the closure but kills "
        "conjugacy; bound-1 scan reports " +
        std::to_string(rep.violations.size()) + " violations over " +
        std::to_string(rep.elements) + " elements";
}

void check_clean_scans(Gate& g, std::string& sum) {
  const CrystalGroup& G = CrystalGroup::hw();
  ScanOptions t3;
  t3.bound = 3;
  t3.translations_only = true;
  auto r1 = G.magnus_scan(t3);
  g.require(r1.elements == 343, "translation scan size is not 7^3");
  g.require(r1.violations.empty(), "translation scan found violations");

  ScanOptions b2;
  b2.bound = 2;
  auto r2 = G.magnus_scan(b2);
  g.require(r2.elements == 500 && r2.violations.empty(),
            "full bound-2 scan is not clean");

  const CrystalGroup& H = CrystalGroup::gp(3);
  ScanOptions b1;
  b1.bound = 1;
  auto r3 = H.magnus_scan(b1);
  g.require(r3.elements == 59049, "p=3 bound-1 scan size is not 9 * 3^8");
  g.require(r3.violations.empty(), "p=3 bound-1 scan found violations");
  sum = "rank-3 scans (343 and 500 elements) and the p=3 bound-1 scan "
        "(59049 elements) are violation-free";
}

void check_finite_product_law(Gate& g, std::string& sum) {
  std::vector<std::string> names{"C3", "C9", "C3xC3", "heis3"};
  std::vector<FiniteGroup> groups;
  std::vector<bool> passes;
  for (const auto& n : names) {
    groups.push_back(catalog_group(n));
    passes.push_back(groups.back().has_magnus().has_property);
  }
  g.require(passes[0], "C3 should pass");
  g.require(!passes[1], "C9 should fail");
  g.require(passes[2], "C3 x C3 should pass");
  g.require(passes[3], "the order-27 Heisenberg group should pass");

  int products = 0;
  for (size_t i = 0; i < groups.size(); ++i)
    for (size_t j = i; j < groups.size(); ++j) {
      if (!passes[i] || !passes[j]) continue;
      FiniteGroup prod = FiniteGroup::direct_product(groups[i], groups[j]);
      ++products;
      g.require(prod.has_magnus().has_property,
                names[i] + " x " + names[j] + " should keep the property");
    }

  // the central-image route behind the product law: every non-identity
  // element keeps a nontrivial image in some central quotient
  for (size_t i : {size_t(1), size_t(2), size_t(3)})
    for (int x = 1; x < groups[i].order(); ++x) {
      auto res = groups[i].central_image_quotient(x);
      g.require(res.image != res.quotient.id(),
                "central image collapsed for element " + std::to_string(x) +
                    " of " + names[i]);
    }
  sum = "all " + std::to_string(products) +
        " products of passing p=3 catalog groups keep the property; central "
        "images stay nontrivial";
}

void check_word_corpus(Gate& g, std::string& sum) {
  int words = 0;
  auto run_family = [&](const CrystalGroup& G, const char* const* list,
                        size_t count) {
    auto env = G.word_environment();
    CrystalOps ops{&G};
    for (size_t i = 0; i < count; ++i) {
      std::string text = list[i];
      Word w = parse(text);
      g.require(parse(print(w)) == w, "round trip broke on '" + text + "'");
      auto fast = evaluate(w, env, ops);
      auto slow = eval_plain(w, env, G);
      g.require(fast == slow, "evaluators disagree on '" + text + "'");
      ++words;
    }
  };
  run_family(CrystalGroup::hw(), kRank3Words,
             sizeof(kRank3Words) / sizeof(kRank3Words[0]));
  run_family(CrystalGroup::gp(3), kOddPWords,
             sizeof(kOddPWords) / sizeof(kOddPWords[0]));
  g.require(words >= 30, "corpus has shrunk below 30 words");
  sum = std::to_string(words) +
        " corpus words: parse/print round trip and both evaluators agree";
}

}  // namespace

std::vector<CheckResult> run_verification() {
  std::vector<CheckResult> out;
  out.push_back(run_one("cyclic-magnus-law", check_cyclic_magnus_law));
  out.push_back(run_one("cyclic-product-closure-law", check_cyclic_product_closure_law));
  out.push_back(run_one("order-12-witness", check_order_12_witness));
  out.push_back(run_one("hw-construction", check_hw_construction));
  out.push_back(run_one("hw-abelianization", check_hw_abelianization));
  out.push_back(run_one("hw-box-closures", check_hw_box_closures));
  out.push_back(run_one("hw-quotient-agreement", check_hw_quotient_agreement));
  out.push_back(run_one("g3-construction", check_g3_construction));
  out.push_back(run_one("g3-closure-modules", check_g3_closure_modules));
  out.push_back(run_one("g3-abelianization", check_g3_abelianization));
  out.push_back(run_one("automorphism-relators", check_automorphism_relators));
  out.push_back(run_one("product-counterexample", check_product_counterexample));
  out.push_back(run_one("g5-magnus-failure", check_g5_magnus_failure));
  out.push_back(run_one("clean-scans", check_clean_scans));
  out.push_back(run_one("finite-product-law", check_finite_product_law));
  out.push_back(run_one("word-corpus", check_word_corpus));
  return out;
}

}  // namespace magnus
