#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <magnus/crystal.hpp>
#include <magnus/word.hpp>
#include <fstream>
#include <random>
#include <set>

using namespace magnus;

namespace {

IntVec vec3(long long a, long long b, long long c) {
  return {BigInt(a), BigInt(b), BigInt(c)};
}

Lattice lat(size_t n, std::vector<IntVec> rows) { return Lattice(n, rows); }

// Iterative alternative to commutator_module: seed with the commutators of
// g against a full generating set (u, v and the lattice basis; for odd p
// the basis is not reachable from u, v alone), then close under the
// holonomy action.  Different algorithm, same module; used as an oracle.
Lattice action_closure_of_commutators(const CrystalGroup& G, const CrystalElement& g) {
  std::vector<IntVec> seeds;
  for (const auto& z : {G.gen_u(), G.gen_v()}) {
    CrystalElement c = G.commutator(g, z);
    REQUIRE(c.qi == 0);
    REQUIRE(c.qj == 0);
    seeds.push_back(c.t);
  }
  for (size_t k = 0; k < G.rank(); ++k) {
    IntVec e(G.rank());
    e[k] = 1;
    seeds.push_back(G.commutator(g, G.translation(e)).t);
  }
  Lattice L(G.rank(), seeds);
  const IntMatrix& ru = G.action(1, 0);
  const IntMatrix& rv = G.action(0, 1);
  for (;;) {
    std::vector<IntVec> imgs;
    for (const auto& row : L.basis()) {
      imgs.push_back(ru.apply_row(row));
      imgs.push_back(rv.apply_row(row));
    }
    Lattice next = L + Lattice(G.rank(), imgs);
    if (next == L) return L;
    L = next;
  }
}

CrystalElement random_word_conjugate(const CrystalGroup& G, const CrystalElement& g,
                                     std::mt19937& rng) {
  std::uniform_int_distribution<int> len(1, 8), pick(0, 3);
  CrystalElement w = G.identity_element();
  int n = len(rng);
  for (int i = 0; i < n; ++i) {
    switch (pick(rng)) {
      case 0: w = G.mul(w, G.gen_u()); break;
      case 1: w = G.mul(w, G.inv(G.gen_u())); break;
      case 2: w = G.mul(w, G.gen_v()); break;
      default: w = G.mul(w, G.inv(G.gen_v())); break;
    }
  }
  return G.conjugate(g, w);
}

// Rank of an integer matrix over GF(p); independent check for the shape of
// odd-p abelianizations.
size_t rank_mod_p(std::vector<IntVec> rows, int p) {
  size_t cols = rows.empty() ? 0 : rows[0].size();
  auto norm = [&](const BigInt& x) {
    BigInt r = x % p;
    if (r < 0) r += p;
    return static_cast<int>(r.convert_to<long long>());
  };
  std::vector<std::vector<int>> m;
  for (const auto& r : rows) {
    std::vector<int> row(cols);
    for (size_t j = 0; j < cols; ++j) row[j] = norm(r[j]);
    m.push_back(row);
  }
  size_t rank = 0;
  for (size_t col = 0; col < cols && rank < m.size(); ++col) {
    size_t piv = rank;
    while (piv < m.size() && m[piv][col] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[rank], m[piv]);
    int inv = 0;
    for (int k = 1; k < p; ++k)
      if (k * m[rank][col] % p == 1) inv = k;
    for (size_t j = 0; j < cols; ++j) m[rank][j] = m[rank][j] * inv % p;
    for (size_t i = 0; i < m.size(); ++i) {
      if (i == rank || m[i][col] == 0) continue;
      int f = m[i][col];
      for (size_t j = 0; j < cols; ++j)
        m[i][j] = ((m[i][j] - f * m[rank][j]) % p + p * p) % p;
    }
    ++rank;
  }
  return rank;
}

// Translation with the given per-block coefficients.
IntVec block_vec(const CrystalGroup& G, const std::vector<CycloInt>& per_block) {
  size_t blk = static_cast<size_t>(G.p() - 1);
  IntVec t(G.rank());
  for (size_t s = 0; s < per_block.size(); ++s)
    for (size_t c = 0; c < blk; ++c) t[s * blk + c] = per_block[s].coeffs()[c];
  return t;
}

std::vector<CrystalElement> box_elements(const CrystalGroup& G, long long bound) {
  std::vector<CrystalElement> out;
  IntVec t(G.rank());
  auto rec = [&](auto&& self, size_t pos) -> void {
    if (pos == G.rank()) {
      for (int qi = 0; qi < G.p(); ++qi)
        for (int qj = 0; qj < G.p(); ++qj) out.push_back(G.make(qi, qj, t));
      return;
    }
    for (long long v = -bound; v <= bound; ++v) {
      t[pos] = v;
      self(self, pos + 1);
    }
    t[pos] = 0;
  };
  rec(rec, 0);
  return out;
}

}  // namespace

TEST_CASE("rank-3 group satisfies its defining relations") {
  const auto& G = CrystalGroup::hw();
  REQUIRE(G.rank() == 3);
  CHECK(G.is_hw());
  CHECK(G.name() == "hw");
  auto x = G.gen_u(), y = G.gen_v(), z = G.mul(x, y);
  auto x2 = G.power(x, 2), y2 = G.power(y, 2), z2 = G.power(z, 2);

  CHECK(x2 == G.translation(vec3(1, 0, 0)));
  CHECK(y2 == G.translation(vec3(0, 1, 0)));
  CHECK(z2 == G.translation(vec3(0, 0, 1)));
  CHECK(G.conjugate(y2, x) == G.inv(y2));
  CHECK(G.conjugate(x2, y) == G.inv(x2));
  CHECK(G.conjugate(z2, x) == G.inv(z2));
  CHECK(G.conjugate(x2, z) == G.inv(x2));
  CHECK(G.conjugate(z2, y) == G.inv(z2));
  CHECK(G.conjugate(y2, z) == G.inv(y2));
  CHECK(G.commutator(x, y) == G.translation(vec3(-1, 1, 1)));

  // Torsion-freeness probes: no element of the small box has finite order.
  for (const auto& g : box_elements(G, 1)) {
    if (g == G.identity_element()) continue;
    bool trivial_power = false;
    for (int k = 1; k <= 4; ++k)
      if (G.power(g, k) == G.identity_element()) trivial_power = true;
    CHECK_FALSE(trivial_power);
  }
}

TEST_CASE("rank-3 displayed power matrices") {
  const auto& G = CrystalGroup::hw();
  auto x = G.gen_u(), y = G.gen_v();
  auto mx = G.matrix_rat(x);
  CHECK(mx[0] == std::vector<BigRat>{BigRat(1), BigRat(-1, 2), BigRat(0), BigRat(0)});
  CHECK(mx[1][1] == BigRat(1));
  CHECK(mx[2][2] == BigRat(-1));
  CHECK(mx[3][3] == BigRat(-1));
  auto my = G.matrix_rat(y);
  CHECK(my[0] == std::vector<BigRat>{BigRat(1), BigRat(0), BigRat(1, 2), BigRat(1, 2)});
  CHECK(my[1][1] == BigRat(-1));
  CHECK(my[2][2] == BigRat(1));
  CHECK(my[3][3] == BigRat(-1));

  auto top = [&](const CrystalElement& g) { return G.matrix_rat(g)[0]; };
  CHECK(top(G.power(x, 2)) ==
        std::vector<BigRat>{BigRat(1), BigRat(-1), BigRat(0), BigRat(0)});
  CHECK(top(G.power(y, 2)) ==
        std::vector<BigRat>{BigRat(1), BigRat(0), BigRat(1), BigRat(0)});
  CHECK(top(G.power(G.mul(x, y), 2)) ==
        std::vector<BigRat>{BigRat(1), BigRat(0), BigRat(0), BigRat(1)});
  CHECK(top(G.commutator(x, y)) ==
        std::vector<BigRat>{BigRat(1), BigRat(1), BigRat(1), BigRat(1)});
}

TEST_CASE("matrix view round-trips and matches the group law") {
  const auto& G = CrystalGroup::hw();
  auto box = box_elements(G, 1);
  std::set<std::string> seen;
  for (const auto& g : box) {
    auto m = G.matrix_rat(g);
    CHECK(G.from_matrix_rat(m) == g);
    std::string key;
    for (const auto& row : m)
      for (const auto& e : row) key += rat_num(e).str() + "/" + rat_den(e).str() + ";";
    seen.insert(key);
  }
  CHECK(seen.size() == box.size());  // the representation is faithful

  std::mt19937 rng(20240817);
  std::uniform_int_distribution<size_t> pick(0, box.size() - 1);
  for (int trial = 0; trial < 200; ++trial) {
    const auto& a = box[pick(rng)];
    const auto& b = box[pick(rng)];
    auto ma = G.matrix_rat(a), mb = G.matrix_rat(b);
    std::vector<std::vector<BigRat>> prod(4, std::vector<BigRat>(4));
    for (int i = 0; i < 4; ++i)
      for (int k = 0; k < 4; ++k)
        for (int j = 0; j < 4; ++j) prod[i][j] += ma[i][k] * mb[k][j];
    CHECK(G.from_matrix_rat(prod) == G.mul(a, b));
  }

  const auto& H = CrystalGroup::gp(3);
  std::uniform_int_distribution<int> coord(-2, 2), hol(0, 2);
  for (int trial = 0; trial < 60; ++trial) {
    IntVec t(H.rank());
    for (auto& e : t) e = coord(rng);
    auto g = H.make(hol(rng), hol(rng), t);
    CHECK(H.from_matrix_cyclo(H.matrix_cyclo(g)) == g);
    IntVec s(H.rank());
    for (auto& e : s) e = coord(rng);
    auto h = H.make(hol(rng), hol(rng), s);
    auto mg = H.matrix_cyclo(g), mh = H.matrix_cyclo(h);
    size_t dim = H.rep_dim();
    std::vector<std::vector<CycloRat>> prod(dim, std::vector<CycloRat>(dim, CycloRat(3)));
    for (size_t i = 0; i < dim; ++i)
      for (size_t k = 0; k < dim; ++k)
        for (size_t j = 0; j < dim; ++j) prod[i][j] = prod[i][j] + mg[i][k] * mh[k][j];
    CHECK(H.from_matrix_cyclo(prod) == H.mul(g, h));
  }

  // malformed matrices are rejected
  auto good = G.matrix_rat(G.gen_u());
  auto bad1 = good;
  bad1[0][0] = BigRat(2);
  CHECK_THROWS_AS(G.from_matrix_rat(bad1), std::invalid_argument);
  auto bad2 = good;
  bad2[2][3] = BigRat(1);
  CHECK_THROWS_AS(G.from_matrix_rat(bad2), std::invalid_argument);
  auto bad3 = good;
  bad3[0][2] = BigRat(1, 3);  // translation no longer integral
  CHECK_THROWS_AS(G.from_matrix_rat(bad3), std::invalid_argument);
}

TEST_CASE("rank-3 translation closures follow the support patterns") {
  const auto& G = CrystalGroup::hw();
  for (long long a = -2; a <= 2; ++a)
    for (long long b = -2; b <= 2; ++b)
      for (long long c = -2; c <= 2; ++c) {
        IntVec t = vec3(a, b, c);
        auto n = G.normal_closure(G.translation(t));
        std::vector<IntVec> na_gens{t};
        for (size_t i = 0; i < 3; ++i) {
          if (t[i] == 0) continue;
          IntVec unit(3);
          unit[i] = 2 * t[i];
          na_gens.push_back(unit);
        }
        CHECK(n.translations == Lattice(3, na_gens));
        // the commutators with the three involution classes already span
        // the module: each doubles the two reflected coordinates
        std::vector<IntVec> l_gens{vec3(0, 2 * b, 2 * c), vec3(2 * a, 0, 2 * c),
                                   vec3(2 * a, 2 * b, 0)};
        CHECK(n.commutators == Lattice(3, l_gens));
      }
}

TEST_CASE("commutator module agrees with the iterative action closure") {
  const auto& G = CrystalGroup::hw();
  for (const auto& g : box_elements(G, 2))
    CHECK(G.commutator_module(g) == action_closure_of_commutators(G, g));

  const auto& H = CrystalGroup::gp(3);
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> coord(-2, 2);
  for (int qi = 0; qi < 3; ++qi)
    for (int qj = 0; qj < 3; ++qj)
      for (int trial = 0; trial < 6; ++trial) {
        IntVec t(H.rank());
        for (auto& e : t) e = coord(rng);
        auto g = H.make(qi, qj, t);
        CHECK(H.commutator_module(g) == action_closure_of_commutators(H, g));
      }
}

TEST_CASE("closures are invariant and absorb conjugates") {
  const auto& G = CrystalGroup::hw();
  std::mt19937 rng(99);
  for (const auto& g : box_elements(G, 1)) {
    auto n = G.normal_closure(g);
    // the translation lattices are invariant under the holonomy action
    for (int qi = 0; qi < 2; ++qi)
      for (int qj = 0; qj < 2; ++qj) {
        const IntMatrix& r = G.action(qi, qj);
        for (const auto& row : n.translations.basis())
          CHECK(n.translations.contains(r.apply_row(row)));
        for (const auto& row : n.commutators.basis())
          CHECK(n.commutators.contains(r.apply_row(row)));
      }
    CHECK(n.commutators.contains_lattice(n.translations) ==
          (n.commutators == n.translations));
    CHECK(n.translations.contains_lattice(n.commutators));
    // membership of conjugates, inverses and powers
    CHECK(G.closure_contains(n, g));
    CHECK(G.closure_contains(n, G.inv(g)));
    for (int k = -3; k <= 3; ++k) CHECK(G.closure_contains(n, G.power(g, k)));
    for (int trial = 0; trial < 5; ++trial) {
      CHECK(G.closure_contains(n, random_word_conjugate(G, g, rng)));
      CHECK(G.closure_contains(n, random_word_conjugate(G, G.inv(g), rng)));
    }
  }
}

TEST_CASE("frozen rank-3 closure values") {
  const auto& G = CrystalGroup::hw();
  auto x = G.gen_u(), y = G.gen_v();

  CHECK(G.commutator_module(x) ==
        lat(3, {vec3(1, 1, 1), vec3(0, 2, 0), vec3(0, 0, 2)}));
  CHECK(G.normal_closure(x).translations ==
        lat(3, {vec3(1, 0, 0), vec3(0, 1, 1), vec3(0, 0, 2)}));
  CHECK(G.conjugation_image(1, 0) == lat(3, {vec3(0, 2, 0), vec3(0, 0, 2)}));
  CHECK(G.conjugation_image(0, 1) == lat(3, {vec3(2, 0, 0), vec3(0, 0, 2)}));
  CHECK(G.conjugation_image(1, 1) == lat(3, {vec3(2, 0, 0), vec3(0, 2, 0)}));
  CHECK(G.conjugation_image(0, 0).is_zero());

  auto g = G.mul(G.power(x, 2), G.power(y, 2));
  CHECK(g == G.translation(vec3(1, 1, 0)));
  CHECK(G.normal_closure(g).translations == lat(3, {vec3(1, 1, 0), vec3(0, 2, 0)}));

  CHECK(G.closure_cyclic_index(x) == 4);
  CHECK(G.closure_cyclic_index(G.power(x, 2)) == 2);
  CHECK(G.closure_cyclic_index(G.identity_element()) == 1);

  CHECK(G.closure_equal(x, G.mul(x, G.power(y, 4))));
  CHECK_FALSE(G.closure_equal(x, y));
  CHECK(G.closure_equal(g, G.inv(g)));
  CHECK(G.closure_equal(g, G.translation(vec3(-1, 1, 0))));
  CHECK_FALSE(G.closure_equal(G.power(x, 2), G.power(y, 2)));

  CHECK_FALSE(G.conjugate_to_inverse(x));
  CHECK_FALSE(G.conjugate_to_inverse(y));
  CHECK(G.are_conjugate(g, G.translation(vec3(1, -1, 0))));
  CHECK_FALSE(G.are_conjugate(x, y));
  CHECK(G.are_conjugate(x, G.conjugate(x, y)));
  CHECK(G.are_conjugate(x, G.mul(x, G.power(y, 4))));
  // conjugates of x are exactly x.b(t) with t in K(x) or (-1,1,1) + K(x),
  // and (0,1,0) lies in neither coset
  CHECK_FALSE(G.are_conjugate(x, G.mul(x, G.power(y, 2))));
}

TEST_CASE("rank-3 commutator subgroup and abelianization") {
  const auto& G = CrystalGroup::hw();
  Lattice comm = G.commutator_subgroup_lattice();
  CHECK(comm == lat(3, {vec3(1, 1, 1), vec3(0, 2, 0), vec3(0, 0, 2)}));
  CHECK(comm == G.commutator_module(G.gen_u()));
  auto idx = comm.index_in(Lattice(3, {vec3(1, 0, 0), vec3(0, 1, 0), vec3(0, 0, 1)}));
  REQUIRE(idx.has_value());
  CHECK(*idx == 4);

  auto ab = G.abelianization();
  CHECK(ab.free_rank == 0);
  CHECK(ab.torsion == std::vector<BigInt>{BigInt(4), BigInt(4)});
}

TEST_CASE("odd-p construction facts") {
  const auto& H = CrystalGroup::gp(3);
  REQUIRE(H.rank() == 8);
  CHECK(H.name() == "g3");
  CHECK_FALSE(H.is_hw());
  auto u = H.gen_u(), v = H.gen_v();
  const CycloInt one = CycloInt::constant(3, 1);
  const CycloInt hat = CycloInt::zeta_pow(3, 1);

  CHECK(p_over_pi(3) == CycloInt(3, {BigInt(-2), BigInt(-1)}));
  CHECK(H.power(u, 3) == H.block_translation(0, p_over_pi(3)));
  CHECK(H.power(v, 3) == H.block_translation(1, -p_over_pi(3)));
  CHECK(H.power(H.mul(u, v), 3) == H.block_translation(3, -p_over_pi(3)));
  {
    IntVec sum(8);
    for (size_t s = 0; s < 4; ++s) sum[s * 2] = 1;
    CHECK(H.commutator(u, v) == H.translation(sum));
  }

  // spot checks of the conjugation table (the full table is enforced at
  // construction): a^u and a^v for basis coefficients
  auto e = [&](size_t s, const CycloInt& c) { return H.block_translation(s, c); };
  const CycloInt mm = -one - hat;
  CHECK(H.conjugate(e(0, one), u) == e(0, one));
  CHECK(H.conjugate(e(0, one), v) == e(0, hat));
  CHECK(H.conjugate(e(0, hat), v) == e(0, mm));
  CHECK(H.conjugate(e(1, one), u) == e(1, hat));
  CHECK(H.conjugate(e(1, hat), u) == e(1, mm));
  CHECK(H.conjugate(e(1, one), v) == e(1, one));
  CHECK(H.conjugate(e(2, one), v) == e(2, hat));
  CHECK(H.conjugate(e(3, one), v) == e(3, mm));
  CHECK(H.conjugate(e(3, hat), v) == e(3, one));

  // element order of the holonomy images
  CHECK(H.holonomy_order(u) == 3);
  CHECK(H.holonomy_order(H.mul(u, v)) == 3);
  CHECK(H.holonomy_order(e(0, one)) == 1);

  // u^i v^j b normal form survives arbitrary re-association
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> coord(-1, 1), hol(0, 2);
  for (int trial = 0; trial < 40; ++trial) {
    IntVec t(8);
    for (auto& c : t) c = coord(rng);
    auto g = H.make(hol(rng), hol(rng), t);
    auto built = H.power(u, g.qi);
    built = H.mul(built, H.power(v, g.qj));
    built = H.mul(built, H.translation(g.t));
    CHECK(built == g);
    CHECK(H.mul(g, H.inv(g)) == H.identity_element());
  }
}

TEST_CASE("odd-p closure modules match the displayed decompositions") {
  const auto& H = CrystalGroup::gp(3);
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

  // support 1: the full block
  {
    auto g = H.block_translation(0, one);
    auto nc = H.normal_closure(g);
    std::vector<IntVec> rows;
    IntVec e0(n);
    e0[0] = 1;
    IntVec e1(n);
    e1[1] = 1;
    CHECK(nc.translations == Lattice(n, {e0, e1}));
    std::vector<IntVec> lrows;
    pi_block(0, lrows);
    CHECK(nc.commutators == Lattice(n, lrows));
    auto idx = nc.commutators.index_in(nc.translations);
    REQUIRE(idx.has_value());
    CHECK(*idx == 3);
    CHECK(H.closure_cyclic_index(g) == 3);
  }

  // support 2: Z(1,1,0,0) + pi-blocks
  {
    auto g = H.translation(block_vec(H, {one, one, zero, zero}));
    std::vector<IntVec> rows{block_vec(H, {one, one, zero, zero})};
    pi_block(0, rows);
    pi_block(1, rows);
    CHECK(H.normal_closure(g).translations == Lattice(n, rows));
  }

  // support 3: Z(1,1,1,0) + Z(0,pi,pi,0) + Z(pi,0,pi,0) + 3Z[w]^3
  {
    auto g = H.translation(block_vec(H, {one, one, one, zero}));
    std::vector<IntVec> rows{block_vec(H, {one, one, one, zero}),
                             block_vec(H, {zero, pi, pi, zero}),
                             block_vec(H, {pi, zero, pi, zero})};
    three_zw(0, rows);
    three_zw(1, rows);
    three_zw(2, rows);
    CHECK(H.normal_closure(g).translations == Lattice(n, rows));
  }

  // support 4: Z(1,1,1,1) + Z(0,pi,pi,pi) + Z(pi,0,pi,-pi) + 3Z[w]^4
  {
    auto g = H.translation(block_vec(H, {one, one, one, one}));
    std::vector<IntVec> rows{block_vec(H, {one, one, one, one}),
                             block_vec(H, {zero, pi, pi, pi}),
                             block_vec(H, {pi, zero, pi, -pi})};
    for (size_t s = 0; s < 4; ++s) three_zw(s, rows);
    CHECK(H.normal_closure(g).translations == Lattice(n, rows));
  }

  // scaling a coordinate by a nonzero ring element keeps the support
  // pattern: closures of unit multiples coincide
  {
    auto a = H.block_translation(2, one);
    auto b = H.block_translation(2, CycloInt::zeta_pow(3, 2));
    CHECK(H.closure_equal(a, b));
    CHECK(H.are_conjugate(a, b));
  }
}

TEST_CASE("odd-p commutator subgroup and abelianization") {
  const auto& H = CrystalGroup::gp(3);
  const size_t n = H.rank();

  // equal-augmentation description: pi Z[w] in every block plus the
  // all-blocks vector of ones
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
  CHECK(H.commutator_subgroup_lattice() == described);

  std::vector<IntVec> full_rows;
  for (size_t i = 0; i < n; ++i) {
    IntVec r(n);
    r[i] = 1;
    full_rows.push_back(r);
  }
  auto idx = described.index_in(Lattice(n, full_rows));
  REQUIRE(idx.has_value());
  CHECK(*idx == 27);  // p^p

  auto ab = H.abelianization();
  CHECK(ab.free_rank == 0);
  CHECK(ab.torsion == std::vector<BigInt>(5, BigInt(3)));

  // for p = 5 the invariants are elementary abelian of rank matching an
  // independent mod-p nullity count of the relation matrix
  const auto& F = CrystalGroup::gp(5);
  auto ab5 = F.abelianization();
  CHECK(ab5.free_rank == 0);
  for (const auto& d : ab5.torsion) CHECK(d == 5);
  std::vector<IntVec> rel;
  auto rel_row = [&](int cu, int cv, const IntVec& t, int sign) {
    IntVec r(2 + F.rank());
    r[0] = cu;
    r[1] = cv;
    for (size_t k = 0; k < F.rank(); ++k) r[2 + k] = sign * t[k];
    rel.push_back(r);
  };
  rel_row(5, 0, F.power(F.gen_u(), 5).t, -1);
  rel_row(0, 5, F.power(F.gen_v(), 5).t, -1);
  rel_row(0, 0, F.commutator(F.gen_u(), F.gen_v()).t, 1);
  for (int which = 0; which < 2; ++which) {
    const IntMatrix& r = which == 0 ? F.action(1, 0) : F.action(0, 1);
    IntMatrix diff = r - IntMatrix::identity(F.rank());
    for (const auto& row : diff.row_data()) rel_row(0, 0, row, 1);
  }
  size_t expected_rank = 2 + F.rank() - rank_mod_p(rel, 5);
  CHECK(ab5.torsion.size() == expected_rank);
}

TEST_CASE("automorphisms preserve relations, closures and conjugacy") {
  for (int p : {3, 5}) {
    const auto& H = CrystalGroup::gp(p);
    CHECK_NOTHROW(H.verify_automorphisms());
  }

  const auto& H = CrystalGroup::gp(3);
  const CycloInt one = CycloInt::constant(3, 1);
  auto u = H.gen_u(), v = H.gen_v();

  CHECK(H.sigma(u) == u);
  CHECK(H.sigma(v) == H.mul(u, v));
  CHECK(H.sigma(H.block_translation(0, one)) == H.block_translation(0, one));
  CHECK(H.sigma(H.block_translation(1, one)) == H.block_translation(3, one));
  CHECK(H.sigma(H.block_translation(2, one)) == H.block_translation(1, one));
  CHECK(H.tau(u) == v);
  CHECK(H.tau(v) == u);
  CHECK(H.tau(H.block_translation(0, one)) == H.block_translation(1, -one));
  CHECK(H.tau(H.block_translation(1, one)) == H.block_translation(0, -one));
  CHECK(H.tau(H.block_translation(2, one)) == H.block_translation(2, -one));

  std::mt19937 rng(11);
  std::uniform_int_distribution<int> coord(-1, 1), hol(0, 2);
  std::vector<CrystalElement> sample;
  for (int trial = 0; trial < 12; ++trial) {
    IntVec t(8);
    for (auto& c : t) c = coord(rng);
    sample.push_back(H.make(hol(rng), hol(rng), t));
  }
  for (const auto& g : sample) {
    CHECK(H.tau(H.tau(g)) == g);
    for (const auto& h : sample) {
      // automorphisms: multiplicative, closure- and conjugacy-preserving
      CHECK(H.sigma(H.mul(g, h)) == H.mul(H.sigma(g), H.sigma(h)));
      CHECK(H.tau(H.mul(g, h)) == H.mul(H.tau(g), H.tau(h)));
      CHECK(H.closure_equal(g, h) == H.closure_equal(H.sigma(g), H.sigma(h)));
      CHECK(H.closure_equal(g, h) == H.closure_equal(H.tau(g), H.tau(h)));
      CHECK(H.are_conjugate(g, h) == H.are_conjugate(H.sigma(g), H.sigma(h)));
      CHECK(H.are_conjugate(g, h) == H.are_conjugate(H.tau(g), H.tau(h)));
    }
  }
}

TEST_CASE("finite quotients are homomorphic images") {
  const auto& G = CrystalGroup::hw();
  auto q2 = G.finite_quotient(2);
  CHECK(q2.group.order() == 32);
  auto q4 = G.finite_quotient(4);
  CHECK(q4.group.order() == 256);
  CHECK(q4.project(G.identity_element()) == 0);
  auto ab = q4.group.abelian_invariants();
  CHECK(ab.torsion == std::vector<BigInt>{BigInt(4), BigInt(4)});

  std::mt19937 rng(23);
  std::uniform_int_distribution<int> coord(-5, 5), hol(0, 1);
  for (int trial = 0; trial < 60; ++trial) {
    auto a = G.make(hol(rng), hol(rng), vec3(coord(rng), coord(rng), coord(rng)));
    auto b = G.make(hol(rng), hol(rng), vec3(coord(rng), coord(rng), coord(rng)));
    CHECK(q4.project(G.mul(a, b)) == q4.group.mul(q4.project(a), q4.project(b)));
    CHECK(q4.project(G.inv(a)) == q4.group.inv(q4.project(a)));
  }

  const auto& H = CrystalGroup::gp(3);
  auto h2 = H.finite_quotient(2);
  CHECK(h2.group.order() == 2304);
  auto hab = h2.group.abelian_invariants();
  CHECK(hab.torsion == std::vector<BigInt>{BigInt(3), BigInt(3)});

  CHECK_THROWS_AS(G.finite_quotient(0), std::invalid_argument);
  CHECK_THROWS_AS(G.finite_quotient(-3), std::invalid_argument);
  CHECK_THROWS_AS(G.finite_quotient(16), std::length_error);
  CHECK_NOTHROW(G.finite_quotient(8));
}

TEST_CASE("quotient closures track exact closures on a small box") {
  const auto& G = CrystalGroup::hw();
  auto q8 = G.finite_quotient(8);
  auto box = box_elements(G, 1);

  std::vector<NormalClosure> exact;
  std::vector<ElementSet> images;
  exact.reserve(box.size());
  for (const auto& g : box) {
    exact.push_back(G.normal_closure(g));
    images.push_back(q8.group.normal_closure(q8.project(g)));
  }
  long long checked = 0, equal_pairs = 0, collapsed = 0;
  for (size_t i = 0; i < box.size(); ++i)
    for (size_t j = i + 1; j < box.size(); ++j) {
      bool up = G.closure_contains(exact[i], box[j]) &&
                G.closure_contains(exact[j], box[i]);
      bool down = images[i] == images[j];
      if (up) CHECK(down);  // quotients never separate equal closures
      if (!up && down) ++collapsed;
      ++checked;
      if (up) ++equal_pairs;
    }
  CHECK(checked == 5778);
  CHECK(equal_pairs > 0);
  // the converse fails: index-3 nesting of closures is invisible mod 8
  CHECK(collapsed == 246);
  {
    auto gi = G.make(0, 1, vec3(-1, -1, -1));
    auto gj = G.make(0, 1, vec3(-1, 1, -1));
    auto ni = G.normal_closure(gi), nj = G.normal_closure(gj);
    CHECK(G.closure_contains(ni, gj));
    CHECK_FALSE(G.closure_contains(nj, gi));
    auto idx = nj.translations.index_in(ni.translations);
    REQUIRE(idx.has_value());
    CHECK(*idx == 3);
    CHECK(q8.group.normal_closure(q8.project(gi)) ==
          q8.group.normal_closure(q8.project(gj)));
  }

  // mod 4: the restriction map is only claimed one-sided
  auto q4 = G.finite_quotient(4);
  for (size_t i = 0; i < box.size(); ++i)
    for (size_t j = i + 1; j < box.size(); ++j) {
      bool up = G.closure_contains(exact[i], box[j]) &&
                G.closure_contains(exact[j], box[i]);
      if (up)
        CHECK(q4.group.normal_closure(q4.project(box[i])) ==
              q4.group.normal_closure(q4.project(box[j])));
      if (G.are_conjugate(box[i], box[j]))
        CHECK(q4.group.are_conjugate(q4.project(box[i]), q4.project(box[j])));
    }
}

TEST_CASE("scans find no violations in the verified regions") {
  const auto& G = CrystalGroup::hw();
  ScanOptions a;
  a.bound = 2;
  auto ra = G.magnus_scan(a);
  CHECK(ra.elements == 500);
  CHECK(ra.effective_support == 3);
  CHECK_FALSE(ra.support_restricted);
  CHECK(ra.violations.empty());
  CHECK(ra.magnus_within_region());

  ScanOptions b;
  b.bound = 3;
  b.translations_only = true;
  auto rb = G.magnus_scan(b);
  CHECK(rb.elements == 343);
  CHECK(rb.violations.empty());

  const auto& H = CrystalGroup::gp(3);
  ScanOptions c;
  c.bound = 1;
  auto rc = H.magnus_scan(c);
  CHECK(rc.elements == 59049);
  CHECK_FALSE(rc.support_restricted);
  CHECK(rc.violations.empty());
}

TEST_CASE("scan flags the p=5 failure and reports witnesses") {
  const auto& F = CrystalGroup::gp(5);
  const CycloInt one = CycloInt::constant(5, 1);
  const CycloInt unit = one + CycloInt::zeta_pow(5, 1);
  CHECK(is_unit(unit));
  CHECK_FALSE(is_unit(pi_element(5)));

  auto e0 = F.block_translation(1, one);
  auto e0u = F.block_translation(1, unit);
  CHECK(F.closure_equal(e0, e0u));
  CHECK_FALSE(F.are_conjugate(e0, e0u));
  CHECK_FALSE(F.are_conjugate(e0, F.inv(e0u)));

  // translations have at most p^2 conjugates: the orbit collapses to the
  // zeta-multiples
  auto orbit = F.conjugacy_orbit(e0);
  std::set<IntVec> distinct(orbit.begin(), orbit.end());
  CHECK(orbit.size() == 25);
  CHECK(distinct.size() == 5);

  ScanOptions opt;
  opt.bound = 1;
  opt.max_support = 2;
  opt.translations_only = true;
  auto rep = F.magnus_scan(opt);
  CHECK(rep.elements == 1153);
  CHECK(rep.violations.size() >= 1);
  size_t to_check = std::min<size_t>(rep.violations.size(), 5);
  for (size_t i = 0; i < to_check; ++i) {
    const auto& viol = rep.violations[i];
    CHECK(F.closure_equal(viol.a, viol.b));
    CHECK_FALSE(F.are_conjugate(viol.a, viol.b));
    CHECK_FALSE(F.are_conjugate(viol.a, F.inv(viol.b)));
  }
}

TEST_CASE("scan options control the region") {
  const auto& G = CrystalGroup::hw();
  ScanOptions a;
  a.bound = 1;
  a.max_support = 1;
  auto ra = G.magnus_scan(a);
  CHECK(ra.elements == 28);  // (1 + 3*2) translations, 4 holonomy classes
  CHECK(ra.effective_support == 1);
  CHECK(ra.support_restricted);

  ScanOptions b;
  b.bound = 1;
  b.budget = 1;
  b.translations_only = true;
  auto rb = G.magnus_scan(b);
  CHECK(rb.elements == 1);
  CHECK(rb.effective_support == 0);

  ScanOptions c;
  c.bound = 0;
  CHECK_THROWS_AS(G.magnus_scan(c), std::invalid_argument);

  const auto& F = CrystalGroup::gp(5);
  ScanOptions d;
  d.bound = 1;
  auto est = F.magnus_scan(d);  // budget forces a support cap
  CHECK(est.support_restricted);
  CHECK(est.effective_support == 2);
  CHECK(est.elements == 28825);
  CHECK(est.violations.size() >= 1);
}

TEST_CASE("the p=7 member constructs and verifies") {
  const auto& S = CrystalGroup::gp(7);
  CHECK(S.rank() == 48);
  CHECK(S.name() == "g7");
  CHECK_NOTHROW(S.verify_automorphisms());
  CHECK(S.power(S.gen_u(), 7) == S.block_translation(0, p_over_pi(7)));
  auto e = S.block_translation(0, CycloInt::constant(7, 1));
  CHECK(S.closure_cyclic_index(e) == 7);
}

TEST_CASE("element validation and family dispatch") {
  const auto& G = CrystalGroup::hw();
  const auto& H = CrystalGroup::gp(3);

  CHECK_THROWS_AS(CrystalGroup::gp(2), std::invalid_argument);
  CHECK_THROWS_AS(CrystalGroup::gp(4), std::invalid_argument);
  CHECK_THROWS_AS(CrystalGroup::gp(11), std::invalid_argument);

  CHECK_THROWS_AS(G.mul(G.gen_u(), H.gen_u()), std::invalid_argument);
  CHECK_THROWS_AS(G.make(0, 0, IntVec(5)), std::invalid_argument);
  CHECK_THROWS_AS(G.block_translation(0, CycloInt::constant(3, 1)), std::domain_error);
  CHECK_THROWS_AS(H.block_translation(4, CycloInt::constant(3, 1)),
                  std::invalid_argument);
  CHECK_THROWS_AS(H.block_translation(0, CycloInt::constant(5, 1)),
                  std::invalid_argument);
  CHECK_THROWS_AS(G.matrix_cyclo(G.gen_u()), std::domain_error);
  CHECK_THROWS_AS(H.matrix_rat(H.gen_u()), std::domain_error);
  CHECK_THROWS_AS(G.sigma(G.gen_u()), std::domain_error);
  CHECK_THROWS_AS(G.tau(G.gen_u()), std::domain_error);
  CHECK_THROWS_AS(G.verify_automorphisms(), std::domain_error);

  // normalization of holonomy exponents
  CHECK(G.make(2, 3, IntVec(3)) == G.make(0, 1, IntVec(3)));
  CHECK(H.make(-1, 5, IntVec(8)) == H.make(2, 2, IntVec(8)));

  CHECK(G.to_string(G.gen_u()) == "x^1 y^0 . (0,0,0)");
  CHECK(H.to_string(H.block_translation(0, -p_over_pi(3))) ==
        "u^0 v^0 . [2 + z | 0 | 0 | 0]");
}

TEST_CASE("words from the corpus evaluate consistently") {
  struct Flat {
    const CrystalGroup* g;
    CrystalElement eval(const Word& w,
                        const std::map<std::string, CrystalElement>& env) const {
      switch (w.kind) {
        case Word::Kind::Identity:
          return g->identity_element();
        case Word::Kind::Generator:
          return env.at(w.name);
        case Word::Kind::Product: {
          CrystalElement acc = g->identity_element();
          for (const auto& f : w.args) acc = g->mul(acc, eval(f, env));
          return acc;
        }
        case Word::Kind::Power: {
          CrystalElement base = eval(w.args[0], env);
          CrystalElement acc = g->identity_element();
          BigInt e = w.exponent < 0 ? -w.exponent : w.exponent;
          for (BigInt i = 0; i < e; ++i) acc = g->mul(acc, base);
          return w.exponent < 0 ? g->inv(acc) : acc;
        }
        case Word::Kind::Commutator: {
          CrystalElement a = eval(w.args[0], env);
          CrystalElement b = eval(w.args[1], env);
          return g->mul(g->inv(g->mul(b, a)), g->mul(a, b));
        }
      }
      throw std::logic_error("unreachable");
    }
  };

  size_t total = 0;
  for (const char* spec : {"hw:corpus_hw.txt", "g3:corpus_g3.txt"}) {
    std::string s(spec);
    auto colon = s.find(':');
    const CrystalGroup& G =
        s.substr(0, colon) == "hw" ? CrystalGroup::hw() : CrystalGroup::gp(3);
    std::ifstream in(std::string(MAGNUS_TEST_DATA_DIR) + "/" + s.substr(colon + 1));
    REQUIRE(in.good());
    auto entries = read_corpus(in);
    CHECK(entries.size() >= 15);
    total += entries.size();
    auto env = G.word_environment();
    CrystalOps ops{&G};
    Flat flat{&G};
    for (const auto& entry : entries) {
      CHECK(parse(print(entry.word)) == entry.word);
      CHECK(evaluate(entry.word, env, ops) == flat.eval(entry.word, env));
    }
  }
  CHECK(total >= 30);
}
