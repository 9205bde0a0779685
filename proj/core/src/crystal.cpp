#include "magnus/crystal.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace magnus {

namespace {

// Affine-diagonal matrix [[1, w],[0, diag(d)]] over an exact scalar.  Every
// element of both families has this shape (the holonomy generators are
// simultaneously diagonalised on the block basis), so products never leave
// it: (w1,d1)(w2,d2) = (w1*d2 + w2, d1*d2) with elementwise products.
template <class S>
struct Aff {
  std::vector<S> w, d;
};

template <class S>
Aff<S> aff_mul(const Aff<S>& a, const Aff<S>& b) {
  Aff<S> r;
  r.w.reserve(a.w.size());
  r.d.reserve(a.d.size());
  for (size_t k = 0; k < a.w.size(); ++k) {
    r.w.push_back(a.w[k] * b.d[k] + b.w[k]);
    r.d.push_back(a.d[k] * b.d[k]);
  }
  return r;
}

template <class S>
bool aff_eq(const Aff<S>& a, const Aff<S>& b) {
  return a.w == b.w && a.d == b.d;
}

BigInt rat_to_int(const BigRat& q) {
  if (rat_den(q) != 1) throw std::invalid_argument("matrix entry is not integral");
  return rat_num(q);
}

IntVec vec_add(const IntVec& a, const IntVec& b) {
  IntVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

IntVec vec_sub(const IntVec& a, const IntVec& b) {
  IntVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

IntVec vec_neg(const IntVec& a) {
  IntVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return r;
}

}  // namespace

// ---------------------------------------------------------------------------
// construction

const CrystalGroup& CrystalGroup::hw() {
  static const CrystalGroup g(2);
  return g;
}

const CrystalGroup& CrystalGroup::gp(int p) {
  require_supported_prime(p);
  switch (p) {
    case 3: {
      static const CrystalGroup g(3);
      return g;
    }
    case 5: {
      static const CrystalGroup g(5);
      return g;
    }
    default: {
      static const CrystalGroup g(7);
      return g;
    }
  }
}

CrystalGroup::CrystalGroup(int p) : p_(p) {
  if (p_ == 2) {
    n_ = 3;
    n_slots_ = 3;
    blk_ = 1;
  } else {
    require_supported_prime(p_);
    n_slots_ = static_cast<size_t>(p_ + 1);
    blk_ = static_cast<size_t>(p_ - 1);
    n_ = n_slots_ * blk_;
  }
  hcount_ = static_cast<size_t>(p_) * static_cast<size_t>(p_);
  if (p_ == 2) {
    build_hw();
  } else {
    build_gp();
  }
  comm_reps_.resize(hcount_ * hcount_);
  for (size_t q1 = 0; q1 < hcount_; ++q1)
    for (size_t q2 = 0; q2 < hcount_; ++q2) {
      CrystalElement c = commutator(rep_element(q1), rep_element(q2));
      if (c.qi != 0 || c.qj != 0) throw std::logic_error("holonomy is not abelian");
      comm_reps_[q1 * hcount_ + q2] = std::move(c.t);
    }
  if (p_ == 2)
    verify_hw();
  else
    verify_gp();
}

void CrystalGroup::build_hw() {
  using S = BigRat;
  const S half(BigInt(1), BigInt(2));
  Aff<S> X{{-half, S(0), S(0)}, {S(1), S(-1), S(-1)}};
  Aff<S> Y{{S(0), half, half}, {S(-1), S(1), S(-1)}};

  auto coords_from_w = [](const std::vector<S>& w) {
    IntVec t(3);
    t[0] = -rat_to_int(w[0]);
    t[1] = rat_to_int(w[1]);
    t[2] = rat_to_int(w[2]);
    return t;
  };
  auto w_from_coords = [](const IntVec& t) {
    return std::vector<S>{S(-t[0]), S(t[1]), S(t[2])};
  };

  // Holonomy representatives R(i,j) = X^i Y^j.
  std::vector<Aff<S>> reps(hcount_);
  for (int i = 0; i < p_; ++i)
    for (int j = 0; j < p_; ++j) {
      Aff<S> r{{S(0), S(0), S(0)}, {S(1), S(1), S(1)}};
      for (int k = 0; k < i; ++k) r = aff_mul(r, X);
      for (int k = 0; k < j; ++k) r = aff_mul(r, Y);
      reps[qindex(i, j)] = r;
    }

  wrep_rat_.resize(hcount_);
  dexp_.resize(hcount_);
  for (size_t q = 0; q < hcount_; ++q) {
    wrep_rat_[q] = reps[q].w;
    std::vector<int> de(n_slots_);
    for (size_t s = 0; s < n_slots_; ++s) {
      if (reps[q].d[s] == S(1))
        de[s] = 0;
      else if (reps[q].d[s] == S(-1))
        de[s] = 1;
      else
        throw std::logic_error("holonomy diagonal is not a sign");
    }
    dexp_[q] = de;
  }

  // Cocycle and action.
  kappa_.resize(hcount_ * hcount_);
  for (int i1 = 0; i1 < p_; ++i1)
    for (int j1 = 0; j1 < p_; ++j1)
      for (int i2 = 0; i2 < p_; ++i2)
        for (int j2 = 0; j2 < p_; ++j2) {
          size_t q1 = qindex(i1, j1), q2 = qindex(i2, j2);
          size_t q12 = qindex((i1 + i2) % p_, (j1 + j2) % p_);
          Aff<S> prod = aff_mul(reps[q1], reps[q2]);
          if (prod.d != reps[q12].d) throw std::logic_error("holonomy diagonal mismatch");
          std::vector<S> diff(n_slots_);
          for (size_t s = 0; s < n_slots_; ++s) diff[s] = prod.w[s] - reps[q12].w[s];
          kappa_[q1 * hcount_ + q2] = coords_from_w(diff);
        }
  rho_.reserve(hcount_);
  kimg_.reserve(hcount_);
  for (size_t q = 0; q < hcount_; ++q) {
    IntMatrix m(n_, n_);
    for (size_t k = 0; k < n_; ++k) {
      IntVec unit(n_);
      unit[k] = 1;
      std::vector<S> w = w_from_coords(unit);
      for (size_t s = 0; s < n_slots_; ++s) w[s] = w[s] * reps[q].d[s];
      IntVec img = coords_from_w(w);
      for (size_t c = 0; c < n_; ++c) m.at(k, c) = img[c];
    }
    rho_.push_back(m);
    IntMatrix diffm = m - IntMatrix::identity(n_);
    kimg_.emplace_back(n_, diffm.row_data());
  }
}

void CrystalGroup::build_gp() {
  using S = CycloRat;
  const int p = p_;
  const S zero(p);
  const S one = S::constant(p, BigRat(1));
  const CycloRat pi = to_rat(pi_element(p));
  const CycloRat pi_inv = inverse(pi);

  auto zpow = [&](long long k) { return S::zeta_pow(p, k); };

  Aff<S> U, V;
  U.w.assign(n_slots_, zero);
  U.d.assign(n_slots_, zpow(1));
  U.w[0] = pi_inv;
  U.d[0] = one;
  V.w.assign(n_slots_, -pi_inv);
  V.w[0] = zero;
  V.d.assign(n_slots_, one);
  V.d[0] = zpow(1);
  for (size_t s = 2; s < n_slots_; ++s) V.d[s] = zpow(static_cast<long long>(s) - 1);

  auto coords_from_w = [&](const std::vector<S>& w) {
    IntVec t(n_);
    for (size_t s = 0; s < n_slots_; ++s)
      for (size_t c = 0; c < blk_; ++c) {
        const BigRat& x = w[s].coeffs()[c];
        if (rat_den(x) != 1) throw std::invalid_argument("matrix entry is not integral");
        t[s * blk_ + c] = rat_num(x);
      }
    return t;
  };

  std::vector<Aff<S>> reps(hcount_);
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j) {
      Aff<S> r;
      r.w.assign(n_slots_, zero);
      r.d.assign(n_slots_, one);
      for (int k = 0; k < i; ++k) r = aff_mul(r, U);
      for (int k = 0; k < j; ++k) r = aff_mul(r, V);
      reps[qindex(i, j)] = r;
    }

  wrep_cyc_.resize(hcount_);
  dexp_.resize(hcount_);
  for (size_t q = 0; q < hcount_; ++q) {
    wrep_cyc_[q] = reps[q].w;
    std::vector<int> de(n_slots_);
    for (size_t s = 0; s < n_slots_; ++s) {
      int e = -1;
      for (int k = 0; k < p; ++k)
        if (reps[q].d[s] == zpow(k)) {
          e = k;
          break;
        }
      if (e < 0) throw std::logic_error("holonomy diagonal is not a root of unity");
      de[s] = e;
    }
    dexp_[q] = de;
  }

  kappa_.resize(hcount_ * hcount_);
  for (int i1 = 0; i1 < p; ++i1)
    for (int j1 = 0; j1 < p; ++j1)
      for (int i2 = 0; i2 < p; ++i2)
        for (int j2 = 0; j2 < p; ++j2) {
          size_t q1 = qindex(i1, j1), q2 = qindex(i2, j2);
          size_t q12 = qindex((i1 + i2) % p, (j1 + j2) % p);
          Aff<S> prod = aff_mul(reps[q1], reps[q2]);
          if (prod.d != reps[q12].d) throw std::logic_error("holonomy diagonal mismatch");
          std::vector<S> diff;
          diff.reserve(n_slots_);
          for (size_t s = 0; s < n_slots_; ++s) diff.push_back(prod.w[s] - reps[q12].w[s]);
          kappa_[q1 * hcount_ + q2] = coords_from_w(diff);
        }

  rho_.reserve(hcount_);
  kimg_.reserve(hcount_);
  for (size_t q = 0; q < hcount_; ++q) {
    IntMatrix m(n_, n_);
    for (size_t s = 0; s < n_slots_; ++s)
      for (size_t c = 0; c < blk_; ++c) {
        // zeta^c * zeta^{dexp} reduced to the basis, written into block s.
        CycloInt img = CycloInt::zeta_pow(p, static_cast<long long>(c) + dexp_[q][s]);
        size_t row = s * blk_ + c;
        for (size_t cc = 0; cc < blk_; ++cc) m.at(row, s * blk_ + cc) = img.coeffs()[cc];
      }
    rho_.push_back(m);
    IntMatrix diffm = m - IntMatrix::identity(n_);
    kimg_.emplace_back(n_, diffm.row_data());
  }

  // Block-shift and twist matrices of the two automorphisms.
  auto slot_of_block = [&](int b) { return static_cast<size_t>(b) + 1; };
  IntMatrix ms(n_, n_);
  for (size_t c = 0; c < blk_; ++c) {
    ms.at(0 * blk_ + c, 0 * blk_ + c) = 1;  // b_inf stays
    for (int b = 0; b < p; ++b) {
      // destination block b takes the coefficient of source block b+1 mod p
      size_t src = slot_of_block((b + 1) % p);
      ms.at(src * blk_ + c, slot_of_block(b) * blk_ + c) = 1;
    }
  }
  sigma_b_ = ms;

  IntMatrix mt(n_, n_);
  for (size_t c = 0; c < blk_; ++c) {
    mt.at(slot_of_block(0) * blk_ + c, 0 * blk_ + c) = -1;  // b_inf <- -b_0
    mt.at(0 * blk_ + c, slot_of_block(0) * blk_ + c) = -1;  // b_0 <- -b_inf
  }
  for (int i = 1; i < p; ++i) {
    int iinv = 0;
    for (int j = 1; j < p; ++j)
      if ((i * j) % p == 1) iinv = j;
    size_t src_slot = slot_of_block(iinv);
    for (size_t c = 0; c < blk_; ++c) {
      CycloInt img = -CycloInt::zeta_pow(p, static_cast<long long>(i) * static_cast<long long>(c));
      for (size_t cc = 0; cc < blk_; ++cc)
        mt.at(src_slot * blk_ + c, slot_of_block(i) * blk_ + cc) = img.coeffs()[cc];
    }
  }
  tau_b_ = mt;
}

// ---------------------------------------------------------------------------
// construction self-checks

void CrystalGroup::verify_hw() const {
  auto tr = [&](BigInt a, BigInt b, BigInt c) {
    return translation({std::move(a), std::move(b), std::move(c)});
  };
  const CrystalElement x = gen_u(), y = gen_v(), z = mul(x, y);
  const CrystalElement x2 = tr(1, 0, 0), y2 = tr(0, 1, 0), z2 = tr(0, 0, 1);
  auto require = [&](bool ok, const char* what) {
    if (!ok) throw std::logic_error(std::string("hw construction check failed: ") + what);
  };

  require(mul(x, x) == x2, "x^2");
  require(mul(y, y) == y2, "y^2");
  require(mul(z, z) == z2, "z^2 = (xy)^2");
  require(conjugate(y2, x) == inv(y2), "x^-1 y^2 x = y^-2");
  require(conjugate(x2, y) == inv(x2), "y^-1 x^2 y = x^-2");
  require(conjugate(z2, x) == inv(z2), "x^-1 z^2 x = z^-2");
  require(conjugate(x2, z) == inv(x2), "z^-1 x^2 z = x^-2");
  require(conjugate(z2, y) == inv(z2), "y^-1 z^2 y = z^-2");
  require(conjugate(y2, z) == inv(y2), "z^-1 y^2 z = y^-2");
  require(commutator(x, y) == tr(-1, 1, 1), "[x,y] = x^-2 y^2 z^2");

  // Displayed powers through the matrix view.
  auto top = [&](const CrystalElement& g) { return matrix_rat(g)[0]; };
  require(top(x2) == (std::vector<BigRat>{BigRat(1), BigRat(-1), BigRat(0), BigRat(0)}),
          "X^2 top row");
  require(top(y2) == (std::vector<BigRat>{BigRat(1), BigRat(0), BigRat(1), BigRat(0)}),
          "Y^2 top row");
  require(top(z2) == (std::vector<BigRat>{BigRat(1), BigRat(0), BigRat(0), BigRat(1)}),
          "(XY)^2 top row");
  require(top(commutator(x, y)) ==
              (std::vector<BigRat>{BigRat(1), BigRat(1), BigRat(1), BigRat(1)}),
          "[X,Y] top row");
}

void CrystalGroup::verify_gp() const {
  const int p = p_;
  auto require = [&](bool ok, const char* what) {
    if (!ok) throw std::logic_error(std::string("g") + std::to_string(p) +
                                    " construction check failed: " + what);
  };
  const CrystalElement u = gen_u(), v = gen_v();
  const CycloInt ppi = p_over_pi(p);

  require(power(u, p) == block_translation(0, ppi), "u^p = (p/pi) e_inf");
  require(power(v, p) == block_translation(1, -ppi), "v^p = -(p/pi) e_0");
  {
    IntVec sum(n_);
    for (size_t s = 0; s < n_slots_; ++s) sum[s * blk_] = 1;
    require(commutator(u, v) == translation(sum), "[u,v] = sum of e_i");
  }
  require(power(mul(u, v), p) == block_translation(n_slots_ - 1, -ppi),
          "(uv)^p = -(p/pi) e_{p-1}");

  // The module action: u multiplies block inf by 1 and the rest by zeta;
  // v multiplies block inf by zeta, block 0 by 1 and block i by zeta^i.
  for (size_t s = 0; s < n_slots_; ++s) {
    long long ue = s == 0 ? 0 : 1;
    long long ve = s == 0 ? 1 : (s == 1 ? 0 : static_cast<long long>(s) - 1);
    for (size_t c = 0; c < blk_; ++c) {
      CycloInt b = CycloInt::zeta_pow(p, static_cast<long long>(c));
      require(conjugate(block_translation(s, b), u) ==
                  block_translation(s, b * CycloInt::zeta_pow(p, ue)),
              "action of u on a basis coefficient");
      require(conjugate(block_translation(s, b), v) ==
                  block_translation(s, b * CycloInt::zeta_pow(p, ve)),
              "action of v on a basis coefficient");
    }
  }

  if (p == 3) {
    // Conjugation table of the presentation: a^z for the eight basis
    // generators and z in {u, v}.  mm denotes the coefficient -1-zeta.
    const CycloInt onec = CycloInt::constant(3, 1);
    const CycloInt hat = CycloInt::zeta_pow(3, 1);
    const CycloInt mm = -onec - hat;
    const CycloInt tab_a[2] = {onec, hat};
    for (size_t s = 0; s < 4; ++s) {
      for (int which = 0; which < 2; ++which) {
        CycloInt a = tab_a[which];
        // u fixes block inf and advances the others by one hat step
        CycloInt au = s == 0 ? a : (which == 0 ? hat : mm);
        CycloInt av(3);
        if (s == 0) av = which == 0 ? hat : mm;          // e_inf -> ehat, ehat -> -1-z
        else if (s == 1) av = a;                          // block 0 fixed
        else if (s == 2) av = which == 0 ? hat : mm;      // block 1: one step
        else av = which == 0 ? mm : onec;                 // block 2: two steps
        require(conjugate(block_translation(s, a), gen_u()) == block_translation(s, au),
                "c_{a,u} table entry");
        require(conjugate(block_translation(s, a), gen_v()) == block_translation(s, av),
                "c_{a,v} table entry");
      }
    }
  }

  // Displayed generator matrices.
  {
    const CycloRat pi_inv = inverse(to_rat(pi_element(p)));
    const CycloRat zero(p), one = CycloRat::constant(p, BigRat(1));
    auto mu = matrix_cyclo(gen_u());
    auto mv = matrix_cyclo(gen_v());
    require(mu[0][1] == pi_inv, "U top row has 1/pi at block inf");
    for (size_t s = 2; s <= n_slots_; ++s) require(mu[0][s] == zero, "U top row zeros");
    require(mu[1][1] == one, "U acts trivially on block inf");
    for (size_t s = 2; s <= n_slots_; ++s)
      require(mu[s][s] == CycloRat::zeta_pow(p, 1), "U multiplies by zeta");
    require(mv[0][1] == zero, "V top row zero at block inf");
    for (size_t s = 2; s <= n_slots_; ++s) require(mv[0][s] == -pi_inv, "V top row -1/pi");
    require(mv[1][1] == CycloRat::zeta_pow(p, 1), "V multiplies block inf by zeta");
    require(mv[2][2] == one, "V acts trivially on block 0");
    for (size_t s = 3; s <= n_slots_; ++s)
      require(mv[s][s] == CycloRat::zeta_pow(p, static_cast<long long>(s) - 2),
              "V multiplies block i by zeta^i");
  }

  verify_automorphisms();
}

void CrystalGroup::verify_automorphism(const IntMatrix& mb, const CrystalElement& img_u,
                                       const CrystalElement& img_v) const {
  auto require = [&](bool ok, const char* what) {
    if (!ok)
      throw std::logic_error(std::string("automorphism check failed: ") + what);
  };
  auto phi_b = [&](const IntVec& t) { return translation(mb.apply_row(t)); };

  // Power and commutator relators.
  require(power(img_u, p_) == phi_b(power(gen_u(), p_).t), "image of u^p relator");
  require(power(img_v, p_) == phi_b(power(gen_v(), p_).t), "image of v^p relator");
  require(commutator(img_u, img_v) == phi_b(commutator(gen_u(), gen_v()).t),
          "image of [u,v] relator");

  // Action relators: phi(b^z) = phi(b)^phi(z) for every basis vector.
  for (size_t k = 0; k < n_; ++k) {
    IntVec unit(n_);
    unit[k] = 1;
    for (int which = 0; which < 2; ++which) {
      const CrystalElement& z = which == 0 ? gen_u() : gen_v();
      const CrystalElement& phiz = which == 0 ? img_u : img_v;
      CrystalElement lhs = phi_b(conjugate(translation(unit), z).t);
      CrystalElement rhs = conjugate(phi_b(unit), phiz);
      require(lhs == rhs, "image of a conjugation relator");
    }
  }

  BigInt det = determinant(mb);
  require(det == 1 || det == -1, "lattice part is unimodular");
}

void CrystalGroup::verify_automorphisms() const {
  if (p_ == 2) throw std::domain_error("automorphisms are defined for the odd-p family");
  verify_automorphism(*sigma_b_, gen_u(), mul(gen_u(), gen_v()));
  verify_automorphism(*tau_b_, gen_v(), gen_u());
  // tau is an involution.
  for (size_t k = 0; k < n_; ++k) {
    IntVec unit(n_);
    unit[k] = 1;
    CrystalElement e = translation(unit);
    if (tau(tau(e)) != e) throw std::logic_error("tau^2 != id on the lattice");
  }
  if (tau(tau(gen_u())) != gen_u() || tau(tau(gen_v())) != gen_v())
    throw std::logic_error("tau^2 != id on the generators");
}

// ---------------------------------------------------------------------------
// elements and the group law

void CrystalGroup::check_element(const CrystalElement& g) const {
  if (g.group != this) throw std::invalid_argument("element belongs to a different group");
  if (g.t.size() != n_) throw std::invalid_argument("translation vector has wrong length");
}

CrystalElement CrystalGroup::make(int qi, int qj, IntVec t) const {
  if (t.size() != n_) throw std::invalid_argument("translation vector has wrong length");
  qi %= p_;
  qj %= p_;
  if (qi < 0) qi += p_;
  if (qj < 0) qj += p_;
  return {this, qi, qj, std::move(t)};
}

CrystalElement CrystalGroup::block_translation(std::size_t block, const CycloInt& coeff) const {
  if (p_ == 2) throw std::domain_error("block coefficients are defined for the odd-p family");
  if (block >= n_slots_) throw std::invalid_argument("block index out of range");
  if (coeff.prime() != p_) throw std::invalid_argument("coefficient has the wrong prime");
  IntVec t(n_);
  for (size_t c = 0; c < blk_; ++c) t[block * blk_ + c] = coeff.coeffs()[c];
  return translation(std::move(t));
}

std::map<std::string, CrystalElement> CrystalGroup::word_environment() const {
  std::map<std::string, CrystalElement> env;
  if (p_ == 2) {
    env["x"] = gen_u();
    env["y"] = gen_v();
    env["z"] = mul(gen_u(), gen_v());
    return env;
  }
  env["u"] = gen_u();
  env["v"] = gen_v();
  const CycloInt one = CycloInt::constant(p_, 1);
  auto block_name = [&](size_t s) {
    return s == 0 ? std::string("inf") : std::to_string(s - 1);
  };
  for (size_t s = 0; s < n_slots_; ++s) {
    env["e_" + block_name(s)] = block_translation(s, one);
    if (p_ == 3) env["eh_" + block_name(s)] = block_translation(s, CycloInt::zeta_pow(3, 1));
  }
  return env;
}

CrystalElement CrystalGroup::mul(const CrystalElement& a, const CrystalElement& b) const {
  check_element(a);
  check_element(b);
  size_t qa = qindex(a.qi, a.qj), qb = qindex(b.qi, b.qj);
  IntVec t = vec_add(vec_add(kappa_[qa * hcount_ + qb], rho_[qb].apply_row(a.t)), b.t);
  return {this, (a.qi + b.qi) % p_, (a.qj + b.qj) % p_, std::move(t)};
}

CrystalElement CrystalGroup::inv(const CrystalElement& a) const {
  check_element(a);
  int ii = (p_ - a.qi) % p_, jj = (p_ - a.qj) % p_;
  size_t qa = qindex(a.qi, a.qj), qv = qindex(ii, jj);
  IntVec t = vec_neg(vec_add(kappa_[qa * hcount_ + qv], rho_[qv].apply_row(a.t)));
  return {this, ii, jj, std::move(t)};
}

CrystalElement CrystalGroup::power(const CrystalElement& a, const BigInt& k) const {
  check_element(a);
  CrystalElement base = a;
  BigInt e = k;
  if (e < 0) {
    base = inv(base);
    e = -e;
  }
  CrystalElement acc = identity_element();
  while (e > 0) {
    if ((e & 1) != 0) acc = mul(acc, base);
    e >>= 1;
    if (e > 0) base = mul(base, base);
  }
  return acc;
}

CrystalElement CrystalGroup::conjugate(const CrystalElement& a, const CrystalElement& w) const {
  return mul(mul(inv(w), a), w);
}

CrystalElement CrystalGroup::commutator(const CrystalElement& a, const CrystalElement& b) const {
  return mul(mul(inv(a), inv(b)), mul(a, b));
}

// ---------------------------------------------------------------------------
// representation views

std::vector<BigRat> CrystalGroup::w_of(const CrystalElement& g) const {
  // Flattened translation row of the affine matrix (hw only).
  std::vector<BigRat> w = wrep_rat_[qindex(g.qi, g.qj)];
  w[0] -= BigRat(g.t[0]);
  w[1] += BigRat(g.t[1]);
  w[2] += BigRat(g.t[2]);
  return w;
}

std::vector<std::vector<BigRat>> CrystalGroup::matrix_rat(const CrystalElement& g) const {
  if (p_ != 2) throw std::domain_error("rational matrix view is defined for hw only");
  check_element(g);
  size_t dim = n_slots_ + 1;
  std::vector<std::vector<BigRat>> m(dim, std::vector<BigRat>(dim));
  m[0][0] = 1;
  std::vector<BigRat> w = w_of(g);
  const std::vector<int>& de = dexp_[qindex(g.qi, g.qj)];
  for (size_t s = 0; s < n_slots_; ++s) {
    m[0][s + 1] = w[s];
    m[s + 1][s + 1] = de[s] == 0 ? 1 : -1;
  }
  return m;
}

std::vector<std::vector<CycloRat>> CrystalGroup::matrix_cyclo(const CrystalElement& g) const {
  if (p_ == 2) throw std::domain_error("cyclotomic matrix view is defined for odd p only");
  check_element(g);
  size_t dim = n_slots_ + 1;
  std::vector<std::vector<CycloRat>> m(dim, std::vector<CycloRat>(dim, CycloRat(p_)));
  m[0][0] = CycloRat::constant(p_, BigRat(1));
  size_t q = qindex(g.qi, g.qj);
  for (size_t s = 0; s < n_slots_; ++s) {
    std::vector<BigRat> coeffs(blk_);
    for (size_t c = 0; c < blk_; ++c) coeffs[c] = BigRat(g.t[s * blk_ + c]);
    m[0][s + 1] = wrep_cyc_[q][s] + CycloRat(p_, std::move(coeffs));
    m[s + 1][s + 1] = CycloRat::zeta_pow(p_, dexp_[q][s]);
  }
  return m;
}

CrystalElement CrystalGroup::from_matrix_rat(const std::vector<std::vector<BigRat>>& m) const {
  if (p_ != 2) throw std::domain_error("rational matrix view is defined for hw only");
  size_t dim = n_slots_ + 1;
  if (m.size() != dim) throw std::invalid_argument("matrix has wrong dimensions");
  for (const auto& row : m)
    if (row.size() != dim) throw std::invalid_argument("matrix has wrong dimensions");
  if (m[0][0] != BigRat(1)) throw std::invalid_argument("matrix is not affine");
  for (size_t i = 1; i < dim; ++i) {
    if (m[i][0] != BigRat(0)) throw std::invalid_argument("matrix is not affine");
    for (size_t j = 1; j < dim; ++j)
      if (i != j && m[i][j] != BigRat(0))
        throw std::invalid_argument("matrix block is not diagonal");
  }
  int j = m[1][1] == BigRat(-1) ? 1 : 0;
  int i = m[2][2] == BigRat(-1) ? 1 : 0;
  size_t q = qindex(i, j);
  for (size_t s = 0; s < n_slots_; ++s)
    if (m[s + 1][s + 1] != BigRat(dexp_[q][s] == 0 ? 1 : -1))
      throw std::invalid_argument("diagonal signs do not match any holonomy class");
  IntVec t(n_);
  t[0] = -rat_to_int(m[0][1] - wrep_rat_[q][0]);
  t[1] = rat_to_int(m[0][2] - wrep_rat_[q][1]);
  t[2] = rat_to_int(m[0][3] - wrep_rat_[q][2]);
  return {this, i, j, std::move(t)};
}

CrystalElement CrystalGroup::from_matrix_cyclo(
    const std::vector<std::vector<CycloRat>>& m) const {
  if (p_ == 2) throw std::domain_error("cyclotomic matrix view is defined for odd p only");
  size_t dim = n_slots_ + 1;
  if (m.size() != dim) throw std::invalid_argument("matrix has wrong dimensions");
  for (const auto& row : m)
    if (row.size() != dim) throw std::invalid_argument("matrix has wrong dimensions");
  const CycloRat zero(p_);
  if (m[0][0] != CycloRat::constant(p_, BigRat(1)))
    throw std::invalid_argument("matrix is not affine");
  for (size_t i = 1; i < dim; ++i) {
    if (m[i][0] != zero) throw std::invalid_argument("matrix is not affine");
    for (size_t j = 1; j < dim; ++j)
      if (i != j && m[i][j] != zero)
        throw std::invalid_argument("matrix block is not diagonal");
  }
  auto dlog = [&](const CycloRat& x) {
    for (int k = 0; k < p_; ++k)
      if (x == CycloRat::zeta_pow(p_, k)) return k;
    throw std::invalid_argument("diagonal entry is not a power of zeta");
  };
  int j = dlog(m[1][1]);
  int i = dlog(m[2][2]);
  size_t q = qindex(i, j);
  for (size_t s = 0; s < n_slots_; ++s)
    if (m[s + 1][s + 1] != CycloRat::zeta_pow(p_, dexp_[q][s]))
      throw std::invalid_argument("diagonal does not match any holonomy class");
  IntVec t(n_);
  for (size_t s = 0; s < n_slots_; ++s) {
    CycloRat diff = m[0][s + 1] - wrep_cyc_[q][s];
    for (size_t c = 0; c < blk_; ++c) {
      const BigRat& x = diff.coeffs()[c];
      if (rat_den(x) != 1) throw std::invalid_argument("translation part is not integral");
      t[s * blk_ + c] = rat_num(x);
    }
  }
  return {this, i, j, std::move(t)};
}

const IntMatrix& CrystalGroup::action(int qi, int qj) const {
  qi %= p_;
  qj %= p_;
  if (qi < 0) qi += p_;
  if (qj < 0) qj += p_;
  return rho_[qindex(qi, qj)];
}

const Lattice& CrystalGroup::conjugation_image(int qi, int qj) const {
  qi %= p_;
  qj %= p_;
  if (qi < 0) qi += p_;
  if (qj < 0) qj += p_;
  return kimg_[qindex(qi, qj)];
}

// ---------------------------------------------------------------------------
// closures

Lattice CrystalGroup::commutator_module(const CrystalElement& g) const {
  check_element(g);
  // trans([g, R(q) b(s)]) = s (I - rho(q_g)) + trans([g, R(q)]): the module
  // is spanned by the rows of I - rho(q_g) together with the finitely many
  // commutators against the holonomy representatives.
  std::vector<IntVec> gens;
  size_t qg = qindex(g.qi, g.qj);
  bool trivial_holonomy = g.qi == 0 && g.qj == 0;
  if (!trivial_holonomy) {
    IntMatrix diffm = IntMatrix::identity(n_) - rho_[qg];
    for (const auto& row : diffm.row_data()) gens.push_back(row);
  }
  for (size_t q = 0; q < hcount_; ++q) {
    IntVec c = vec_sub(rho_[q].apply_row(g.t), g.t);
    if (!trivial_holonomy) c = vec_add(comm_reps_[qg * hcount_ + q], c);
    gens.push_back(std::move(c));
  }
  return Lattice(n_, gens);
}

NormalClosure CrystalGroup::normal_closure(const CrystalElement& g) const {
  check_element(g);
  int d = holonomy_order(g);
  Lattice l = commutator_module(g);
  CrystalElement gd = power(g, d);
  if (gd.qi != 0 || gd.qj != 0) throw std::logic_error("g^d has nontrivial holonomy");
  Lattice na = l + Lattice(n_, {gd.t});
  return NormalClosure{g, d, std::move(l), std::move(na)};
}

bool CrystalGroup::closure_contains(const NormalClosure& n, const CrystalElement& w) const {
  check_element(n.rep);
  check_element(w);
  for (int k = 0; k < n.d; ++k) {
    if (w.qi != (n.rep.qi * k) % p_ || w.qj != (n.rep.qj * k) % p_) continue;
    CrystalElement r = mul(w, power(n.rep, BigInt(-k)));
    if (r.qi != 0 || r.qj != 0) throw std::logic_error("holonomy did not cancel");
    return n.translations.contains(r.t);
  }
  return false;
}

bool CrystalGroup::closure_equal(const CrystalElement& g, const CrystalElement& h) const {
  return closure_contains(normal_closure(g), h) && closure_contains(normal_closure(h), g);
}

BigInt CrystalGroup::closure_cyclic_index(const CrystalElement& g) const {
  check_element(g);
  if (g == identity_element()) return 1;
  NormalClosure n = normal_closure(g);
  auto idx = n.commutators.index_in(n.translations);
  if (!idx) throw std::logic_error("closure quotient is not finite");
  return BigInt(n.d) * *idx;
}

// ---------------------------------------------------------------------------
// conjugacy

std::pair<CrystalElement, Lattice> CrystalGroup::conjugates_lattice(
    const CrystalElement& g) const {
  check_element(g);
  return {g, kimg_[qindex(g.qi, g.qj)]};
}

std::vector<IntVec> CrystalGroup::conjugacy_orbit(const CrystalElement& g) const {
  check_element(g);
  size_t qg = qindex(g.qi, g.qj);
  const Lattice& k = kimg_[qg];
  std::vector<IntVec> orbit;
  orbit.reserve(hcount_);
  // trans(g^{R(q)}) = trans([R(q_g), R(q)]) + t rho(q)
  for (size_t q = 0; q < hcount_; ++q)
    orbit.push_back(
        k.reduce(vec_add(comm_reps_[qg * hcount_ + q], rho_[q].apply_row(g.t))));
  return orbit;
}

bool CrystalGroup::are_conjugate(const CrystalElement& g, const CrystalElement& h) const {
  check_element(g);
  check_element(h);
  if (g.qi != h.qi || g.qj != h.qj) return false;
  size_t qg = qindex(g.qi, g.qj);
  const Lattice& k = kimg_[qg];
  for (size_t q = 0; q < hcount_; ++q) {
    IntVec c = vec_add(comm_reps_[qg * hcount_ + q], rho_[q].apply_row(g.t));
    if (k.contains(vec_sub(h.t, c))) return true;
  }
  return false;
}

bool CrystalGroup::conjugate_to_inverse(const CrystalElement& g) const {
  return are_conjugate(g, inv(g));
}

// ---------------------------------------------------------------------------
// global structure

Lattice CrystalGroup::commutator_subgroup_lattice() const {
  std::vector<IntVec> gens;
  for (int which = 0; which < 2; ++which) {
    size_t q = which == 0 ? qindex(1, 0) : qindex(0, 1);
    IntMatrix diffm = rho_[q] - IntMatrix::identity(n_);
    for (const auto& row : diffm.row_data()) gens.push_back(row);
  }
  gens.push_back(commutator(gen_u(), gen_v()).t);
  return Lattice(n_, gens);
}

AbelianInvariants CrystalGroup::abelianization() const {
  std::vector<IntVec> rows;
  auto rel_row = [&](int cu, int cv, const IntVec& t, int sign) {
    IntVec r(2 + n_);
    r[0] = cu;
    r[1] = cv;
    for (size_t k = 0; k < n_; ++k) r[2 + k] = sign * t[k];
    return r;
  };
  rows.push_back(rel_row(p_, 0, power(gen_u(), p_).t, -1));
  rows.push_back(rel_row(0, p_, power(gen_v(), p_).t, -1));
  rows.push_back(rel_row(0, 0, commutator(gen_u(), gen_v()).t, 1));
  for (int which = 0; which < 2; ++which) {
    size_t q = which == 0 ? qindex(1, 0) : qindex(0, 1);
    IntMatrix diffm = rho_[q] - IntMatrix::identity(n_);
    for (const auto& row : diffm.row_data()) rows.push_back(rel_row(0, 0, row, 1));
  }

  if (p_ != 2) {
    // Cross-check: the commutator translations are exactly the vectors whose
    // block augmentations agree mod p (pi times each block plus the
    // all-blocks vector of ones).
    std::vector<IntVec> gens;
    IntVec ones(n_);
    for (size_t s = 0; s < n_slots_; ++s) ones[s * blk_] = 1;
    gens.push_back(ones);
    const CycloInt pi = pi_element(p_);
    for (size_t s = 0; s < n_slots_; ++s)
      for (size_t c = 0; c < blk_; ++c) {
        CycloInt x = pi * CycloInt::zeta_pow(p_, static_cast<long long>(c));
        IntVec row(n_);
        for (size_t cc = 0; cc < blk_; ++cc) row[s * blk_ + cc] = x.coeffs()[cc];
        gens.push_back(row);
      }
    if (commutator_subgroup_lattice() != Lattice(n_, gens))
      throw std::logic_error("commutator lattice does not match the augmentation description");
  }

  return smith(IntMatrix::from_rows(rows));
}

// ---------------------------------------------------------------------------
// automorphisms

CrystalElement CrystalGroup::sigma(const CrystalElement& g) const {
  if (p_ == 2) throw std::domain_error("automorphisms are defined for the odd-p family");
  check_element(g);
  CrystalElement img = power(gen_u(), g.qi);
  img = mul(img, power(mul(gen_u(), gen_v()), g.qj));
  return mul(img, translation(sigma_b_->apply_row(g.t)));
}

CrystalElement CrystalGroup::tau(const CrystalElement& g) const {
  if (p_ == 2) throw std::domain_error("automorphisms are defined for the odd-p family");
  check_element(g);
  CrystalElement img = power(gen_v(), g.qi);
  img = mul(img, power(gen_u(), g.qj));
  return mul(img, translation(tau_b_->apply_row(g.t)));
}

// ---------------------------------------------------------------------------
// scanning

namespace {

// A unit is one conjugacy class together with the class of the inverse: the
// finest granularity at which scan violations are reported.  Orbits hold the
// K-reduced conjugate translations, so matching an element is one lattice
// reduction plus set lookups.
struct ScanUnit {
  CrystalElement first;
  int qi, qj, inv_qi, inv_qj;
  std::set<IntVec> orbit, inv_orbit;
};

struct ScanClass {
  CrystalElement rep;
  int d = 1;
  std::vector<ScanUnit> units;
};

struct ScanBucket {
  Lattice na = Lattice::zero(0);
  std::vector<ScanClass> classes;
};

}  // namespace

ScanReport CrystalGroup::magnus_scan(const ScanOptions& opt) const {
  if (opt.bound < 1) throw std::invalid_argument("scan bound must be at least 1");
  ScanReport report;

  const long long width = 2 * opt.bound;
  const long long hclasses = opt.translations_only ? 1 : static_cast<long long>(hcount_);
  // Count the region for a candidate support cap: sum over k of
  // C(n, k) * (2*bound)^k, saturating well above any usable budget.
  auto region_count = [&](int s) {
    const double cap = 4e18;
    double total = 0, term = 1;  // term = C(n,k) width^k
    for (int k = 0; k <= s; ++k) {
      total += term;
      if (total > cap) return cap;
      term *= static_cast<double>(n_ - static_cast<size_t>(k)) /
              static_cast<double>(k + 1) * static_cast<double>(width);
    }
    return total * static_cast<double>(hclasses);
  };
  int support = opt.max_support >= 0 ? std::min<int>(opt.max_support, static_cast<int>(n_))
                                     : static_cast<int>(n_);
  if (opt.max_support < 0) {
    while (support > 0 && region_count(support) > static_cast<double>(opt.budget)) --support;
  }
  report.effective_support = support;
  report.support_restricted = support < static_cast<int>(n_);

  std::ostringstream region;
  region << name() << ": " << (opt.translations_only ? "translation coset only"
                                                     : "all holonomy classes")
         << ", |t_k| <= " << opt.bound;
  if (report.support_restricted) region << ", support <= " << support;
  report.region = region.str();

  std::map<std::string, ScanBucket> buckets;

  IntVec t(n_);
  auto visit = [&](int qi, int qj) {
    CrystalElement g = make(qi, qj, t);
    ++report.elements;
    NormalClosure n = normal_closure(g);

    std::string key;
    if (qi == 0 && qj == 0) {
      key = "0";
    } else {
      // canonical generator of the cyclic holonomy image
      int bi = qi, bj = qj;
      for (int k = 2; k < p_; ++k) {
        int ci = (qi * k) % p_, cj = (qj * k) % p_;
        if (ci < bi || (ci == bi && cj < bj)) {
          bi = ci;
          bj = cj;
        }
      }
      key = std::to_string(bi) + "," + std::to_string(bj);
    }
    key += "|" + n.translations.to_string();

    auto it = buckets.find(key);
    if (it == buckets.end()) {
      it = buckets.emplace(key, ScanBucket{n.translations, {}}).first;
    }
    ScanBucket& bucket = it->second;

    ScanClass* found = nullptr;
    for (auto& cls : bucket.classes) {
      NormalClosure rn{cls.rep, cls.d, Lattice::zero(n_), bucket.na};
      NormalClosure gn{g, n.d, Lattice::zero(n_), bucket.na};
      if (closure_contains(rn, g) && closure_contains(gn, cls.rep)) {
        found = &cls;
        break;
      }
    }
    if (!found) {
      bucket.classes.push_back(ScanClass{g, n.d, {}});
      found = &bucket.classes.back();
    }

    IntVec reduced = kimg_[qindex(qi, qj)].reduce(t);
    bool seen = false;
    for (const auto& unit : found->units) {
      if ((qi == unit.qi && qj == unit.qj && unit.orbit.count(reduced)) ||
          (qi == unit.inv_qi && qj == unit.inv_qj && unit.inv_orbit.count(reduced))) {
        seen = true;
        break;
      }
    }
    if (!seen) {
      for (const auto& unit : found->units)
        report.violations.push_back(ScanViolation{unit.first, g});
      CrystalElement gi = inv(g);
      auto orbit_set = [&](const CrystalElement& e) {
        std::vector<IntVec> orbit = conjugacy_orbit(e);
        return std::set<IntVec>(orbit.begin(), orbit.end());
      };
      found->units.push_back(
          ScanUnit{g, g.qi, g.qj, gi.qi, gi.qj, orbit_set(g), orbit_set(gi)});
    }
  };

  // Enumerate translations in lexicographic coordinate order, pruning once
  // the support cap is exceeded.
  auto enumerate = [&](auto&& self, size_t pos, int nonzero) -> void {
    if (pos == n_) {
      if (opt.translations_only) {
        visit(0, 0);
      } else {
        for (int qi = 0; qi < p_; ++qi)
          for (int qj = 0; qj < p_; ++qj) visit(qi, qj);
      }
      return;
    }
    for (long long val = -opt.bound; val <= opt.bound; ++val) {
      int nz = nonzero + (val != 0 ? 1 : 0);
      if (nz > support) continue;
      t[pos] = val;
      self(self, pos + 1, nz);
    }
    t[pos] = 0;
  };
  enumerate(enumerate, 0, 0);

  for (const auto& [key, bucket] : buckets)
    report.closure_classes += static_cast<long long>(bucket.classes.size());
  return report;
}

// ---------------------------------------------------------------------------
// finite quotients

CrystalQuotient CrystalGroup::finite_quotient(long long m, int cap) const {
  if (m < 1) throw std::invalid_argument("quotient modulus must be positive");
  BigInt order = BigInt(p_) * p_;
  for (size_t k = 0; k < n_; ++k) {
    order *= m;
    if (order > cap) throw std::length_error("finite quotient exceeds the order cap");
  }
  const long long tcount_ll = (order / (BigInt(p_) * p_)).convert_to<long long>();
  const size_t tcount = static_cast<size_t>(tcount_ll);
  const size_t total = static_cast<size_t>(order.convert_to<long long>());

  // Digit tables for the mixed-radix translation index (t[0] most
  // significant, matching lexicographic element order).
  std::vector<std::vector<int>> tvec(tcount, std::vector<int>(n_));
  for (size_t idx = 0; idx < tcount; ++idx) {
    size_t rem = idx;
    for (size_t k = n_; k-- > 0;) {
      tvec[idx][k] = static_cast<int>(rem % static_cast<size_t>(m));
      rem /= static_cast<size_t>(m);
    }
  }
  auto encode_t = [&](const std::vector<int>& digits) {
    size_t idx = 0;
    for (size_t k = 0; k < n_; ++k) idx = idx * static_cast<size_t>(m) +
                                          static_cast<size_t>(digits[k]);
    return idx;
  };

  // Action and cocycle reduced mod m as plain ints.
  std::vector<std::vector<std::vector<int>>> rho_mod(hcount_);
  for (size_t q = 0; q < hcount_; ++q) {
    rho_mod[q].assign(tcount, std::vector<int>(n_));
    std::vector<std::vector<int>> rm(n_, std::vector<int>(n_));
    for (size_t i = 0; i < n_; ++i)
      for (size_t j = 0; j < n_; ++j) {
        BigInt v = rho_[q].at(i, j) % m;
        if (v < 0) v += m;
        rm[i][j] = static_cast<int>(v.convert_to<long long>());
      }
    for (size_t idx = 0; idx < tcount; ++idx)
      for (size_t j = 0; j < n_; ++j) {
        long long acc = 0;
        for (size_t i = 0; i < n_; ++i) acc += static_cast<long long>(tvec[idx][i]) * rm[i][j];
        rho_mod[q][idx][j] = static_cast<int>(acc % m);
      }
  }
  std::vector<std::vector<int>> kappa_mod(hcount_ * hcount_, std::vector<int>(n_));
  for (size_t qq = 0; qq < hcount_ * hcount_; ++qq)
    for (size_t k = 0; k < n_; ++k) {
      BigInt v = kappa_[qq][k] % m;
      if (v < 0) v += m;
      kappa_mod[qq][k] = static_cast<int>(v.convert_to<long long>());
    }

  std::vector<std::vector<int>> table(total, std::vector<int>(total));
  std::vector<int> digits(n_);
  for (size_t a = 0; a < total; ++a) {
    size_t qa = a / tcount, ia = a % tcount;
    for (size_t b = 0; b < total; ++b) {
      size_t qb = b / tcount, ib = b % tcount;
      int qi = (static_cast<int>(qa) / p_ + static_cast<int>(qb) / p_) % p_;
      int qj = (static_cast<int>(qa) % p_ + static_cast<int>(qb) % p_) % p_;
      const std::vector<int>& kap = kappa_mod[qa * hcount_ + qb];
      const std::vector<int>& ta = rho_mod[qb][ia];
      const std::vector<int>& tb = tvec[ib];
      for (size_t k = 0; k < n_; ++k)
        digits[k] = static_cast<int>((static_cast<long long>(kap[k]) + ta[k] + tb[k]) % m);
      table[a][b] = static_cast<int>(
          (static_cast<size_t>(qindex(qi, qj))) * tcount + encode_t(digits));
    }
  }

  std::vector<std::string> labels(total);
  for (size_t a = 0; a < total; ++a) {
    size_t qa = a / tcount, ia = a % tcount;
    std::ostringstream os;
    os << "q" << qa / static_cast<size_t>(p_) << qa % static_cast<size_t>(p_) << ".t";
    for (size_t k = 0; k < n_; ++k) os << (k == 0 ? "(" : ",") << tvec[ia][k];
    os << ")";
    labels[a] = os.str();
  }
  std::vector<int> gens = {static_cast<int>(qindex(1, 0) * tcount),
                           static_cast<int>(qindex(0, 1) * tcount)};

  return CrystalQuotient{
      this, m, FiniteGroup::from_table(std::move(table), gens, std::move(labels))};
}

int CrystalQuotient::project(const CrystalElement& g) const {
  source->check_element(g);
  const long long m = modulus;
  size_t tcount = 1;
  for (size_t k = 0; k < source->rank(); ++k) tcount *= static_cast<size_t>(m);
  size_t idx = 0;
  for (size_t k = 0; k < source->rank(); ++k) {
    BigInt v = g.t[k] % m;
    if (v < 0) v += m;
    idx = idx * static_cast<size_t>(m) + static_cast<size_t>(v.convert_to<long long>());
  }
  return static_cast<int>(source->qindex(g.qi, g.qj) * tcount + idx);
}

// ---------------------------------------------------------------------------
// printing

std::string CrystalGroup::translation_string(const IntVec& t) const {
  if (t.size() != n_) throw std::invalid_argument("translation vector has wrong length");
  std::ostringstream os;
  if (p_ == 2) {
    os << "(" << t[0].str() << "," << t[1].str() << "," << t[2].str() << ")";
    return os.str();
  }
  os << "[";
  for (size_t s = 0; s < n_slots_; ++s) {
    std::vector<BigInt> coeffs(t.begin() + static_cast<long>(s * blk_),
                               t.begin() + static_cast<long>((s + 1) * blk_));
    if (s) os << " | ";
    os << CycloInt(p_, std::move(coeffs)).to_string();
  }
  os << "]";
  return os.str();
}

std::string CrystalGroup::to_string(const CrystalElement& g) const {
  check_element(g);
  std::ostringstream os;
  os << (p_ == 2 ? "x" : "u") << "^" << g.qi << " " << (p_ == 2 ? "y" : "v") << "^" << g.qj
     << " . " << translation_string(g.t);
  return os.str();
}

}  // namespace magnus
