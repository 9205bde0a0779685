#include "magnus/product_magnus.hpp"

#include <numeric>
#include <stdexcept>
#include <utility>

namespace magnus {

namespace {

IntVec concat(const IntVec& a, const IntVec& b) {
  IntVec v;
  v.reserve(a.size() + b.size());
  v.insert(v.end(), a.begin(), a.end());
  v.insert(v.end(), b.begin(), b.end());
  return v;
}

IntVec embed(const IntVec& r, std::size_t offset, std::size_t total) {
  IntVec v(total);
  for (std::size_t i = 0; i < r.size(); ++i) v[offset + i] = r[i];
  return v;
}

int finite_power(const FiniteGroup& f, int g, const BigInt& k) {
  BigInt o = f.element_order(g);
  BigInt r = k % o;
  if (r < 0) r += o;
  return f.power(g, r.convert_to<long long>());
}

BigInt egcd(const BigInt& a, const BigInt& b, BigInt& x, BigInt& y) {
  if (b == 0) {
    x = 1;
    y = 0;
    return a;
  }
  BigInt x1, y1;
  BigInt g = egcd(b, a % b, x1, y1);
  x = y1;
  y = x1 - (a / b) * y1;
  return g;
}

// j == a (mod m) and j == b (mod n); caller guarantees solvability.
std::pair<BigInt, BigInt> crt_combine(const BigInt& a, const BigInt& m, const BigInt& b,
                                      const BigInt& n) {
  BigInt x, y;
  BigInt g = egcd(m, n, x, y);
  BigInt l = m / g * n;
  BigInt t = ((b - a) / g) % (n / g) * x % (n / g);
  BigInt j = (a + m * t) % l;
  if (j < 0) j += l;
  return {j, l};
}

}  // namespace

BigInt ProductClosure::cyclic_index() const { return lcm(left_period, right_period); }

ElementSet element_commutators(const FiniteGroup& group, int g) {
  std::vector<int> comms;
  comms.reserve(static_cast<std::size_t>(group.order()));
  for (int x = 0; x < group.order(); ++x) comms.push_back(group.comm(g, x));
  return group.normal_closure_of_set(comms);
}

std::optional<BigInt> closure_residue(const CrystalGroup& group, const NormalClosure& n,
                                      const BigInt& period, const CrystalElement& w) {
  const CrystalElement& g = n.rep;
  // the holonomy image of g has order d, so at most one power matches
  int k = -1;
  CrystalElement p = group.identity_element();
  for (int kk = 0; kk < n.d; ++kk) {
    if (p.qi == w.qi && p.qj == w.qj) {
      k = kk;
      break;
    }
    p = group.mul(p, g);
  }
  if (k < 0) return std::nullopt;
  IntVec t = group.mul(w, group.inv(group.power(g, k))).t;
  if (!n.translations.contains(t)) return std::nullopt;
  IntVec s = group.power(g, n.d).t;
  BigInt e = period / n.d;
  for (BigInt m = 0; m < e; ++m) {
    IntVec v(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) v[i] = t[i] - m * s[i];
    if (n.commutators.contains(v)) return BigInt(k) + BigInt(n.d) * m;
  }
  throw std::logic_error("closure residue: member translation without a residue");
}

std::optional<long long> closure_residue(const FiniteGroup& group, int rep,
                                         const ElementSet& commutators, long long period,
                                         int w) {
  int p = group.id();
  for (long long j = 0; j < period; ++j) {
    if (commutators.contains(group.mul(w, group.inv(p)))) return j;
    p = group.mul(p, rep);
  }
  return std::nullopt;
}

ProductGroup::ProductGroup(const CrystalGroup& left, const CrystalGroup& right)
    : lc_(&left), rc_(&right) {}
ProductGroup::ProductGroup(const CrystalGroup& left, const FiniteGroup& right)
    : lc_(&left), rf_(&right) {}
ProductGroup::ProductGroup(const FiniteGroup& left, const CrystalGroup& right)
    : lf_(&left), rc_(&right) {}
ProductGroup::ProductGroup(const FiniteGroup& left, const FiniteGroup& right)
    : lf_(&left), rf_(&right) {}

std::string ProductGroup::name() const {
  auto side = [](const CrystalGroup* c, const FiniteGroup* f) {
    return c ? c->name() : "table(" + std::to_string(f->order()) + ")";
  };
  return side(lc_, lf_) + " x " + side(rc_, rf_);
}

void ProductGroup::check_element(const ProductElement& g) const {
  auto check = [](const CrystalGroup* c, const FiniteGroup* f, const FactorElement& e,
                  const char* which) {
    if (c) {
      const CrystalElement* ce = std::get_if<CrystalElement>(&e);
      if (ce == nullptr || ce->group != c)
        throw std::invalid_argument(std::string(which) +
                                    " coordinate does not belong to the declared factor");
    } else {
      const int* i = std::get_if<int>(&e);
      if (i == nullptr || *i < 0 || *i >= f->order())
        throw std::invalid_argument(std::string(which) +
                                    " coordinate does not belong to the declared factor");
    }
  };
  check(lc_, lf_, g.left, "left");
  check(rc_, rf_, g.right, "right");
}

ProductElement ProductGroup::element(FactorElement left, FactorElement right) const {
  ProductElement e{std::move(left), std::move(right)};
  check_element(e);
  return e;
}

ProductElement ProductGroup::identity() const {
  auto side = [](const CrystalGroup* c, const FiniteGroup* f) {
    return c ? FactorElement(c->identity_element()) : FactorElement(f->id());
  };
  return {side(lc_, lf_), side(rc_, rf_)};
}

ProductElement ProductGroup::mul(const ProductElement& a, const ProductElement& b) const {
  check_element(a);
  check_element(b);
  auto side = [](const CrystalGroup* c, const FiniteGroup* f, const FactorElement& x,
                 const FactorElement& y) {
    if (c) return FactorElement(c->mul(std::get<CrystalElement>(x), std::get<CrystalElement>(y)));
    return FactorElement(f->mul(std::get<int>(x), std::get<int>(y)));
  };
  return {side(lc_, lf_, a.left, b.left), side(rc_, rf_, a.right, b.right)};
}

ProductElement ProductGroup::inv(const ProductElement& a) const {
  check_element(a);
  auto side = [](const CrystalGroup* c, const FiniteGroup* f, const FactorElement& x) {
    if (c) return FactorElement(c->inv(std::get<CrystalElement>(x)));
    return FactorElement(f->inv(std::get<int>(x)));
  };
  return {side(lc_, lf_, a.left), side(rc_, rf_, a.right)};
}

ProductElement ProductGroup::power(const ProductElement& a, const BigInt& k) const {
  check_element(a);
  auto side = [&k](const CrystalGroup* c, const FiniteGroup* f, const FactorElement& x) {
    if (c) return FactorElement(c->power(std::get<CrystalElement>(x), k));
    return FactorElement(finite_power(*f, std::get<int>(x), k));
  };
  return {side(lc_, lf_, a.left), side(rc_, rf_, a.right)};
}

ProductElement ProductGroup::conjugate(const ProductElement& a, const ProductElement& w) const {
  check_element(a);
  check_element(w);
  auto side = [](const CrystalGroup* c, const FiniteGroup* f, const FactorElement& x,
                 const FactorElement& y) {
    if (c)
      return FactorElement(c->conjugate(std::get<CrystalElement>(x), std::get<CrystalElement>(y)));
    return FactorElement(f->conj(std::get<int>(x), std::get<int>(y)));
  };
  return {side(lc_, lf_, a.left, w.left), side(rc_, rf_, a.right, w.right)};
}

ProductElement ProductGroup::commutator(const ProductElement& a, const ProductElement& b) const {
  check_element(a);
  check_element(b);
  auto side = [](const CrystalGroup* c, const FiniteGroup* f, const FactorElement& x,
                 const FactorElement& y) {
    if (c)
      return FactorElement(
          c->commutator(std::get<CrystalElement>(x), std::get<CrystalElement>(y)));
    return FactorElement(f->comm(std::get<int>(x), std::get<int>(y)));
  };
  return {side(lc_, lf_, a.left, b.left), side(rc_, rf_, a.right, b.right)};
}

ProductClosure ProductGroup::closure(const ProductElement& g) const {
  check_element(g);
  ProductClosure n;
  n.rep = g;
  if (lc_) {
    const CrystalElement& gl = std::get<CrystalElement>(g.left);
    n.left_crystal = lc_->normal_closure(gl);
    n.left_period = lc_->closure_cyclic_index(gl);
  } else {
    int gl = std::get<int>(g.left);
    n.left_table = element_commutators(*lf_, gl);
    n.left_period = lf_->closure_cyclic_quotient_order(gl);
  }
  if (rc_) {
    const CrystalElement& gr = std::get<CrystalElement>(g.right);
    n.right_crystal = rc_->normal_closure(gr);
    n.right_period = rc_->closure_cyclic_index(gr);
  } else {
    int gr = std::get<int>(g.right);
    n.right_table = element_commutators(*rf_, gr);
    n.right_period = rf_->closure_cyclic_quotient_order(gr);
  }
  if (lc_ && rc_) {
    // concatenated route: [(g,h), GxH] = [g,G] (+) [h,H], then one extra
    // generator vec((g,h)^d) on top, exactly as in the single-factor split
    n.d = std::lcm(n.left_crystal->d, n.right_crystal->d);
    std::size_t nl = lc_->rank(), nr = rc_->rank();
    std::vector<IntVec> gens;
    for (const IntVec& r : n.left_crystal->commutators.basis())
      gens.push_back(embed(r, 0, nl + nr));
    for (const IntVec& r : n.right_crystal->commutators.basis())
      gens.push_back(embed(r, nl, nl + nr));
    n.commutators = Lattice(nl + nr, gens);
    gens.push_back(concat(lc_->power(std::get<CrystalElement>(g.left), n.d).t,
                          rc_->power(std::get<CrystalElement>(g.right), n.d).t));
    n.translations = Lattice(nl + nr, gens);
  }
  return n;
}

bool ProductGroup::closure_contains(const ProductClosure& n, const ProductElement& w) const {
  check_element(n.rep);
  check_element(w);
  if (n.commutators.has_value()) {
    const CrystalElement& gl = std::get<CrystalElement>(n.rep.left);
    const CrystalElement& gr = std::get<CrystalElement>(n.rep.right);
    const CrystalElement& wl = std::get<CrystalElement>(w.left);
    const CrystalElement& wr = std::get<CrystalElement>(w.right);
    CrystalElement pl = lc_->identity_element(), pr = rc_->identity_element();
    for (int k = 0; k < n.d; ++k) {
      if (pl.qi == wl.qi && pl.qj == wl.qj && pr.qi == wr.qi && pr.qj == wr.qj) {
        IntVec v = concat(lc_->mul(wl, lc_->inv(lc_->power(gl, k))).t,
                          rc_->mul(wr, rc_->inv(rc_->power(gr, k))).t);
        return n.translations->contains(v);
      }
      pl = lc_->mul(pl, gl);
      pr = rc_->mul(pr, gr);
    }
    return false;
  }
  // residue route: each coordinate pins the exponent to one class modulo the
  // factor period; membership iff the two classes meet
  std::optional<BigInt> r1, r2;
  if (lc_) {
    r1 = closure_residue(*lc_, *n.left_crystal, n.left_period,
                         std::get<CrystalElement>(w.left));
  } else {
    auto r = closure_residue(*lf_, std::get<int>(n.rep.left), *n.left_table,
                             n.left_period.convert_to<long long>(), std::get<int>(w.left));
    if (r.has_value()) r1 = BigInt(*r);
  }
  if (rc_) {
    r2 = closure_residue(*rc_, *n.right_crystal, n.right_period,
                         std::get<CrystalElement>(w.right));
  } else {
    auto r = closure_residue(*rf_, std::get<int>(n.rep.right), *n.right_table,
                             n.right_period.convert_to<long long>(), std::get<int>(w.right));
    if (r.has_value()) r2 = BigInt(*r);
  }
  if (!r1.has_value() || !r2.has_value()) return false;
  BigInt g = gcd(n.left_period, n.right_period);
  return (*r1 - *r2) % g == 0;
}

bool ProductGroup::closure_equal(const ProductElement& a, const ProductElement& b) const {
  return closure_contains(closure(a), b) && closure_contains(closure(b), a);
}

BigInt ProductGroup::closure_cyclic_index(const ProductElement& g) const {
  return closure(g).cyclic_index();
}

bool ProductGroup::are_conjugate(const ProductElement& a, const ProductElement& b) const {
  check_element(a);
  check_element(b);
  auto side = [](const CrystalGroup* c, const FiniteGroup* f, const FactorElement& x,
                 const FactorElement& y) {
    if (c) return c->are_conjugate(std::get<CrystalElement>(x), std::get<CrystalElement>(y));
    return f->are_conjugate(std::get<int>(x), std::get<int>(y));
  };
  return side(lc_, lf_, a.left, b.left) && side(rc_, rf_, a.right, b.right);
}

bool ProductGroup::conjugate_to_inverse(const ProductElement& g) const {
  return are_conjugate(g, inv(g));
}

InversePairFlags ProductGroup::inverse_pair_obstruction(const ProductElement& g) const {
  check_element(g);
  InversePairFlags f;
  if (lc_) {
    f.left_conj_inverse = lc_->conjugate_to_inverse(std::get<CrystalElement>(g.left));
  } else {
    int gl = std::get<int>(g.left);
    f.left_conj_inverse = lf_->are_conjugate(gl, lf_->inv(gl));
  }
  if (rc_) {
    f.right_conj_inverse = rc_->conjugate_to_inverse(std::get<CrystalElement>(g.right));
  } else {
    int gr = std::get<int>(g.right);
    f.right_conj_inverse = rf_->are_conjugate(gr, rf_->inv(gr));
  }
  FactorElement flipped =
      rc_ ? FactorElement(rc_->inv(std::get<CrystalElement>(g.right)))
          : FactorElement(rf_->inv(std::get<int>(g.right)));
  f.closures_differ = !closure_equal(g, {g.left, flipped});
  return f;
}

std::string ProductGroup::to_string(const ProductElement& g) const {
  check_element(g);
  auto side = [](const CrystalGroup* c, const FiniteGroup* f, const FactorElement& e) {
    if (c) return c->to_string(std::get<CrystalElement>(e));
    return f->label(std::get<int>(e));
  };
  return "(" + side(lc_, lf_, g.left) + ", " + side(rc_, rf_, g.right) + ")";
}

namespace {

// Fills out with the reduced translation gap between a^-1 and the conjugate
// of a by each holonomy class; returns true iff some gap closes.
bool coset_misses(const CrystalGroup& g, const CrystalElement& a,
                  std::vector<std::string>& out) {
  CrystalElement ai = g.inv(a);
  if (ai.qi != a.qi || ai.qj != a.qj) return false;  // classes differ outright
  const Lattice& k = g.conjugates_lattice(a).second;
  IntVec target = k.reduce(ai.t);
  bool hit = false;
  for (const IntVec& o : g.conjugacy_orbit(a)) {
    IntVec diff(target.size());
    for (std::size_t i = 0; i < target.size(); ++i) diff[i] = target[i] - o[i];
    diff = k.reduce(std::move(diff));
    bool zero = true;
    for (const BigInt& c : diff) zero = zero && c == 0;
    if (zero)
      hit = true;
    else
      out.push_back(g.translation_string(diff));
  }
  return hit;
}

}  // namespace

CounterexampleReport counterexample_report(const CrystalGroup& left,
                                           const CrystalGroup& right) {
  if (!left.is_hw()) throw std::invalid_argument("counterexample: left factor must be hw");
  if (right.is_hw() || right.p() != 3)
    throw std::invalid_argument("counterexample: right factor must be the p = 3 group");

  CounterexampleReport r;
  CrystalElement x = left.gen_u();
  CrystalElement e = right.block_translation(0, CycloInt::constant(3, 1));
  r.left_group = left.name();
  r.right_group = right.name();
  r.left_element = left.to_string(x);
  r.right_element = right.to_string(e);

  NormalClosure ncl = left.normal_closure(x);
  NormalClosure ncr = right.normal_closure(e);
  r.left_cyclic_index = left.closure_cyclic_index(x);
  r.right_cyclic_index = right.closure_cyclic_index(e);
  r.left_holonomy_order = ncl.d;
  r.right_holonomy_order = ncr.d;

  r.left_conjugate_to_inverse = coset_misses(left, x, r.left_misses);
  r.right_conjugate_to_inverse = coset_misses(right, e, r.right_misses);

  ProductGroup prod(left, right);
  ProductElement a = prod.element(x, e);
  r.flags = prod.inverse_pair_obstruction(a);
  r.closures_equal = !r.flags.closures_differ;

  std::optional<BigInt> rl = closure_residue(left, ncl, r.left_cyclic_index, x);
  std::optional<BigInt> rr =
      closure_residue(right, ncr, r.right_cyclic_index, right.inv(e));
  if (!rl.has_value() || !rr.has_value())
    throw std::logic_error("counterexample: inverse pair left the closure");
  r.left_residue = *rl;
  r.right_residue = *rr;
  auto [j, mod] = crt_combine(r.left_residue, r.left_cyclic_index, r.right_residue,
                              r.right_cyclic_index);
  r.combined_residue = j;
  r.combined_modulus = mod;

  r.subdirect_order = lcm(r.left_cyclic_index, r.right_cyclic_index);
  // the image of (x,e) generates each cyclic factor of the quotient
  r.projects_left = gcd(BigInt(1), r.left_cyclic_index) == 1;
  r.projects_right = gcd(BigInt(1), r.right_cyclic_index) == 1;
  return r;
}

std::string CounterexampleReport::to_string() const {
  auto b2s = [](bool b) { return b ? std::string("yes") : std::string("no"); };
  std::string s;
  s += "witness pair (" + left_element + ", " + right_element + ") in " + left_group +
       " x " + right_group + "\n";
  s += "left closure: cyclic index " + left_cyclic_index.str() + " (holonomy order " +
       std::to_string(left_holonomy_order) + ")\n";
  s += "right closure: cyclic index " + right_cyclic_index.str() + " (holonomy order " +
       std::to_string(right_holonomy_order) + ")\n";
  s += "left coordinate conjugate to its inverse: " + b2s(left_conjugate_to_inverse) +
       " (" + std::to_string(left_misses.size()) + " coset misses)\n";
  s += "right coordinate conjugate to its inverse: " + b2s(right_conjugate_to_inverse) +
       " (" + std::to_string(right_misses.size()) + " coset misses)\n";
  s += "closures of the pair and its right-inverted mate equal: " + b2s(closures_equal) +
       " (residues " + left_residue.str() + " mod " + left_cyclic_index.str() + ", " +
       right_residue.str() + " mod " + right_cyclic_index.str() + " combine to " +
       combined_residue.str() + " mod " + combined_modulus.str() + ")\n";
  s += "subdirect image: cyclic of order " + subdirect_order.str() +
       ", onto the left factor: " + b2s(projects_left) +
       ", onto the right factor: " + b2s(projects_right) + "\n";
  s += std::string("verdict: the direct product ") +
       (magnus_fails() ? "fails" : "retains") + " the Magnus property\n";
  return s;
}

}  // namespace magnus
