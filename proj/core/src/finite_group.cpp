#include "magnus/finite_group.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace magnus {

namespace {

void check_cap(long long n, int cap) {
  if (n > cap)
    throw std::length_error("group order " + std::to_string(n) +
                            " exceeds table cap " + std::to_string(cap));
}

}  // namespace

void FiniteGroup::finish_tables(int cap) {
  check_cap(n_, cap);
  inv_.assign(static_cast<size_t>(n_), -1);
  for (int a = 0; a < n_; ++a) {
    for (int b = 0; b < n_; ++b)
      if (mul(a, b) == 0) {
        inv_[static_cast<size_t>(a)] = b;
        break;
      }
    if (inv_[static_cast<size_t>(a)] < 0)
      throw std::invalid_argument("element without inverse; table is not a group");
    if (mul(a, 0) != a || mul(0, a) != a)
      throw std::invalid_argument("element 0 is not an identity");
  }
}

FiniteGroup FiniteGroup::from_cyclic_factors(const std::vector<long long>& factors, int cap) {
  long long n = 1;
  for (long long f : factors) {
    if (f < 1) throw std::invalid_argument("cyclic factor must be >= 1");
    n *= f;
    check_cap(n, cap);
  }
  FiniteGroup g;
  g.n_ = static_cast<int>(n);
  g.mul_.assign(static_cast<size_t>(n) * n, 0);

  // lexicographic mixed-radix indexing, first factor most significant
  const size_t k = factors.size();
  std::vector<long long> stride(k, 1);
  for (size_t i = k; i-- > 1;) stride[i - 1] = stride[i] * factors[i];

  auto coords = [&](long long idx) {
    std::vector<long long> c(k);
    for (size_t i = 0; i < k; ++i) {
      c[i] = idx / stride[i];
      idx %= stride[i];
    }
    return c;
  };
  for (long long a = 0; a < n; ++a) {
    std::vector<long long> ca = coords(a);
    for (long long b = 0; b < n; ++b) {
      std::vector<long long> cb = coords(b);
      long long idx = 0;
      for (size_t i = 0; i < k; ++i) idx += ((ca[i] + cb[i]) % factors[i]) * stride[i];
      g.mul_[static_cast<size_t>(a) * n + b] = static_cast<int>(idx);
    }
  }
  for (size_t i = 0; i < k; ++i)
    g.gens_.push_back(static_cast<int>((1 % factors[i]) * stride[i]));
  g.labels_.reserve(static_cast<size_t>(n));
  for (long long a = 0; a < n; ++a) {
    std::vector<long long> c = coords(a);
    if (k == 1) {
      g.labels_.push_back(std::to_string(c[0]));
    } else {
      std::string s = "(";
      for (size_t i = 0; i < k; ++i) s += (i ? "," : "") + std::to_string(c[i]);
      g.labels_.push_back(s + ")");
    }
  }
  g.finish_tables(cap);
  return g;
}

FiniteGroup FiniteGroup::from_permutations(const std::vector<std::vector<int>>& gens, int cap) {
  size_t d = gens.empty() ? 1 : gens[0].size();
  for (const auto& p : gens) {
    if (p.size() != d) throw std::invalid_argument("permutations act on different sets");
    std::vector<bool> seen(d, false);
    for (int x : p) {
      if (x < 0 || static_cast<size_t>(x) >= d || seen[static_cast<size_t>(x)])
        throw std::invalid_argument("not a permutation");
      seen[static_cast<size_t>(x)] = true;
    }
  }

  std::vector<int> identity(d);
  std::iota(identity.begin(), identity.end(), 0);
  std::vector<std::vector<int>> elements{identity};
  std::map<std::vector<int>, int> index{{identity, 0}};

  // breadth-first discovery gives deterministic element numbering
  for (size_t head = 0; head < elements.size(); ++head) {
    for (const auto& g : gens) {
      std::vector<int> next(d);
      for (size_t pt = 0; pt < d; ++pt)
        next[pt] = g[static_cast<size_t>(elements[head][pt])];
      if (index.emplace(next, static_cast<int>(elements.size())).second) {
        elements.push_back(next);
        check_cap(static_cast<long long>(elements.size()), cap);
      }
    }
  }

  FiniteGroup fg;
  fg.n_ = static_cast<int>(elements.size());
  fg.mul_.assign(static_cast<size_t>(fg.n_) * fg.n_, 0);
  for (int a = 0; a < fg.n_; ++a)
    for (int b = 0; b < fg.n_; ++b) {
      std::vector<int> ab(d);
      for (size_t pt = 0; pt < d; ++pt)
        ab[pt] = elements[static_cast<size_t>(b)][static_cast<size_t>(
            elements[static_cast<size_t>(a)][pt])];
      fg.mul_[static_cast<size_t>(a) * fg.n_ + b] = index.at(ab);
    }
  for (const auto& g : gens) fg.gens_.push_back(index.at(g));
  fg.finish_tables(cap);
  return fg;
}

FiniteGroup FiniteGroup::direct_product(const FiniteGroup& a, const FiniteGroup& b, int cap) {
  long long n = static_cast<long long>(a.n_) * b.n_;
  check_cap(n, cap);
  FiniteGroup g;
  g.n_ = static_cast<int>(n);
  g.mul_.assign(static_cast<size_t>(n) * n, 0);
  auto idx = [&](int x, int y) { return x * b.n_ + y; };
  for (int x1 = 0; x1 < a.n_; ++x1)
    for (int y1 = 0; y1 < b.n_; ++y1)
      for (int x2 = 0; x2 < a.n_; ++x2)
        for (int y2 = 0; y2 < b.n_; ++y2)
          g.mul_[static_cast<size_t>(idx(x1, y1)) * n + idx(x2, y2)] =
              idx(a.mul(x1, x2), b.mul(y1, y2));
  for (int x : a.gens_) g.gens_.push_back(idx(x, 0));
  for (int y : b.gens_) g.gens_.push_back(idx(0, y));
  g.labels_.reserve(static_cast<size_t>(n));
  for (int x = 0; x < a.n_; ++x)
    for (int y = 0; y < b.n_; ++y)
      g.labels_.push_back("(" + a.label(x) + "," + b.label(y) + ")");
  g.finish_tables(cap);
  return g;
}

FiniteGroup FiniteGroup::from_table(std::vector<std::vector<int>> table, std::vector<int> gens,
                                    std::vector<std::string> labels) {
  FiniteGroup g;
  g.n_ = static_cast<int>(table.size());
  g.mul_.reserve(static_cast<size_t>(g.n_) * g.n_);
  for (const auto& row : table) {
    if (row.size() != static_cast<size_t>(g.n_))
      throw std::invalid_argument("multiplication table is not square");
    for (int x : row) {
      if (x < 0 || x >= g.n_) throw std::invalid_argument("table entry out of range");
      g.mul_.push_back(x);
    }
  }
  g.gens_ = std::move(gens);
  g.labels_ = std::move(labels);
  if (!g.labels_.empty() && g.labels_.size() != static_cast<size_t>(g.n_))
    throw std::invalid_argument("label count mismatch");
  g.finish_tables(g.n_);
  // the declared generators must actually generate
  if (g.subgroup_closure(g.gens_).count() != g.n_)
    throw std::invalid_argument("declared generators do not generate the group");
  return g;
}

int FiniteGroup::power(int g, long long e) const {
  int base = e < 0 ? inv(g) : g;
  unsigned long long k = e < 0 ? static_cast<unsigned long long>(-(e + 1)) + 1
                               : static_cast<unsigned long long>(e);
  int acc = 0;
  while (k > 0) {
    if (k & 1) acc = mul(acc, base);
    k >>= 1;
    if (k > 0) base = mul(base, base);
  }
  return acc;
}

long long FiniteGroup::element_order(int g) const {
  long long k = 1;
  int a = g;
  while (a != 0) {
    a = mul(a, g);
    ++k;
  }
  return k;
}

bool FiniteGroup::is_abelian() const {
  for (int a = 0; a < n_; ++a)
    for (int b = a + 1; b < n_; ++b)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

bool FiniteGroup::is_prime_power_order(long long& p_out) const {
  long long n = n_;
  if (n == 1) {
    p_out = 1;
    return true;
  }
  for (long long p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      if (n == 1) {
        p_out = p;
        return true;
      }
      return false;
    }
  p_out = n;  // n itself prime
  return true;
}

bool FiniteGroup::associativity_holds_full() const {
  for (int a = 0; a < n_; ++a)
    for (int b = 0; b < n_; ++b)
      for (int c = 0; c < n_; ++c)
        if (mul(mul(a, b), c) != mul(a, mul(b, c))) return false;
  return true;
}

bool FiniteGroup::associativity_holds_sampled(int samples) const {
  unsigned long long st = 0x9e3779b97f4a7c15ULL;
  auto next = [&] {
    st ^= st << 13;
    st ^= st >> 7;
    st ^= st << 17;
    return static_cast<int>(st % static_cast<unsigned long long>(n_));
  };
  for (int s = 0; s < samples; ++s) {
    int a = next(), b = next(), c = next();
    if (mul(mul(a, b), c) != mul(a, mul(b, c))) return false;
  }
  return true;
}

ElementSet FiniteGroup::subgroup_closure(const std::vector<int>& gens) const {
  ElementSet s(n_);
  s.add(0);
  std::vector<int> queue{0};
  while (!queue.empty()) {
    int a = queue.back();
    queue.pop_back();
    for (int g : gens) {
      int b = mul(a, g);
      if (!s.contains(b)) {
        s.add(b);
        queue.push_back(b);
      }
    }
  }
  return s;
}

ElementSet FiniteGroup::conjugacy_class(int g) const {
  ElementSet s(n_);
  for (int w = 0; w < n_; ++w) s.add(conj(g, w));
  return s;
}

bool FiniteGroup::are_conjugate(int g, int h) const {
  for (int w = 0; w < n_; ++w)
    if (conj(g, w) == h) return true;
  return false;
}

ElementSet FiniteGroup::normal_closure_of_set(const std::vector<int>& gens) const {
  // close the generating set under conjugation first; the subgroup generated
  // by a conjugation-closed set is normal
  ElementSet conj_set(n_);
  for (int g : gens)
    for (int w = 0; w < n_; ++w) conj_set.add(conj(g, w));
  return subgroup_closure(conj_set.elements());
}

ElementSet FiniteGroup::normal_closure(int g) const { return normal_closure_of_set({g}); }

long long FiniteGroup::closure_cyclic_quotient_order(int g) const {
  ElementSet closure = normal_closure(g);
  ElementSet comms(n_);
  for (int x = 0; x < n_; ++x) comms.add(comm(g, x));
  ElementSet comm_closure = normal_closure_of_set(comms.elements());
  return closure.count() / comm_closure.count();
}

MagnusResult FiniteGroup::has_magnus() const {
  // group elements by their normal closure, then compare within groups
  std::map<ElementSet, std::vector<int>> buckets;
  for (int g = 0; g < n_; ++g) buckets[normal_closure(g)].push_back(g);

  // conjugacy classes once; class id per element
  std::vector<int> class_id(static_cast<size_t>(n_), -1);
  for (int g = 0; g < n_; ++g) {
    if (class_id[static_cast<size_t>(g)] >= 0) continue;
    ElementSet cls = conjugacy_class(g);
    for (int e : cls.elements()) class_id[static_cast<size_t>(e)] = g;
  }

  MagnusResult res;
  for (const auto& [closure, members] : buckets) {
    for (int x : members)
      for (int y : members) {
        if (class_id[static_cast<size_t>(x)] == class_id[static_cast<size_t>(y)]) continue;
        if (class_id[static_cast<size_t>(x)] == class_id[static_cast<size_t>(inv(y))]) continue;
        std::pair<int, int> w{x, y};
        if (!res.witness || w < *res.witness) res.witness = w;
      }
  }
  res.has_property = !res.witness.has_value();
  return res;
}

std::vector<ElementSet> FiniteGroup::lower_central_series() const {
  std::vector<ElementSet> series;
  ElementSet whole(n_);
  for (int g = 0; g < n_; ++g) whole.add(g);
  series.push_back(whole);
  while (true) {
    const ElementSet& prev = series.back();
    std::vector<int> comms;
    ElementSet seen(n_);
    for (int a : prev.elements())
      for (int b = 0; b < n_; ++b) {
        int c = comm(a, b);
        if (!seen.contains(c)) {
          seen.add(c);
          comms.push_back(c);
        }
      }
    ElementSet next = subgroup_closure(comms);
    if (next == prev) break;
    series.push_back(next);
  }
  return series;
}

GroupQuotient FiniteGroup::quotient(const ElementSet& normal_subgroup) const {
  if (normal_subgroup.universe() != n_)
    throw std::invalid_argument("subgroup universe mismatch");
  if (!normal_subgroup.contains(0)) throw std::invalid_argument("subgroup must contain id");
  std::vector<int> members = normal_subgroup.elements();
  for (int a : members) {
    for (int b : members)
      if (!normal_subgroup.contains(mul(a, b)))
        throw std::invalid_argument("set is not closed under multiplication");
    for (int w = 0; w < n_; ++w)
      if (!normal_subgroup.contains(conj(a, w)))
        throw std::invalid_argument("subgroup is not normal");
  }

  std::vector<int> coset(static_cast<size_t>(n_), -1);
  std::vector<int> reps;
  for (int g = 0; g < n_; ++g) {
    if (coset[static_cast<size_t>(g)] >= 0) continue;
    int c = static_cast<int>(reps.size());
    reps.push_back(g);
    for (int a : members) coset[static_cast<size_t>(mul(g, a))] = c;
  }

  FiniteGroup q;
  q.n_ = static_cast<int>(reps.size());
  q.mul_.assign(static_cast<size_t>(q.n_) * q.n_, 0);
  for (int i = 0; i < q.n_; ++i)
    for (int j = 0; j < q.n_; ++j)
      q.mul_[static_cast<size_t>(i) * q.n_ + j] =
          coset[static_cast<size_t>(mul(reps[static_cast<size_t>(i)],
                                        reps[static_cast<size_t>(j)]))];
  for (int g : gens_) q.gens_.push_back(coset[static_cast<size_t>(g)]);
  if (!labels_.empty()) {
    q.labels_.reserve(static_cast<size_t>(q.n_));
    for (int r : reps) q.labels_.push_back(labels_[static_cast<size_t>(r)] + "N");
  }
  q.finish_tables(q.n_);
  return GroupQuotient{std::move(q), std::move(coset)};
}

CentralImageResult FiniteGroup::central_image_quotient(int x) const {
  if (x == 0) throw std::invalid_argument("x must not be the identity");
  long long p = 0;
  if (!is_prime_power_order(p))
    throw std::invalid_argument("group order is not a prime power");

  std::vector<ElementSet> series = lower_central_series();
  // series is strictly descending and ends at {id} for p-groups
  size_t k = 0;
  for (size_t i = 0; i < series.size(); ++i)
    if (series[i].contains(x)) k = i;
  ElementSet below = k + 1 < series.size() ? series[k + 1] : ElementSet(n_);
  if (below.count() == 0) below.add(0);

  GroupQuotient q = quotient(below);
  int image = q.projection[static_cast<size_t>(x)];
  if (image == 0) throw std::logic_error("image of x collapsed in the central image quotient");
  for (int w = 0; w < q.group.order(); ++w)
    if (q.group.mul(image, w) != q.group.mul(w, image))
      throw std::logic_error("image of x is not central in the central image quotient");
  return CentralImageResult{std::move(q.group), std::move(q.projection), image};
}

ElementSet FiniteGroup::commutator_subgroup() const {
  std::vector<int> comms;
  ElementSet seen(n_);
  for (int a = 0; a < n_; ++a)
    for (int b = a + 1; b < n_; ++b) {
      int c = comm(a, b);
      if (!seen.contains(c)) {
        seen.add(c);
        comms.push_back(c);
      }
    }
  return subgroup_closure(comms);
}

AbelianInvariants FiniteGroup::abelian_invariants() const {
  GroupQuotient ab = quotient(commutator_subgroup());
  const FiniteGroup& q = ab.group;
  std::vector<int> gens = q.gens_;
  const size_t k = gens.size();

  // Relation lattice of the generator images via breadth-first exponent
  // tracking: revisiting an element along a different exponent vector yields
  // a relation; the collected relations span the whole relation lattice.
  std::vector<IntVec> relations;
  std::vector<IntVec> expvec(static_cast<size_t>(q.order()));
  std::vector<int> order_q;
  ElementSet seen(q.order());
  seen.add(0);
  expvec[0] = IntVec(k);
  order_q.push_back(0);
  for (size_t head = 0; head < order_q.size(); ++head) {
    int a = order_q[static_cast<size_t>(head)];
    for (size_t i = 0; i < k; ++i) {
      int b = q.mul(a, gens[i]);
      IntVec v = expvec[static_cast<size_t>(a)];
      v[i] += 1;
      if (!seen.contains(b)) {
        seen.add(b);
        expvec[static_cast<size_t>(b)] = std::move(v);
        order_q.push_back(b);
      } else {
        IntVec rel(k);
        bool nonzero = false;
        for (size_t j = 0; j < k; ++j) {
          rel[j] = v[j] - expvec[static_cast<size_t>(b)][j];
          if (rel[j] != 0) nonzero = true;
        }
        if (nonzero) relations.push_back(std::move(rel));
      }
    }
  }
  if (seen.count() != q.order())
    throw std::logic_error("generators fail to generate the abelianization");
  if (relations.empty()) return AbelianInvariants{};  // trivial group (k = 0)
  return smith(IntMatrix::from_rows(std::move(relations)));
}

InversePairFlags inverse_pair_flags(const FiniteGroup& g_group, const FiniteGroup& h_group, int g, int h,
                         int cap) {
  InversePairFlags f{};
  f.left_conj_inverse = g_group.are_conjugate(g, g_group.inv(g));
  f.right_conj_inverse = h_group.are_conjugate(h, h_group.inv(h));
  FiniteGroup prod = FiniteGroup::direct_product(g_group, h_group, cap);
  int gh = g * h_group.order() + h;
  int gh_inv = g * h_group.order() + h_group.inv(h);
  f.closures_differ = prod.normal_closure(gh) != prod.normal_closure(gh_inv);
  return f;
}

bool product_gcd_obstruction(const FiniteGroup& g_group, const FiniteGroup& h_group, int g, int h) {
  long long m = g_group.closure_cyclic_quotient_order(g);
  long long n = h_group.closure_cyclic_quotient_order(h);
  long long d = std::gcd(m, n);
  return d != 1 && d != 2;
}

}  // namespace magnus
