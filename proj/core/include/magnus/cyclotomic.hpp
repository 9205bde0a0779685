#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "magnus/rational.hpp"

namespace magnus {

// The odd primes the cyclotomic layer is built and tested for.  Extend here
// if another family member is ever needed; coefficient growth stays tame for
// small p.
inline constexpr int kCycloPrimes[] = {3, 5, 7};

bool is_supported_prime(int p);
void require_supported_prime(int p);

/**
 * Element of Z[zeta_p] (Ring = BigInt) or Q(zeta_p) (Ring = BigRat), stored
 * on the basis {1, zeta, ..., zeta^{p-2}} with the reduction
 * zeta^{p-1} = -(1 + zeta + ... + zeta^{p-2}).
 *
 * Values are immutable; every operation returns a fresh element in canonical
 * basis form.  Mixing elements of different p throws std::invalid_argument.
 */
template <class Ring>
class CycloElem {
 public:
  explicit CycloElem(int p) : p_(checked(p)), c_(static_cast<size_t>(p - 1)) {}

  CycloElem(int p, std::vector<Ring> coeffs) : p_(checked(p)), c_(std::move(coeffs)) {
    if (c_.size() != static_cast<size_t>(p_ - 1))
      throw std::invalid_argument("cyclotomic coefficient vector must have length p-1");
  }

  static CycloElem constant(int p, Ring n) {
    CycloElem r(p);
    r.c_[0] = std::move(n);
    return r;
  }

  // zeta^k for any integer k (reduced mod p, then to the canonical basis).
  static CycloElem zeta_pow(int p, long long k) {
    CycloElem r(p);
    long long e = k % p;
    if (e < 0) e += p;
    if (e == p - 1) {
      for (auto& x : r.c_) x = Ring(-1);
    } else {
      r.c_[static_cast<size_t>(e)] = Ring(1);
    }
    return r;
  }

  int prime() const { return p_; }
  const std::vector<Ring>& coeffs() const { return c_; }

  bool is_zero() const {
    for (const auto& x : c_)
      if (x != 0) return false;
    return true;
  }

  // True when the element lies in the prime field (only the constant
  // coordinate may be nonzero; the basis makes this representation unique).
  bool is_rational() const {
    for (size_t i = 1; i < c_.size(); ++i)
      if (c_[i] != 0) return false;
    return true;
  }

  const Ring& rational_part() const {
    if (!is_rational()) throw std::domain_error("cyclotomic element is not rational");
    return c_[0];
  }

  CycloElem operator-() const {
    CycloElem r(p_);
    for (size_t i = 0; i < c_.size(); ++i) r.c_[i] = -c_[i];
    return r;
  }

  CycloElem operator+(const CycloElem& o) const {
    same_prime(o);
    CycloElem r(p_);
    for (size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i] + o.c_[i];
    return r;
  }

  CycloElem operator-(const CycloElem& o) const {
    same_prime(o);
    CycloElem r(p_);
    for (size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i] - o.c_[i];
    return r;
  }

  CycloElem operator*(const CycloElem& o) const {
    same_prime(o);
    // Convolve with exponents taken mod p, then fold the zeta^{p-1} bucket
    // back onto the basis.
    std::vector<Ring> acc(static_cast<size_t>(p_));
    for (size_t i = 0; i < c_.size(); ++i) {
      if (c_[i] == 0) continue;
      for (size_t j = 0; j < o.c_.size(); ++j) {
        if (o.c_[j] == 0) continue;
        acc[(i + j) % static_cast<size_t>(p_)] += c_[i] * o.c_[j];
      }
    }
    CycloElem r(p_);
    const Ring& top = acc[static_cast<size_t>(p_ - 1)];
    for (size_t k = 0; k + 1 < acc.size(); ++k) r.c_[k] = acc[k] - top;
    return r;
  }

  CycloElem& operator+=(const CycloElem& o) { return *this = *this + o; }
  CycloElem& operator-=(const CycloElem& o) { return *this = *this - o; }
  CycloElem& operator*=(const CycloElem& o) { return *this = *this * o; }

  bool operator==(const CycloElem& o) const { return p_ == o.p_ && c_ == o.c_; }
  bool operator!=(const CycloElem& o) const { return !(*this == o); }

  std::string to_string() const;

 private:
  static int checked(int p) {
    require_supported_prime(p);
    return p;
  }
  void same_prime(const CycloElem& o) const {
    if (p_ != o.p_) throw std::invalid_argument("cyclotomic elements with different p");
  }

  int p_;
  std::vector<Ring> c_;
};

using CycloInt = CycloElem<BigInt>;
using CycloRat = CycloElem<BigRat>;

// Galois substitution zeta -> zeta^k.  k is reduced mod p and must not be
// divisible by p.
template <class Ring>
CycloElem<Ring> galois(const CycloElem<Ring>& a, long long k) {
  const int p = a.prime();
  long long e = k % p;
  if (e < 0) e += p;
  if (e == 0) throw std::invalid_argument("galois exponent divisible by p");
  std::vector<Ring> acc(static_cast<size_t>(p));
  for (size_t i = 0; i < a.coeffs().size(); ++i)
    acc[(i * static_cast<size_t>(e)) % static_cast<size_t>(p)] += a.coeffs()[i];
  std::vector<Ring> out(static_cast<size_t>(p - 1));
  const Ring& top = acc[static_cast<size_t>(p - 1)];
  for (size_t j = 0; j + 1 < acc.size(); ++j) out[j] = acc[j] - top;
  return CycloElem<Ring>(p, std::move(out));
}

// Field norm: the product of all Galois conjugates.  Exact; the product is
// Galois-fixed, hence rational in the basis representation.
template <class Ring>
Ring norm(const CycloElem<Ring>& a) {
  CycloElem<Ring> prod = a;
  for (int k = 2; k < a.prime(); ++k) prod *= galois(a, k);
  return prod.rational_part();
}

// pi = zeta - 1, the ramified prime above p.
CycloInt pi_element(int p);

// The exact quotient p / pi, an algebraic integer; verified by
// re-multiplication at call time.
CycloInt p_over_pi(int p);

// Unit test: norm in {1, -1}.  (For odd p the norm is non-negative, so this
// is norm == 1 in practice.)
bool is_unit(const CycloInt& a);

CycloRat to_rat(const CycloInt& a);

// Narrowing conversion; throws std::domain_error when a denominator is not 1.
CycloInt to_int_checked(const CycloRat& a);

// Exact field inverse via the conjugate product; throws std::domain_error on
// zero.
CycloRat inverse(const CycloRat& a);

std::string to_string(const BigRat& q);

template <class Ring>
std::string CycloElem<Ring>::to_string() const {
  // Readable polynomial form, e.g. "-2 - z" for coeffs (-2, -1).
  std::string s;
  bool first = true;
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    std::string coeff;
    if constexpr (std::is_same_v<Ring, BigInt>) {
      coeff = c_[i].str();
    } else {
      coeff = magnus::to_string(c_[i]);
    }
    bool neg = !coeff.empty() && coeff[0] == '-';
    if (neg) coeff = coeff.substr(1);
    std::string mono = i == 0 ? "" : (i == 1 ? "z" : "z^" + std::to_string(i));
    if (coeff == "1" && !mono.empty()) coeff = "";
    std::string term = coeff.empty() ? mono : (mono.empty() ? coeff : coeff + "*" + mono);
    if (first) {
      s += (neg ? "-" : "") + term;
      first = false;
    } else {
      s += (neg ? " - " : " + ") + term;
    }
  }
  return first ? "0" : s;
}

}  // namespace magnus
