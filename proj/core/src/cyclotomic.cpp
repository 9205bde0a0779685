#include "magnus/cyclotomic.hpp"

namespace magnus {

bool is_supported_prime(int p) {
  for (int q : kCycloPrimes)
    if (q == p) return true;
  return false;
}

void require_supported_prime(int p) {
  if (!is_supported_prime(p))
    throw std::invalid_argument("unsupported prime p=" + std::to_string(p) +
                                " (supported: 3, 5, 7)");
}

CycloInt pi_element(int p) {
  CycloInt z = CycloInt::zeta_pow(p, 1);
  return z - CycloInt::constant(p, 1);
}

CycloInt p_over_pi(int p) {
  // x^{p-1} + ... + 1 = prod_{k=1}^{p-1} (x - zeta^k) at x = 1 gives
  // p = prod (1 - zeta^k), so p / (zeta - 1) = -prod_{k=2}^{p-1} (1 - zeta^k).
  CycloInt acc = CycloInt::constant(p, -1);
  for (int k = 2; k < p; ++k)
    acc *= CycloInt::constant(p, 1) - CycloInt::zeta_pow(p, k);
  if (acc * pi_element(p) != CycloInt::constant(p, p))
    throw std::domain_error("p_over_pi self-check failed");
  return acc;
}

bool is_unit(const CycloInt& a) {
  BigInt n = norm(a);
  return n == 1 || n == -1;
}

CycloRat to_rat(const CycloInt& a) {
  std::vector<BigRat> c(a.coeffs().size());
  for (size_t i = 0; i < c.size(); ++i) c[i] = BigRat(a.coeffs()[i]);
  return CycloRat(a.prime(), std::move(c));
}

CycloInt to_int_checked(const CycloRat& a) {
  std::vector<BigInt> c(a.coeffs().size());
  for (size_t i = 0; i < c.size(); ++i) {
    if (rat_den(a.coeffs()[i]) != 1)
      throw std::domain_error("cyclotomic element is not integral");
    c[i] = rat_num(a.coeffs()[i]);
  }
  return CycloInt(a.prime(), std::move(c));
}

CycloRat inverse(const CycloRat& a) {
  if (a.is_zero()) throw std::domain_error("inverse of zero");
  // a * (prod of the other conjugates) = norm(a), a nonzero rational.
  CycloRat cof = CycloRat::constant(a.prime(), BigRat(1));
  for (int k = 2; k < a.prime(); ++k) cof *= galois(a, k);
  BigRat n = (a * cof).rational_part();
  std::vector<BigRat> c(cof.coeffs().size());
  for (size_t i = 0; i < c.size(); ++i) c[i] = cof.coeffs()[i] / n;
  return CycloRat(a.prime(), std::move(c));
}

std::string to_string(const BigRat& q) {
  std::string s = rat_num(q).str();
  if (rat_den(q) != 1) s += "/" + rat_den(q).str();
  return s;
}

}  // namespace magnus
