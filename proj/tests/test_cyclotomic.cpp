#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <magnus/cyclotomic.hpp>

using namespace magnus;

namespace {

// Independent norm oracle: norm(a) = Res(Phi_p, A) for the coefficient
// polynomial A, computed from the Sylvester matrix by fraction-free
// elimination.  Shares no code with the library implementation.
BigInt bareiss_det(std::vector<std::vector<BigInt>> m) {
  const size_t n = m.size();
  if (n == 0) return 1;
  BigInt sign = 1, prev = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      size_t sw = k + 1;
      while (sw < n && m[sw][k] == 0) ++sw;
      if (sw == n) return 0;
      std::swap(m[k], m[sw]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i)
      for (size_t j = k + 1; j < n; ++j)
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

BigInt resultant_norm(const CycloInt& a) {
  const int p = a.prime();
  std::vector<BigInt> g(a.coeffs());
  while (!g.empty() && g.back() == 0) g.pop_back();
  if (g.empty()) return 0;
  const size_t dg = g.size() - 1;
  const size_t df = static_cast<size_t>(p - 1);  // Phi_p, all coefficients 1
  if (dg == 0) {
    BigInt r = 1;
    for (size_t i = 0; i < df; ++i) r *= g[0];
    return r;
  }
  const size_t n = df + dg;
  std::vector<std::vector<BigInt>> s(n, std::vector<BigInt>(n));
  for (size_t r = 0; r < dg; ++r)
    for (size_t c = 0; c <= df; ++c) s[r][r + c] = 1;
  for (size_t r = 0; r < df; ++r)
    for (size_t c = 0; c <= dg; ++c) s[dg + r][r + c] = g[dg - c];
  return bareiss_det(std::move(s));
}

CycloInt ci(int p, std::vector<long long> v) {
  std::vector<BigInt> c(v.size());
  for (size_t i = 0; i < v.size(); ++i) c[i] = v[i];
  return CycloInt(p, std::move(c));
}

}  // namespace

TEST_CASE("prime validation") {
  CHECK(is_supported_prime(3));
  CHECK(is_supported_prime(5));
  CHECK(is_supported_prime(7));
  CHECK_FALSE(is_supported_prime(2));
  CHECK_FALSE(is_supported_prime(11));
  CHECK_THROWS_AS(CycloInt(4), std::invalid_argument);
  CHECK_THROWS_AS(CycloInt(11), std::invalid_argument);
  CHECK_THROWS_AS(CycloInt(3, {BigInt(1)}), std::invalid_argument);
}

TEST_CASE("basis reduction for p=3") {
  // omega^2 = -1 - omega
  CycloInt w = CycloInt::zeta_pow(3, 1);
  CHECK(w * w == ci(3, {-1, -1}));
  CHECK(CycloInt::zeta_pow(3, 2) == ci(3, {-1, -1}));
  CHECK(CycloInt::zeta_pow(3, -1) == ci(3, {-1, -1}));
  CHECK(CycloInt::zeta_pow(3, 3) == ci(3, {1, 0}));
  // (omega - 1)^2 = omega^2 - 2 omega + 1 = -3 omega
  CycloInt pi = pi_element(3);
  CHECK(pi * pi == ci(3, {0, -3}));
}

TEST_CASE("zeta powers multiply by exponent addition") {
  for (int p : {3, 5, 7})
    for (int i = 0; i < p; ++i)
      for (int j = 0; j < p; ++j)
        CHECK(CycloInt::zeta_pow(p, i) * CycloInt::zeta_pow(p, j) ==
              CycloInt::zeta_pow(p, i + j));
}

TEST_CASE("ring axioms on sampled elements") {
  for (int p : {3, 5, 7}) {
    std::vector<CycloInt> xs;
    for (int s = 0; s < 5; ++s) {
      std::vector<BigInt> c(static_cast<size_t>(p - 1));
      for (size_t i = 0; i < c.size(); ++i)
        c[i] = (static_cast<long long>(i) * 7 + s * 13) % 11 - 5;
      xs.emplace_back(p, std::move(c));
    }
    for (const auto& a : xs)
      for (const auto& b : xs) {
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK(a - a == CycloInt(p));
        for (const auto& d : xs) {
          CHECK((a + b) + d == a + (b + d));
          CHECK((a * b) * d == a * (b * d));
          CHECK(a * (b + d) == a * b + a * d);
        }
      }
  }
}

TEST_CASE("mixing primes throws") {
  CHECK_THROWS_AS(CycloInt::zeta_pow(3, 1) + CycloInt::zeta_pow(5, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(CycloInt::zeta_pow(3, 1) * CycloInt::zeta_pow(7, 1),
                  std::invalid_argument);
}

TEST_CASE("norm matches resultant oracle") {
  for (int p : {3, 5, 7}) {
    // deterministic sample sweep, including sparse and negative patterns
    for (int s = 0; s < 40; ++s) {
      std::vector<BigInt> c(static_cast<size_t>(p - 1));
      long long st = 2654435761LL * (s + 1);
      for (size_t i = 0; i < c.size(); ++i) {
        st = st * 6364136223846793005LL + 1442695040888963407LL;
        c[i] = (st >> 33) % 7 - 3;
      }
      CycloInt a(p, std::move(c));
      CHECK(norm(a) == resultant_norm(a));
    }
    CHECK(norm(CycloInt(p)) == 0);
    CHECK(norm(CycloInt::constant(p, 2)) == resultant_norm(CycloInt::constant(p, 2)));
  }
}

TEST_CASE("norm is multiplicative") {
  CycloInt a = ci(5, {1, 2, 0, -1});
  CycloInt b = ci(5, {0, 1, 1, 3});
  CHECK(norm(a * b) == norm(a) * norm(b));
}

TEST_CASE("norm of pi is p") {
  CHECK(norm(pi_element(3)) == 3);
  CHECK(norm(pi_element(5)) == 5);
  CHECK(norm(pi_element(7)) == 7);
}

TEST_CASE("unit detection") {
  // 1 + zeta_5 is a unit: its norm is Phi_5(-1) = 1.
  CycloInt u = CycloInt::constant(5, 1) + CycloInt::zeta_pow(5, 1);
  CHECK(norm(u) == 1);
  CHECK(is_unit(u));
  CHECK(is_unit(CycloInt::constant(3, -1)));
  CHECK(is_unit(CycloInt::zeta_pow(7, 4)));
  CHECK_FALSE(is_unit(pi_element(3)));
  CHECK_FALSE(is_unit(CycloInt::constant(3, 2)));
  CHECK_FALSE(is_unit(CycloInt(5)));
}

TEST_CASE("p_over_pi") {
  // For p=3: 3/(omega-1) = -2 - omega.
  CHECK(p_over_pi(3) == ci(3, {-2, -1}));
  for (int p : {3, 5, 7}) {
    CHECK(p_over_pi(p) * pi_element(p) == CycloInt::constant(p, p));
    CHECK(norm(p_over_pi(p)) * norm(pi_element(p)) ==
          norm(CycloInt::constant(p, p)));
  }
}

TEST_CASE("galois substitution") {
  for (int p : {3, 5, 7}) {
    CycloInt a = ci(p, std::vector<long long>(static_cast<size_t>(p - 1), 1));
    CHECK(galois(a, 1) == a);
    CHECK_THROWS_AS(galois(a, 0), std::invalid_argument);
    CHECK_THROWS_AS(galois(a, p), std::invalid_argument);
    // multiplicativity of each substitution
    CycloInt b = ci(p, std::vector<long long>(static_cast<size_t>(p - 1), 0));
    b = CycloInt::zeta_pow(p, 1) + CycloInt::constant(p, 2);
    for (int k = 1; k < p; ++k) {
      CHECK(galois(a * b, k) == galois(a, k) * galois(b, k));
      CHECK(galois(a + b, k) == galois(a, k) + galois(b, k));
      CHECK(galois(CycloInt::zeta_pow(p, 1), k) == CycloInt::zeta_pow(p, k));
    }
    // composing all substitutions: galois(galois(a,j),k) = galois(a, jk)
    for (int j = 1; j < p; ++j)
      for (int k = 1; k < p; ++k)
        CHECK(galois(galois(a, j), k) == galois(a, (j * k) % p));
  }
}

TEST_CASE("rational inverse") {
  CycloRat pi = to_rat(pi_element(3));
  CycloRat inv = inverse(pi);
  CHECK(pi * inv == CycloRat::constant(3, BigRat(1)));
  // pi^2 * (-omega^2) = 3, so 1/pi^2 = -omega^2/3.
  CycloRat pi2 = pi * pi;
  CHECK(inverse(pi2) * CycloRat::constant(3, BigRat(3)) ==
        -to_rat(CycloInt::zeta_pow(3, 2)));
  for (int p : {3, 5, 7}) {
    CycloRat x = to_rat(ci(p, std::vector<long long>(static_cast<size_t>(p - 1), 2))) +
                 CycloRat::constant(p, BigRat(1, 3));
    CHECK(x * inverse(x) == CycloRat::constant(p, BigRat(1)));
  }
  CHECK_THROWS_AS(inverse(CycloRat(3)), std::domain_error);
}

TEST_CASE("integrality check") {
  CycloRat x = to_rat(pi_element(5));
  CHECK(to_int_checked(x) == pi_element(5));
  CycloRat half = CycloRat::constant(3, BigRat(1, 2));
  CHECK_THROWS_AS(to_int_checked(half), std::domain_error);
}

TEST_CASE("printing") {
  CHECK(ci(3, {-2, -1}).to_string() == "-2 - z");
  CHECK(ci(3, {0, 0}).to_string() == "0");
  CHECK(ci(5, {1, 0, 3, -1}).to_string() == "1 + 3*z^2 - z^3");
  CHECK(CycloInt::zeta_pow(7, 1).to_string() == "z");
}
