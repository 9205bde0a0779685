#include "magnus/smith.hpp"

#include <sstream>

namespace magnus {

namespace {

BigInt abs_big(const BigInt& x) { return x < 0 ? -x : x; }

}  // namespace

std::vector<BigInt> smith_diagonal(const IntMatrix& mat) {
  std::vector<IntVec> m = mat.row_data();
  const size_t R = mat.rows(), C = mat.cols();
  std::vector<BigInt> diag;
  size_t t = 0;
  while (t < R && t < C) {
    // smallest nonzero entry of the trailing submatrix to (t,t)
    size_t bi = R, bj = C;
    for (size_t i = t; i < R; ++i)
      for (size_t j = t; j < C; ++j) {
        if (m[i][j] == 0) continue;
        if (bi == R || abs_big(m[i][j]) < abs_big(m[bi][bj])) {
          bi = i;
          bj = j;
        }
      }
    if (bi == R) break;
    std::swap(m[t], m[bi]);
    if (bj != t)
      for (size_t i = 0; i < R; ++i) std::swap(m[i][t], m[i][bj]);

    bool again = false;
    for (size_t i = t + 1; i < R; ++i) {
      if (m[i][t] == 0) continue;
      BigInt q = m[i][t] / m[t][t];
      for (size_t j = t; j < C; ++j) m[i][j] -= q * m[t][j];
      if (m[i][t] != 0) again = true;
    }
    for (size_t j = t + 1; j < C; ++j) {
      if (m[t][j] == 0) continue;
      BigInt q = m[t][j] / m[t][t];
      for (size_t i = t; i < R; ++i) m[i][j] -= q * m[i][t];
      if (m[t][j] != 0) again = true;
    }
    if (again) continue;

    // pivot must divide the rest of the submatrix for the invariant chain
    bool divides = true;
    for (size_t i = t + 1; i < R && divides; ++i)
      for (size_t j = t + 1; j < C && divides; ++j)
        if (m[i][j] % m[t][t] != 0) {
          for (size_t k = t; k < C; ++k) m[t][k] += m[i][k];
          divides = false;
        }
    if (!divides) continue;

    if (m[t][t] < 0)
      for (size_t j = t; j < C; ++j) m[t][j] = -m[t][j];
    diag.push_back(m[t][t]);
    ++t;
  }
  return diag;
}

AbelianInvariants smith(const IntMatrix& m) {
  std::vector<BigInt> diag = smith_diagonal(m);
  AbelianInvariants inv;
  for (auto& d : diag)
    if (d > 1) inv.torsion.push_back(std::move(d));
  inv.free_rank = m.cols() - diag.size();
  return inv;
}

std::string AbelianInvariants::to_string() const {
  if (is_trivial()) return "1";
  std::ostringstream os;
  bool first = true;
  for (const auto& d : torsion) {
    os << (first ? "" : " x ") << "C" << d;
    first = false;
  }
  if (free_rank > 0) {
    os << (first ? "" : " x ") << "Z";
    if (free_rank > 1) os << "^" << free_rank;
  }
  return os.str();
}

}  // namespace magnus
