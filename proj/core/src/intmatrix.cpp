#include "magnus/intmatrix.hpp"

#include <sstream>

namespace magnus {

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  for (size_t i = 0; i < rows_; ++i) {
    os << (i ? "\n[" : "[");
    for (size_t j = 0; j < cols_; ++j) os << (j ? " " : "") << e_[i][j];
    os << "]";
  }
  return os.str();
}

BigInt determinant_rows(std::vector<IntVec> m) {
  const size_t n = m.size();
  for (const auto& r : m)
    if (r.size() != n) throw std::invalid_argument("determinant of non-square matrix");
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

BigInt determinant(const IntMatrix& m) { return determinant_rows(m.row_data()); }

}  // namespace magnus
