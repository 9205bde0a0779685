#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "magnus/rational.hpp"

namespace magnus {

// Dense matrix over arbitrary-precision integers.  Vectors act on the left
// (row-vector convention), matching how translation parts transform under
// the holonomy action throughout this project.
class IntMatrix {
 public:
  IntMatrix(size_t rows, size_t cols)
      : rows_(rows), cols_(cols), e_(rows, IntVec(cols)) {}

  static IntMatrix identity(size_t n) {
    IntMatrix m(n, n);
    for (size_t i = 0; i < n; ++i) m.e_[i][i] = 1;
    return m;
  }

  static IntMatrix from_rows(std::vector<IntVec> rows) {
    if (rows.empty()) throw std::invalid_argument("from_rows needs at least one row");
    IntMatrix m(rows.size(), rows[0].size());
    for (const auto& r : rows)
      if (r.size() != m.cols_) throw std::invalid_argument("ragged rows");
    m.e_ = std::move(rows);
    return m;
  }

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  BigInt& at(size_t i, size_t j) { return e_[i][j]; }
  const BigInt& at(size_t i, size_t j) const { return e_[i][j]; }
  const std::vector<IntVec>& row_data() const { return e_; }

  IntMatrix operator*(const IntMatrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("matrix dimension mismatch");
    IntMatrix r(rows_, o.cols_);
    for (size_t i = 0; i < rows_; ++i)
      for (size_t k = 0; k < cols_; ++k) {
        if (e_[i][k] == 0) continue;
        for (size_t j = 0; j < o.cols_; ++j) r.e_[i][j] += e_[i][k] * o.e_[k][j];
      }
    return r;
  }

  IntMatrix operator+(const IntMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw std::invalid_argument("matrix dimension mismatch");
    IntMatrix r(rows_, cols_);
    for (size_t i = 0; i < rows_; ++i)
      for (size_t j = 0; j < cols_; ++j) r.e_[i][j] = e_[i][j] + o.e_[i][j];
    return r;
  }

  IntMatrix operator-(const IntMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw std::invalid_argument("matrix dimension mismatch");
    IntMatrix r(rows_, cols_);
    for (size_t i = 0; i < rows_; ++i)
      for (size_t j = 0; j < cols_; ++j) r.e_[i][j] = e_[i][j] - o.e_[i][j];
    return r;
  }

  // v * M for a row vector v.
  IntVec apply_row(const IntVec& v) const {
    if (v.size() != rows_) throw std::invalid_argument("vector length mismatch");
    IntVec r(cols_);
    for (size_t i = 0; i < rows_; ++i) {
      if (v[i] == 0) continue;
      for (size_t j = 0; j < cols_; ++j) r[j] += v[i] * e_[i][j];
    }
    return r;
  }

  bool operator==(const IntMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
  }
  bool operator!=(const IntMatrix& o) const { return !(*this == o); }

  std::string to_string() const;

 private:
  size_t rows_, cols_;
  std::vector<IntVec> e_;
};

// Exact determinant by fraction-free (Bareiss) elimination.
BigInt determinant(const IntMatrix& m);
BigInt determinant_rows(std::vector<IntVec> rows);

}  // namespace magnus
