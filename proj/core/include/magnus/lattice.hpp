#pragma once

#include <optional>
#include <string>
#include <vector>

#include "magnus/checked_int.hpp"
#include "magnus/intmatrix.hpp"
#include "magnus/rational.hpp"

namespace magnus {

namespace detail {

template <class S>
S floordiv(const S& a, const S& b) {
  S q = a / b;
  if (a % b != S(0) && ((a < S(0)) != (b < S(0)))) q = q - S(1);
  return q;
}

// In-place row-style Hermite normal form: pivots positive and strictly
// right-moving, entries above each pivot reduced into [0, pivot), zero rows
// dropped.  The form is the unique canonical basis of the row span.
template <class S>
void hnf_inplace(std::vector<std::vector<S>>& rows, size_t n) {
  size_t r = 0;
  for (size_t c = 0; c < n && r < rows.size(); ++c) {
    // Euclidean elimination below position r in column c.
    while (true) {
      size_t best = rows.size();
      for (size_t i = r; i < rows.size(); ++i) {
        if (rows[i][c] == S(0)) continue;
        if (best == rows.size()) {
          best = i;
          continue;
        }
        S a = rows[i][c] < S(0) ? -rows[i][c] : rows[i][c];
        S b = rows[best][c] < S(0) ? -rows[best][c] : rows[best][c];
        if (a < b) best = i;
      }
      if (best == rows.size()) break;
      std::swap(rows[r], rows[best]);
      bool clean = true;
      for (size_t i = r + 1; i < rows.size(); ++i) {
        if (rows[i][c] == S(0)) continue;
        S q = rows[i][c] / rows[r][c];
        if (q != S(0))
          for (size_t j = c; j < n; ++j) rows[i][j] = rows[i][j] - q * rows[r][j];
        if (rows[i][c] != S(0)) clean = false;
      }
      if (clean) break;
    }
    if (rows[r][c] == S(0)) continue;
    if (rows[r][c] < S(0))
      for (size_t j = c; j < n; ++j) rows[r][j] = -rows[r][j];
    for (size_t i = 0; i < r; ++i) {
      S q = floordiv(rows[i][c], rows[r][c]);
      if (q != S(0))
        for (size_t j = c; j < n; ++j) rows[i][j] = rows[i][j] - q * rows[r][j];
    }
    ++r;
  }
  rows.resize(r);
}

}  // namespace detail

// Canonical HNF of the sublattice generated by the given vectors.  Runs on
// checked int64 and falls back to arbitrary precision on overflow.
std::vector<IntVec> hnf_rows(const std::vector<IntVec>& generators, size_t ambient_rank);

/**
 * Sublattice of Z^n held in canonical row HNF.  Canonicity makes equality a
 * structural comparison and coset representatives unique.  Rank-deficient
 * lattices (including the zero lattice) are first-class values.
 */
class Lattice {
 public:
  Lattice(size_t ambient_rank, const std::vector<IntVec>& generators);

  static Lattice zero(size_t n) { return Lattice(n, {}); }
  static Lattice full(size_t n);

  size_t ambient_rank() const { return n_; }
  size_t rank() const { return rows_.size(); }
  bool is_zero() const { return rows_.empty(); }
  const std::vector<IntVec>& basis() const { return rows_; }

  bool contains(const IntVec& v) const;
  bool contains_lattice(const Lattice& o) const;

  // Unique representative of v + L with every pivot coordinate reduced into
  // [0, pivot).  reduce(v) == 0 iff v lies in the lattice.
  IntVec reduce(IntVec v) const;

  Lattice operator+(const Lattice& o) const;

  bool operator==(const Lattice& o) const { return n_ == o.n_ && rows_ == o.rows_; }
  bool operator!=(const Lattice& o) const { return !(*this == o); }

  // |super / this|; nullopt encodes an infinite index (rank deficit).
  // Throws std::invalid_argument when this is not contained in super.
  std::optional<BigInt> index_in(const Lattice& super) const;

  std::string to_string() const;

 private:
  size_t n_;
  std::vector<IntVec> rows_;
  std::vector<size_t> pivots_;
};

}  // namespace magnus
