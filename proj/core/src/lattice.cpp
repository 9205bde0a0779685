#include "magnus/lattice.hpp"

#include <sstream>

namespace magnus {

std::vector<IntVec> hnf_rows(const std::vector<IntVec>& generators, size_t ambient_rank) {
  for (const auto& g : generators)
    if (g.size() != ambient_rank)
      throw std::invalid_argument("generator length does not match ambient rank");

  bool small = true;
  for (const auto& g : generators)
    for (const auto& x : g)
      if (!fits_i64(x)) {
        small = false;
        break;
      }
  if (small) {
    try {
      std::vector<std::vector<CheckedI64>> rows(generators.size());
      for (size_t i = 0; i < generators.size(); ++i) {
        rows[i].reserve(ambient_rank);
        for (const auto& x : generators[i]) rows[i].push_back(to_i64(x));
      }
      detail::hnf_inplace(rows, ambient_rank);
      std::vector<IntVec> out(rows.size());
      for (size_t i = 0; i < rows.size(); ++i) {
        out[i].reserve(ambient_rank);
        for (auto x : rows[i]) out[i].push_back(to_big(x));
      }
      return out;
    } catch (const std::overflow_error&) {
      // fall through to arbitrary precision
    }
  }
  std::vector<IntVec> rows = generators;
  detail::hnf_inplace(rows, ambient_rank);
  return rows;
}

Lattice::Lattice(size_t ambient_rank, const std::vector<IntVec>& generators)
    : n_(ambient_rank), rows_(hnf_rows(generators, ambient_rank)) {
  pivots_.reserve(rows_.size());
  for (const auto& r : rows_) {
    size_t p = 0;
    while (p < n_ && r[p] == 0) ++p;
    pivots_.push_back(p);
  }
}

Lattice Lattice::full(size_t n) {
  std::vector<IntVec> rows(n, IntVec(n));
  for (size_t i = 0; i < n; ++i) rows[i][i] = 1;
  return Lattice(n, rows);
}

bool Lattice::contains(const IntVec& v) const {
  if (v.size() != n_) throw std::invalid_argument("vector length does not match ambient rank");
  IntVec w = v;
  for (size_t k = 0; k < rows_.size(); ++k) {
    const size_t p = pivots_[k];
    if (w[p] == 0) continue;
    if (w[p] % rows_[k][p] != 0) return false;
    BigInt q = w[p] / rows_[k][p];
    for (size_t j = p; j < n_; ++j) w[j] -= q * rows_[k][j];
  }
  for (const auto& x : w)
    if (x != 0) return false;
  return true;
}

bool Lattice::contains_lattice(const Lattice& o) const {
  if (n_ != o.n_) throw std::invalid_argument("ambient rank mismatch");
  for (const auto& r : o.rows_)
    if (!contains(r)) return false;
  return true;
}

IntVec Lattice::reduce(IntVec v) const {
  if (v.size() != n_) throw std::invalid_argument("vector length does not match ambient rank");
  for (size_t k = 0; k < rows_.size(); ++k) {
    const size_t p = pivots_[k];
    BigInt q = detail::floordiv(v[p], rows_[k][p]);
    if (q == 0) continue;
    for (size_t j = p; j < n_; ++j) v[j] -= q * rows_[k][j];
  }
  return v;
}

Lattice Lattice::operator+(const Lattice& o) const {
  if (n_ != o.n_) throw std::invalid_argument("ambient rank mismatch");
  std::vector<IntVec> gens = rows_;
  gens.insert(gens.end(), o.rows_.begin(), o.rows_.end());
  return Lattice(n_, gens);
}

std::optional<BigInt> Lattice::index_in(const Lattice& super) const {
  if (n_ != super.n_) throw std::invalid_argument("ambient rank mismatch");
  // Coordinates of each basis row of this with respect to super's basis;
  // existence of integer coordinates is exactly the containment check.
  std::vector<IntVec> coords(rows_.size(), IntVec(super.rows_.size()));
  for (size_t i = 0; i < rows_.size(); ++i) {
    IntVec w = rows_[i];
    for (size_t k = 0; k < super.rows_.size(); ++k) {
      const size_t p = super.pivots_[k];
      if (w[p] == 0) continue;
      if (w[p] % super.rows_[k][p] != 0)
        throw std::invalid_argument("not a sublattice");
      BigInt q = w[p] / super.rows_[k][p];
      coords[i][k] = q;
      for (size_t j = p; j < n_; ++j) w[j] -= q * super.rows_[k][j];
    }
    for (const auto& x : w)
      if (x != 0) throw std::invalid_argument("not a sublattice");
  }
  if (rank() < super.rank()) return std::nullopt;
  BigInt d = determinant_rows(std::move(coords));
  return d < 0 ? -d : d;
}

std::string Lattice::to_string() const {
  std::ostringstream os;
  os << "[";
  for (size_t i = 0; i < rows_.size(); ++i) {
    os << (i ? "; " : "") << "(";
    for (size_t j = 0; j < n_; ++j) os << (j ? "," : "") << rows_[i][j];
    os << ")";
  }
  os << "]";
  return os.str();
}

}  // namespace magnus
