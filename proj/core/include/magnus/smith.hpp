#pragma once

#include <string>
#include <vector>

#include "magnus/intmatrix.hpp"
#include "magnus/rational.hpp"

namespace magnus {

// Isomorphism type of a finitely generated abelian group:
// C_{d1} x C_{d2} x ... x Z^free_rank with d1 | d2 | ..., every di > 1.
struct AbelianInvariants {
  std::vector<BigInt> torsion;
  size_t free_rank = 0;

  bool operator==(const AbelianInvariants& o) const {
    return torsion == o.torsion && free_rank == o.free_rank;
  }
  bool operator!=(const AbelianInvariants& o) const { return !(*this == o); }

  bool is_trivial() const { return torsion.empty() && free_rank == 0; }
  bool is_finite() const { return free_rank == 0; }

  // 0 stands for infinite order.
  BigInt order() const {
    if (free_rank > 0) return 0;
    BigInt n = 1;
    for (const auto& d : torsion) n *= d;
    return n;
  }

  std::string to_string() const;
};

// Invariant factors of the integer matrix m (full diagonal, 1s included,
// divisibility chain d1 | d2 | ...).
std::vector<BigInt> smith_diagonal(const IntMatrix& m);

// Cokernel Z^cols / rowspace(m), i.e. the abelian group presented by taking
// the columns as generators and the rows as relations.
AbelianInvariants smith(const IntMatrix& m);

}  // namespace magnus
