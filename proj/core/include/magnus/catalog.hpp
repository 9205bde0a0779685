#pragma once

#include <string>
#include <vector>

#include "magnus/finite_group.hpp"

namespace magnus {

/**
 * Cayley-table groups by name:
 *   "C12", "C4xC3", ...      cyclic factors, x-separated
 *   "heis3", "heis5", ...    upper unitriangular 3x3 matrices over F_p
 *   "quotient:hw:4"          crystallographic group modulo m times its
 *   "quotient:g3:3"          translation lattice
 * Unknown names throw std::invalid_argument; oversized tables propagate the
 * cap error of the underlying constructor.
 */
FiniteGroup catalog_group(const std::string& name, int cap = FiniteGroup::kDefaultCap);

// Names accepted by catalog_group, for usage messages.
std::vector<std::string> catalog_examples();

}  // namespace magnus
