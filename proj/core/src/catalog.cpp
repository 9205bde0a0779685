#include "magnus/catalog.hpp"

#include <stdexcept>

#include "magnus/crystal.hpp"

namespace magnus {

namespace {

bool parse_long(const std::string& s, long long& out) {
  if (s.empty()) return false;
  out = 0;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
    out = out * 10 + (c - '0');
    if (out > 1'000'000'000) return false;
  }
  return true;
}

FiniteGroup heisenberg(long long p, int cap) {
  if (p < 2 || p * p * p > cap)
    throw std::invalid_argument("heisenberg: p out of range for the table cap");
  int n = static_cast<int>(p * p * p);
  auto idx = [p](long long a, long long b, long long c) {
    return static_cast<int>((a * p + b) * p + c);
  };
  std::vector<std::vector<int>> table(static_cast<std::size_t>(n),
                                      std::vector<int>(static_cast<std::size_t>(n)));
  std::vector<std::string> labels(static_cast<std::size_t>(n));
  for (long long a = 0; a < p; ++a)
    for (long long b = 0; b < p; ++b)
      for (long long c = 0; c < p; ++c) {
        labels[static_cast<std::size_t>(idx(a, b, c))] = "(" + std::to_string(a) + "," +
                                                         std::to_string(b) + "," +
                                                         std::to_string(c) + ")";
        for (long long a2 = 0; a2 < p; ++a2)
          for (long long b2 = 0; b2 < p; ++b2)
            for (long long c2 = 0; c2 < p; ++c2)
              table[static_cast<std::size_t>(idx(a, b, c))]
                   [static_cast<std::size_t>(idx(a2, b2, c2))] =
                       idx((a + a2) % p, (b + b2) % p, (c + c2 + a * b2) % p);
      }
  return FiniteGroup::from_table(std::move(table), {idx(1, 0, 0), idx(0, 1, 0)},
                                 std::move(labels));
}

}  // namespace

FiniteGroup catalog_group(const std::string& name, int cap) {
  if (name.rfind("heis", 0) == 0) {
    long long p;
    if (parse_long(name.substr(4), p)) return heisenberg(p, cap);
  }
  if (name.rfind("quotient:", 0) == 0) {
    std::size_t colon = name.find(':', 9);
    if (colon != std::string::npos) {
      std::string family = name.substr(9, colon - 9);
      long long m;
      if (parse_long(name.substr(colon + 1), m)) {
        if (family == "hw") return CrystalGroup::hw().finite_quotient(m, cap).group;
        if (family == "g3") return CrystalGroup::gp(3).finite_quotient(m, cap).group;
        if (family == "g5") return CrystalGroup::gp(5).finite_quotient(m, cap).group;
        if (family == "g7") return CrystalGroup::gp(7).finite_quotient(m, cap).group;
      }
    }
  }
  if (!name.empty() && name[0] == 'C') {
    std::vector<long long> factors;
    std::size_t pos = 0;
    bool ok = true;
    while (pos < name.size()) {
      if (name[pos] != 'C') {
        ok = false;
        break;
      }
      std::size_t next = name.find('x', pos);
      std::string digits = name.substr(pos + 1, next == std::string::npos
                                                    ? std::string::npos
                                                    : next - pos - 1);
      long long f;
      if (!parse_long(digits, f)) {
        ok = false;
        break;
      }
      factors.push_back(f);
      pos = next == std::string::npos ? name.size() : next + 1;
    }
    if (ok && !factors.empty()) return FiniteGroup::from_cyclic_factors(factors, cap);
  }
  throw std::invalid_argument("unknown catalog group '" + name + "'");
}

std::vector<std::string> catalog_examples() {
  return {"C12", "C4xC3", "C3xC3xC3", "heis3", "quotient:hw:4", "quotient:g3:2"};
}

}  // namespace magnus
