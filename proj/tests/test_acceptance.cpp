// End-to-end verification: one line per check, nonzero exit on any failure.
#include <cstdio>

#include <magnus/verify.hpp>

int main() {
  int failures = 0;
  for (const auto& r : magnus::run_verification()) {
    std::printf("%s: %s - %s\n", r.pass ? "PASS" : "FAIL", r.name.c_str(),
                r.detail.c_str());
    if (!r.pass) ++failures;
  }
  std::printf("%d check(s) failed\n", failures);
  return failures;
}
