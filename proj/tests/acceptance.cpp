#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "dynatomic/acceptance.hpp"

// One PASS/FAIL line per criterion; optional arguments select criteria.
int main(int argc, char** argv) {
  std::vector<int> ids;
  for (int i = 1; i < argc; ++i) ids.push_back(std::atoi(argv[i]));
  bool all = true;
  for (const auto& r : dynatomic::run_acceptance({}, ids)) {
    std::printf("%s criterion %2d: %s (%.2f s of %.0f s)\n", r.pass() ? "PASS" : "FAIL", r.id, r.title.c_str(),
                r.seconds, r.budget);
    for (const auto& m : r.measurements) std::printf("       %s\n", m.c_str());
    for (const auto& f : r.failures) std::printf("       failed: %s\n", f.c_str());
    std::fflush(stdout);
    all = all && r.pass();
  }
  return all ? 0 : 1;
}
