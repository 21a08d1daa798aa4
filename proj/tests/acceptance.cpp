// Acceptance suite: one PASS/FAIL line per criterion, then the detailed report.
#include <cstdio>
#include <cstdlib>
#include <string>

#include "polyrellich/acceptance.hpp"

int main(int argc, char** argv) {
  namespace acc = polyrellich::acceptance;
  acc::Options opt;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--quick") opt.quick = true;
    else if (a == "--seed" && i + 1 < argc) opt.seed = std::strtoull(argv[++i], nullptr, 10);
    else {
      std::fprintf(stderr, "usage: acceptance [--quick] [--seed N]\n");
      return 2;
    }
  }
  const auto results = acc::run_all(opt);
  bool all = true;
  for (const auto& r : results) {
    all = all && r.pass;
    std::printf("criterion %2d: %s  %s (%.2f s)\n", r.id, r.pass ? "PASS" : "FAIL", r.name.c_str(), r.seconds);
  }
  std::printf("\n%s", acc::format_report(results).c_str());
  std::fflush(stdout);
  return all ? 0 : 1;
}
