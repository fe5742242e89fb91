// Runs the acceptance criteria and prints one PASS/FAIL line per criterion.
// Usage: acceptance [--only ID|GROUP]... [--seed N]

#include <cstdio>
#include <cstdlib>
#include <string>

#include "steinlight/rng.hpp"
#include "steinlight/suite.hpp"

int main(int argc, char** argv) {
  steinlight::SuiteConfig cfg;
  cfg.seed = steinlight::default_seed();
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--only" && i + 1 < argc) {
      cfg.only.emplace_back(argv[++i]);
    } else if (arg == "--seed" && i + 1 < argc) {
      cfg.seed = std::strtoull(argv[++i], nullptr, 10);
    } else {
      std::fprintf(stderr, "usage: acceptance [--only ID|GROUP]... [--seed N]\n");
      return 2;
    }
  }

  const auto result = steinlight::run_verification_suite(cfg, [](const steinlight::CheckResult& r) {
    std::printf("[%s] %-4s %-55s measured=%.6g tol=%.6g (%.2f s)\n", r.pass ? "PASS" : "FAIL", r.info.id.c_str(),
                r.info.title.c_str(), r.measured, r.tolerance, r.seconds);
    for (const auto& d : r.details) std::printf("         %s\n", d.c_str());
    std::fflush(stdout);
  });
  if (result.checks.empty()) {
    std::fprintf(stderr, "no check matches the selection\n");
    return 2;
  }
  int failed = 0;
  for (const auto& c : result.checks) failed += c.pass ? 0 : 1;
  std::printf("%zu criteria, %d failed\n", result.checks.size(), failed);
  return failed == 0 ? 0 : 1;
}
