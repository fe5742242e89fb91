#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace steinlight {

struct CheckInfo {
  std::string id;     // "C1" ... "C12"
  std::string group;  // chain, spectral, coupling, bounds
  std::string title;
};

struct CheckResult {
  CheckInfo info;
  bool pass = false;
  double measured = 0.0;   // headline statistic
  double tolerance = 0.0;  // what it is compared against
  double seconds = 0.0;
  std::vector<std::string> details;
};

struct SuiteConfig {
  std::uint64_t seed = 0;
  std::size_t samples = 1'000'000;
  // Check ids or group names; empty runs everything.
  std::vector<std::string> only;
};

struct SuiteResult {
  std::vector<CheckResult> checks;
  bool pass() const;
};

const std::vector<CheckInfo>& registered_checks();
bool selected(const CheckInfo& info, const std::vector<std::string>& only);

SuiteResult run_verification_suite(const SuiteConfig& config,
                                   const std::function<void(const CheckResult&)>& on_result = {});

}  // namespace steinlight
