#include <cstdlib>
#include <set>
#include <sstream>

#include "doctest.h"
#include "steinlight/chain.hpp"
#include "steinlight/csv.hpp"
#include "steinlight/oracles.hpp"
#include "steinlight/rng.hpp"
#include "steinlight/suite.hpp"

using namespace steinlight;

TEST_CASE("csv formatting") {
  CHECK(csv_real(0.125) == "0.125");
  CHECK(csv_real(1.0) == "1");
  CHECK(csv_real(0.1) == "0.10000000000000001");
  CHECK(csv_real(-2.5e-300) == "-2.5e-300");
  CHECK(csv_real(NAN) == "nan");
  CHECK(csv_real(-INFINITY) == "-inf");
  std::ostringstream out;
  write_csv_row(out, {"k", "prob"});
  write_csv_row(out, {"2", csv_real(0.75)});
  CHECK(out.str() == "k,prob\n2,0.75\n");
}

TEST_CASE("random streams") {
  Rng a(1, stream_id("x"));
  Rng b(1, stream_id("x"));
  for (int i = 0; i < 100; ++i) CHECK(a.uniform_int(0, 1000000) == b.uniform_int(0, 1000000));
  CHECK(stream_id("x") != stream_id("y"));
  CHECK(stream_id("x", 0) != stream_id("x", 1));
  CHECK(stream_id("") == 14695981039346656037ull);  // FNV-1a offset basis
  Rng c(2, stream_id("x"));
  Rng d(1, stream_id("x"));
  int equal = 0;
  for (int i = 0; i < 100; ++i) equal += c.uniform_int(0, 1000000) == d.uniform_int(0, 1000000);
  CHECK(equal < 5);
}

TEST_CASE("seed from the environment") {
  ::unsetenv("STEINLIGHT_SEED");
  CHECK(default_seed(5) == 5);
  ::setenv("STEINLIGHT_SEED", "1234", 1);
  CHECK(default_seed(5) == 1234);
  ::setenv("STEINLIGHT_SEED", "not-a-number", 1);
  CHECK(default_seed(5) == 5);
  ::unsetenv("STEINLIGHT_SEED");
}

TEST_CASE("check registry") {
  const auto& checks = registered_checks();
  CHECK(checks.size() == 12);
  std::set<std::string> ids;
  for (const auto& c : checks) ids.insert(c.id);
  CHECK(ids.size() == 12);
  CHECK(ids.count("C1") == 1);
  CHECK(ids.count("C12") == 1);

  int spectral = 0;
  for (const auto& c : checks) spectral += selected(c, {"spectral"});
  CHECK(spectral == 3);
  for (const auto& c : checks) {
    CHECK(selected(c, {}));
    CHECK(selected(c, {c.id}) == true);
  }
  CHECK(!selected(checks.front(), {"nothing"}));
}

TEST_CASE("suite runs a selected check") {
  SuiteConfig config;
  config.seed = 1;
  config.only = {"C3"};
  int callbacks = 0;
  const SuiteResult r = run_verification_suite(config, [&](const CheckResult&) { ++callbacks; });
  REQUIRE(r.checks.size() == 1);
  CHECK(callbacks == 1);
  CHECK(r.checks[0].info.id == "C3");
  CHECK(r.checks[0].pass);
  CHECK(r.pass());
}

TEST_CASE("enumeration oracle") {
  const SwitchPattern p = SwitchPattern::standard(4);
  CHECK(oracle::configuration_count(p) == 96);
  const oracle::RationalPmf law = oracle::enumerate_pmf(p);
  CHECK(law[0] == oracle::Rational(1, 8));
  CHECK(law[2] == oracle::Rational(3, 4));
  CHECK(law[4] == oracle::Rational(1, 8));
  CHECK(oracle::mean(law) == 2);
  CHECK(oracle::variance(law) == 1);
}
