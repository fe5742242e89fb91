#include <cmath>

#include "doctest.h"
#include "steinlight/bounds.hpp"
#include "steinlight/chain.hpp"
#include "steinlight/coupling.hpp"
#include "steinlight/montecarlo.hpp"
#include "steinlight/numeric.hpp"

using namespace steinlight;

TEST_CASE("named constants") {
  CHECK(kSmoothingConstantWidth2 == doctest::Approx(2.0 * kSmoothingConstant).epsilon(1e-15));
  CHECK(std::fabs(kNormalDensityAtZero - 0.398942280401432677939946) <= 1e-16);
}

TEST_CASE("generic bound") {
  CHECK(generic_bound({0.0, 1.0, 0.0, 0.0}) == 0.0);
  CHECK(generic_bound({5.0, 2.0, 0.0, 0.0}) == 0.0);

  const BoundTerms t = generic_bound_terms({3.0, 1.5, 0.2, 2.0});
  CHECK(t.term_delta == doctest::Approx(3.0 * 0.2 / 2.25));
  CHECK(t.term_smooth == doctest::Approx(0.82 * (2.0 / 1.5) * (2.0 / 1.5) * 3.0 / 1.5));
  CHECK(t.term_conc == doctest::Approx(2.0 / 1.5));
  CHECK(t.total() == doctest::Approx(t.term_delta + t.term_smooth + t.term_conc));

  double previous = INFINITY;
  for (double sigma = 0.5; sigma < 50.0; sigma *= 1.3) {
    const double b = generic_bound({10.0, sigma, 0.3, 2.0});
    CHECK(b < previous);
    previous = b;
  }
  CHECK(generic_bound({10.0, 2.0, 0.4, 2.0}) > generic_bound({10.0, 2.0, 0.3, 2.0}));
  CHECK_THROWS(generic_bound({1.0, 0.0, 0.1, 1.0}));
  CHECK_THROWS(generic_bound({1.0, -1.0, 0.1, 1.0}));
}

TEST_CASE("even bound") {
  const BoundReport r = even_bound(6);
  const double s2 = mean_var_formula(SwitchPattern::standard(6)).variance;
  const double s = std::sqrt(s2);
  const double hand = 6.0 / (2.0 * s2) * delta0_bound(6) + 1.64 * 6.0 / (s2 * s) + 2.0 / s;
  CHECK(r.total == doctest::Approx(hand).epsilon(1e-14));
  CHECK(r.total == doctest::Approx(7.601990893263447).epsilon(1e-14));
  CHECK(r.parity == Parity::Even);
  CHECK(r.total == doctest::Approx(generic_bound({3.0, s, delta0_bound(6), 2.0})).epsilon(1e-14));
  CHECK(!r.ks_exact);
  CHECK(!r.certified());

  double previous = INFINITY;
  for (int n = 6; n <= 2000; n += 2) {
    const double b = even_bound(n).total;
    CHECK(b < previous);
    previous = b;
  }
  const double scaled = even_bound(10000).total * std::sqrt(10000.0);
  CHECK(scaled >= 17.0);
  CHECK(scaled <= 19.0);
  CHECK_THROWS(even_bound(4));
  CHECK_THROWS(even_bound(7));
}

TEST_CASE("odd bound") {
  const BoundReport r = odd_bound(7);
  CHECK(r.parity == Parity::Odd);
  CHECK(r.delta_bar == doctest::Approx(0.439402839912895919).epsilon(1e-14));
  CHECK(r.sigma2 == doctest::Approx(v_mean_var(7).variance));
  const double s = std::sqrt(r.sigma2);
  CHECK(r.term_conc == doctest::Approx(2.0 / s * (1.0 + 1.0 / std::sqrt(2.0 * M_PI))).epsilon(1e-14));
  // The odd form pays for smoothing V, so it sits above the even form at the same variance.
  const double even_form = 7.0 / (2.0 * r.sigma2) * r.delta_bar + 1.64 * 7.0 / (r.sigma2 * s) + 2.0 / s;
  CHECK(r.total > even_form);

  const double scaled = odd_bound(10001).total * std::sqrt(10001.0);
  CHECK(scaled >= 17.0);
  CHECK(scaled <= 21.0);
  CHECK_THROWS(odd_bound(5));
  CHECK_THROWS(odd_bound(8));
}

TEST_CASE("certified bounds") {
  for (int n : {6, 7, 8, 9, 50, 51, 200, 201}) {
    const BoundReport r = certify(n);
    REQUIRE(r.ks_exact);
    CHECK(r.certified());
    CHECK(r.total == doctest::Approx(r.term_delta + r.term_smooth + r.term_conc).epsilon(1e-15));
    CHECK(*r.ks_exact > 0.0);
  }
  CHECK_THROWS(certify(4));
  CHECK(to_string(Parity::Even) == "even");
  CHECK(to_string(Parity::Odd) == "odd");
}

TEST_CASE("generic bound with a sampled conditional-variance root dominates the distance") {
  const int n = 10;
  const SampleStats u = sample_stats(sample_u_n(n, 100000, 17, "unit.bound_delta"));
  const double delta = 2.0 * std::sqrt(u.variance);
  const Moments mv = mean_var_formula(SwitchPattern::standard(n));
  const double sigma = std::sqrt(mv.variance);
  const double ks = kolmogorov_distance(exact_pmf(SwitchPattern::standard(n)), mv.mean, sigma);
  CHECK(generic_bound({mv.mean, sigma, delta, 2.0}) >= ks);
}
