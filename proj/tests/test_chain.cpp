#include <algorithm>
#include <cmath>
#include <map>

#include "doctest.h"
#include "steinlight/chain.hpp"
#include "steinlight/oracles.hpp"
#include "steinlight/spectral.hpp"

using namespace steinlight;

namespace {

Pmf pmf_of(std::vector<double> m) { return Pmf{std::move(m)}; }

}  // namespace

TEST_CASE("pattern constructors produce the expected stage vectors") {
  CHECK(SwitchPattern::standard(4).sizes() == std::vector<int>{1, 2, 3, 4});
  CHECK(SwitchPattern::standard(5).without(2).sizes() == std::vector<int>{1, 3, 4, 5});
  CHECK(SwitchPattern::standard(5).without(4, 2).sizes() == std::vector<int>{1, 3, 5});
  CHECK(SwitchPattern::shifted(7, 0, 1) == SwitchPattern::standard(7));
  CHECK(SwitchPattern::shifted(7, 1, 0).sizes() == std::vector<int>{1, 2, 4, 3, 5, 6, 7});
  CHECK(SwitchPattern::shifted(7, 0, 0).sizes() == std::vector<int>{1, 2, 3, 3, 5, 6, 7});
  CHECK(SwitchPattern::shifted(3, 1, 1).sizes() == std::vector<int>{2, 2, 3});
  CHECK(SwitchPattern::standard(6).size(3) == 3);

  CHECK_THROWS(SwitchPattern(3, {4}));
  CHECK_THROWS(SwitchPattern(3, {-1}));
  CHECK_THROWS(SwitchPattern(0, {}));
  CHECK_THROWS(SwitchPattern::shifted(6, 0, 0));
  CHECK_THROWS(SwitchPattern::standard(4).without(5));
  CHECK_THROWS(SwitchPattern::standard(4).without(2, 2));
}

TEST_CASE("sampled matrices respect the pattern") {
  Rng rng(7, 0);
  SUBCASE("n=2 standard pattern") {
    for (int t = 0; t < 100; ++t) {
      const SwitchMatrix m = sample_switch_matrix(SwitchPattern::standard(2), rng);
      CHECK(m.row_sum(0) == 1);
      CHECK(m.at(1, 0) == 1);
      CHECK(m.at(1, 1) == 1);
    }
  }
  SUBCASE("all-zero stages") {
    const SwitchMatrix m = sample_switch_matrix(SwitchPattern(3, {0, 0}), rng);
    CHECK(count_on(m) == 0);
    CHECK(m.row_sum(0) + m.row_sum(1) == 0);
  }
  SUBCASE("row sums over many draws") {
    const SwitchPattern p = SwitchPattern::standard(4);
    SwitchMatrix m;
    bool ok = true;
    for (int t = 0; t < 10000; ++t) {
      sample_switch_matrix(p, rng, m);
      ok = ok && m.matches(p);
    }
    CHECK(ok);
  }
}

TEST_CASE("each size-s subset is equally likely") {
  Rng rng(11, 3);
  const SwitchPattern p(6, {2, 4});
  std::map<std::pair<int, int>, int> counts;
  const int draws = 150000;
  SwitchMatrix m;
  for (int t = 0; t < draws; ++t) {
    sample_switch_matrix(p, rng, m);
    int a = 0;
    int b = 0;
    for (int j = 0; j < 6; ++j) {
      a |= m.at(0, j) << j;
      b |= m.at(1, j) << j;
    }
    ++counts[{0, a}];
    ++counts[{1, b}];
  }
  CHECK(counts.size() == 30);  // 15 subsets per row
  const double expected = draws / 15.0;
  double chi2 = 0.0;
  for (const auto& [key, c] : counts) chi2 += (c - expected) * (c - expected) / expected;
  // 28 degrees of freedom; the 1e-6 upper quantile is about 74.
  CHECK(chi2 < 74.0);
}

TEST_CASE("sampling is deterministic in (seed, stream)") {
  const SwitchPattern p = SwitchPattern::standard(9);
  Rng a(42, 5);
  Rng b(42, 5);
  Rng c(42, 6);
  int same = 0;
  int diff = 0;
  for (int t = 0; t < 50; ++t) {
    const SwitchMatrix ma = sample_switch_matrix(p, a);
    const SwitchMatrix mb = sample_switch_matrix(p, b);
    const SwitchMatrix mc = sample_switch_matrix(p, c);
    bool eq = true;
    bool eqc = true;
    for (int r = 0; r < 9; ++r)
      for (int j = 0; j < 9; ++j) {
        eq = eq && ma.at(r, j) == mb.at(r, j);
        eqc = eqc && ma.at(r, j) == mc.at(r, j);
      }
    same += eq;
    diff += !eqc;
  }
  CHECK(same == 50);
  CHECK(diff > 40);
}

TEST_CASE("count_on") {
  SwitchMatrix m(2, 2);
  m.at(0, 0) = 1;
  m.at(1, 0) = 1;
  m.at(1, 1) = 1;
  CHECK(count_on(m) == 1);
  CHECK(count_on(SwitchMatrix(5, 3)) == 0);
}

TEST_CASE("exact pmf examples") {
  const Pmf two = exact_pmf(SwitchPattern::standard(2));
  CHECK(two.mass[1] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(two.mass[0] == 0.0);

  const Pmf four = exact_pmf(SwitchPattern::standard(4));
  const std::vector<double> expected{0.125, 0.0, 0.75, 0.0, 0.125};
  for (std::size_t k = 0; k < 5; ++k) CHECK(four.mass[k] == doctest::Approx(expected[k]).epsilon(1e-15));

  for (int n : {1, 5, 17, 60}) {
    const Pmf all = exact_pmf(SwitchPattern(n, {n}));
    CHECK(all.mass[static_cast<std::size_t>(n)] == doctest::Approx(1.0).epsilon(1e-15));
  }
}

TEST_CASE("exact pmf is a probability law up to n=200") {
  for (int n : {50, 101, 200}) {
    const Pmf p = exact_pmf(SwitchPattern::standard(n));
    CHECK(std::fabs(p.total() - 1.0) <= 1e-12);
    CHECK(*std::min_element(p.mass.begin(), p.mass.end()) >= 0.0);
  }
}

TEST_CASE("exact pmf equals exhaustive enumeration on random small patterns") {
  Rng rng(99, 1);
  double worst = 0.0;
  for (int trial = 0; trial < 60; ++trial) {
    const int n = rng.uniform_int(1, 6);
    const int k = rng.uniform_int(0, 5);
    std::vector<int> sizes(static_cast<std::size_t>(k));
    for (int& s : sizes) s = rng.uniform_int(0, n);
    const SwitchPattern p(n, sizes);
    if (oracle::configuration_count(p) > 1'000'000) continue;
    worst = std::max(worst, total_variation(exact_pmf(p), oracle::to_pmf(oracle::enumerate_pmf(p))));
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("moment formula examples") {
  const Moments m4 = mean_var_formula(SwitchPattern::standard(4));
  CHECK(m4.mean == 2.0);
  CHECK(m4.variance == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(mean_var_formula(SwitchPattern::standard(2)).variance == doctest::Approx(0.0).epsilon(1e-15));
  // lambda_{6,2,n} = -1/10125
  const double l = -1.0 / 10125.0;
  CHECK(mean_var_formula(SwitchPattern::standard(6)).variance == doctest::Approx(1.5 * (1 - l) + 9.0 * l).epsilon(1e-14));
  CHECK(mean_var_formula(SwitchPattern::standard(6)).variance == doctest::Approx(1.4992593).epsilon(1e-7));
}

TEST_CASE("moment formulas match the exact pmf on random patterns") {
  Rng rng(5, 2);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = rng.uniform_int(2, 200);
    const int k = rng.uniform_int(1, 25);
    std::vector<int> sizes(static_cast<std::size_t>(k));
    for (int& s : sizes) s = rng.uniform_int(0, n);
    const SwitchPattern p(n, sizes);
    const Moments dp = pmf_moments(exact_pmf(p));
    const Moments cf = mean_var_formula(p);
    CHECK(std::fabs(dp.mean - cf.mean) <= 1e-9 * std::max(1.0, cf.mean));
    CHECK(std::fabs(dp.variance - cf.variance) <= 1e-9 * std::max(1.0, cf.variance));
  }
  for (int n = 2; n <= 200; n += 2) CHECK(mean_var_formula(SwitchPattern::standard(n)).mean == n / 2.0);
}

TEST_CASE("symmetrized count moments") {
  const Moments v3 = v_mean_var(3);
  CHECK(v3.mean == 1.5);
  CHECK(v3.variance == doctest::Approx(11.0 / 12.0).epsilon(1e-15));
  CHECK(v_mean_var(7).mean == 3.5);
  CHECK_THROWS(v_mean_var(8));
  CHECK_THROWS(v_mean_var(1));

  const Pmf law3 = v_exact_pmf(3);
  const std::vector<double> expected{1.0 / 6, 1.0 / 3, 1.0 / 3, 1.0 / 6};
  for (std::size_t k = 0; k < 4; ++k) CHECK(law3.mass[k] == doctest::Approx(expected[k]).epsilon(1e-15));
  for (int n = 3; n <= 99; n += 2) {
    const Moments dp = pmf_moments(v_exact_pmf(n));
    const Moments cf = v_mean_var(n);
    CHECK(std::fabs(dp.mean - cf.mean) <= 1e-9 * cf.mean);
    CHECK(std::fabs(dp.variance - cf.variance) <= 1e-9 * cf.variance);
  }
}

TEST_CASE("size-biased pmf") {
  const Pmf sb = size_biased_pmf(pmf_of({0.0, 0.5, 0.0, 0.5}));
  CHECK(sb.mass[1] == doctest::Approx(0.25));
  CHECK(sb.mass[3] == doctest::Approx(0.75));

  const Pmf four = size_biased_pmf(exact_pmf(SwitchPattern::standard(4)));
  CHECK(four.mass[2] == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(four.mass[4] == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(four.mass[0] == 0.0);

  const Pmf point = size_biased_pmf(pmf_of({0.0, 0.0, 1.0}));
  CHECK(point.mass[2] == doctest::Approx(1.0));

  CHECK_THROWS(size_biased_pmf(pmf_of({1.0, 0.0})));

  for (int n : {9, 30, 121}) {
    const Pmf p = exact_pmf(SwitchPattern::standard(n));
    const Pmf q = size_biased_pmf(p);
    const Moments mp = pmf_moments(p);
    CHECK(std::fabs(q.total() - 1.0) <= 1e-12);
    const double second = mp.variance + mp.mean * mp.mean;
    CHECK(std::fabs(q.mean() - second / mp.mean) <= 1e-12 * q.mean());
  }
}

TEST_CASE("normal cdf") {
  CHECK(normal_cdf(0.0) == 0.5);
  CHECK(std::fabs(normal_cdf(40.0) - 1.0) <= 1e-14);
  CHECK(std::fabs(normal_cdf(-40.0)) <= 1e-14);
  CHECK(std::fabs(normal_cdf(1.96) - 0.975002104851779565863) <= 1e-14);
  CHECK(std::fabs(normal_cdf(-1.0) - 0.158655253931457051415) <= 1e-14);
}

TEST_CASE("kolmogorov distance") {
  CHECK(kolmogorov_distance(pmf_of({1.0}), 0.0, 1.0) == doctest::Approx(0.5));
  CHECK(std::fabs(kolmogorov_distance(pmf_of({0.5, 0.0, 0.5}), 1.0, 1.0) - 0.341344746068542948585) <= 1e-14);
  CHECK(kolmogorov_distance(exact_pmf(SwitchPattern::standard(4)), 2.0, 1.0) == doctest::Approx(0.375).epsilon(1e-14));
  CHECK_THROWS(kolmogorov_distance(pmf_of({1.0}), 0.0, 0.0));

  SUBCASE("shifting the support and the mean together leaves the distance unchanged") {
    const Pmf p = exact_pmf(SwitchPattern::standard(11));
    const Moments m = pmf_moments(p);
    for (int shift : {1, 4, 9}) {
      Pmf q{std::vector<double>(static_cast<std::size_t>(shift), 0.0)};
      q.mass.insert(q.mass.end(), p.mass.begin(), p.mass.end());
      const double sd = std::sqrt(m.variance);
      CHECK(kolmogorov_distance(q, m.mean + shift, sd) == doctest::Approx(kolmogorov_distance(p, m.mean, sd)).epsilon(1e-13));
    }
  }
  SUBCASE("the sup over atoms dominates a fine grid of z") {
    const Pmf p = exact_pmf(SwitchPattern::standard(9));
    const Moments m = pmf_moments(p);
    const double sd = std::sqrt(m.variance);
    const double ks = kolmogorov_distance(p, m.mean, sd);
    double grid = 0.0;
    for (int t = -4000; t <= 4000; ++t) {
      const double x = m.mean + sd * t / 1000.0;
      double cdf = 0.0;
      for (std::size_t k = 0; k < p.mass.size() && static_cast<double>(k) <= x; ++k) cdf += p.mass[k];
      grid = std::max(grid, std::fabs(cdf - normal_cdf((x - m.mean) / sd)));
    }
    CHECK(grid <= ks + 1e-12);
    CHECK(grid >= ks - 1e-3);
  }
}
