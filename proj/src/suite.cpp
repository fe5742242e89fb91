#include "steinlight/suite.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <map>

#include "steinlight/bounds.hpp"
#include "steinlight/chain.hpp"
#include "steinlight/coupling.hpp"
#include "steinlight/montecarlo.hpp"
#include "steinlight/numeric.hpp"
#include "steinlight/oracles.hpp"
#include "steinlight/spectral.hpp"

namespace steinlight {

namespace {

std::string fmt(const char* format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof buf, format, args);
  va_end(args);
  return buf;
}

Pmf empirical_pmf(const std::vector<int>& values, int n) {
  std::vector<std::size_t> counts(static_cast<std::size_t>(n) + 1, 0);
  for (int v : values) ++counts[static_cast<std::size_t>(v)];
  Pmf p;
  for (std::size_t c : counts) p.mass.push_back(static_cast<double>(c) / static_cast<double>(values.size()));
  return p;
}

std::string rational_law(const oracle::RationalPmf& p) {
  std::string s = "{";
  bool first = true;
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (p[k] == 0) continue;
    if (!first) s += ", ";
    first = false;
    s += std::to_string(k) + ":" + p[k].str();
  }
  return s + "}";
}

SwitchPattern random_pattern(int n, int max_stages, Rng& rng) {
  const int k = rng.uniform_int(1, max_stages);
  std::vector<int> sizes(static_cast<std::size_t>(k));
  for (int& s : sizes) s = rng.uniform_int(0, n);
  return SwitchPattern(n, std::move(sizes));
}

std::uint64_t check_seed(const SuiteConfig& cfg, const std::string& id) { return cfg.seed ^ stream_id(id); }

// ---- chain -----------------------------------------------------------------

void check_pmf_enumeration(const SuiteConfig& cfg, CheckResult& r) {
  Rng rng(cfg.seed, stream_id("C1"));
  double worst = 0.0;
  int patterns = 0;
  for (int n = 2; n <= 5; ++n) {
    std::vector<SwitchPattern> ps{SwitchPattern::standard(n)};
    while (ps.size() < 6) {
      SwitchPattern p = random_pattern(n, 6, rng);
      if (oracle::configuration_count(p) <= 1'000'000) ps.push_back(std::move(p));
    }
    for (const auto& p : ps) {
      worst = std::max(worst, total_variation(exact_pmf(p), oracle::to_pmf(oracle::enumerate_pmf(p))));
      ++patterns;
    }
  }
  r.measured = worst;
  r.tolerance = 1e-12;
  r.pass = worst <= r.tolerance;
  r.details.push_back(fmt("%d patterns, max TV %.3e", patterns, worst));
}

void check_moments(const SuiteConfig&, CheckResult& r) {
  double worst = 0.0;
  int worst_n = 0;
  bool even_mean_exact = true;
  for (int n = 2; n <= 200; ++n) {
    const SwitchPattern p = SwitchPattern::standard(n);
    const Moments dp = pmf_moments(exact_pmf(p));
    const Moments cf = mean_var_formula(p);
    const double em = std::fabs(dp.mean - cf.mean) / std::max(1.0, std::fabs(cf.mean));
    const double ev = std::fabs(dp.variance - cf.variance) / std::max(1.0, std::fabs(cf.variance));
    if (std::max(em, ev) > worst) {
      worst = std::max(em, ev);
      worst_n = n;
    }
    if (n % 2 == 0 && cf.mean != n / 2.0) even_mean_exact = false;
  }
  r.measured = worst;
  r.tolerance = 1e-9;
  r.pass = worst <= r.tolerance && even_mean_exact;
  r.details.push_back(fmt("max relative error %.3e at n=%d (denominator floored at 1)", worst, worst_n));
  r.details.push_back(std::string("even-n mean equals n/2 exactly: ") + (even_mean_exact ? "yes" : "no"));
}

// ---- coupling ----------------------------------------------------------------

void check_even_exact(const SuiteConfig&, CheckResult& r) {
  const oracle::RationalPmf coupled = oracle::enumerate_even_coupling(4);
  const oracle::RationalPmf biased = oracle::size_biased(oracle::enumerate_pmf(SwitchPattern::standard(4)));
  using oracle::Rational;
  const oracle::RationalPmf expected{Rational(0), Rational(0), Rational(3, 4), Rational(0), Rational(1, 4)};
  r.pass = coupled == biased && coupled == expected;
  r.measured = r.pass ? 0.0 : 1.0;
  r.details.push_back("enumerated X^s law " + rational_law(coupled));
  r.details.push_back("size-biased law    " + rational_law(biased));
}

void check_even_sampled(const SuiteConfig& cfg, CheckResult& r) {
  bool ok = true;
  double worst_tv = 0.0;
  double worst_z = 0.0;
  for (int n : {6, 10, 20}) {
    const CoupledSample s = sample_even_coupling(n, cfg.samples, check_seed(cfg, "C4"), "C4/" + std::to_string(n));
    int lo = 2;
    int hi = 0;
    bool parity_ok = true;
    for (std::size_t i = 0; i < s.y.size(); ++i) {
      const int d = s.ys[i] - s.y[i];
      lo = std::min(lo, d);
      hi = std::max(hi, d);
      if (d % 2 != 0) parity_ok = false;
    }
    const Pmf law = exact_pmf(SwitchPattern::standard(n));
    const double tv = total_variation(empirical_pmf(s.ys, n), size_biased_pmf(law));
    const double mu = law.mean();
    const double c = n / 2.0;
    double zs[3];
    zs[0] = [&] { auto st = sample_stats(size_bias_differences(s, mu, [](int x) { return double(x); })); return std::fabs(st.mean) / st.std_error; }();
    zs[1] = [&] { auto st = sample_stats(size_bias_differences(s, mu, [](int x) { return double(x) * x; })); return std::fabs(st.mean) / st.std_error; }();
    zs[2] = [&] { auto st = sample_stats(size_bias_differences(s, mu, [c](int x) { return x <= c ? 1.0 : 0.0; })); return std::fabs(st.mean) / st.std_error; }();
    const double z = std::max({zs[0], zs[1], zs[2]});
    const bool cell = lo >= 0 && hi <= 2 && parity_ok && tv <= 5e-3 && z <= 4.0;
    ok = ok && cell;
    worst_tv = std::max(worst_tv, tv);
    worst_z = std::max(worst_z, z);
    r.details.push_back(fmt("n=%d: increments in [%d,%d]%s, TV %.2e, |identity|/SE id %.2f sq %.2f thr %.2f", n, lo, hi,
                            parity_ok ? " all even" : " ODD INCREMENT", tv, zs[0], zs[1], zs[2]));
  }
  r.measured = worst_tv;
  r.tolerance = 5e-3;
  r.pass = ok;
}

void check_odd_exact(const SuiteConfig&, CheckResult& r) {
  using oracle::Rational;
  const oracle::OddEnumeration e = oracle::enumerate_odd_coupling(3);
  const Rational mu = oracle::mean(e.v_law);
  const Rational var = oracle::variance(e.v_law);
  const bool law_ok = e.vs_law == oracle::size_biased(e.v_law);
  const Moments cf = v_mean_var(3);
  const bool cf_ok = std::fabs(cf.mean - 1.5) <= 1e-15 && std::fabs(cf.variance - 11.0 / 12.0) <= 1e-15;
  r.pass = mu == Rational(3, 2) && var == Rational(11, 12) && law_ok && cf_ok;
  r.measured = r.pass ? 0.0 : 1.0;
  r.details.push_back("E V = " + mu.str() + ", Var V = " + var.str() + fmt(" (closed form %.17g, %.17g)", cf.mean, cf.variance));
  r.details.push_back("V law   " + rational_law(e.v_law));
  r.details.push_back("V^s law " + rational_law(e.vs_law) + (law_ok ? " = size-biased V law" : " != size-biased V law"));
}

void check_odd_terms(const SuiteConfig& cfg, CheckResult& r) {
  const OddSample s = sample_odd_coupling(7, cfg.samples, check_seed(cfg, "C6"), "C6");
  const DeltaReport d = delta1(7);
  const SampleStats zeta = sample_stats(s.zeta);
  const SampleStats xi = sample_stats(s.xi);
  const double za = std::fabs(zeta.variance - d.var_zeta) / zeta.variance_std_error;
  const double zb = std::fabs(xi.variance - d.var_xi) / xi.variance_std_error;
  r.details.push_back(fmt("n=7 Var(zeta) MC %.6e vs A %.6e (%.2f SE)", zeta.variance, d.var_zeta, za));
  r.details.push_back(fmt("n=7 Var(xi)   MC %.6e vs B %.6e (%.2f SE)", xi.variance, d.var_xi, zb));

  double worst_ratio = 0.0;
  int worst_n = 0;
  for (int n = 7; n <= 199; n += 2) {
    const DeltaReport dn = delta1(n);
    const double ratio = dn.delta / dn.bound;
    if (ratio > worst_ratio) {
      worst_ratio = ratio;
      worst_n = n;
    }
  }
  r.details.push_back(fmt("sqrt(A+4sqrt(AB)+4B)/bound max %.4f at n=%d over odd n in [7,199]", worst_ratio, worst_n));
  r.measured = std::max(za, zb);
  r.tolerance = 3.0;
  r.pass = za <= 3.0 && zb <= 3.0 && worst_ratio <= 1.0;
}

void check_delta0(const SuiteConfig& cfg, CheckResult& r) {
  const std::vector<double> u = sample_u_n(8, cfg.samples, check_seed(cfg, "C7"), "C7");
  const SampleStats st = sample_stats(u);
  const double closed = var_u_closed_form(8);
  const double z = std::fabs(st.variance - closed) / st.variance_std_error;
  const bool mc_ok = z <= 3.0;
  r.details.push_back(fmt("n=8 Var(u_n) MC %.6e vs closed form %.6e (%.2f SE): %s", st.variance, closed, z,
                          mc_ok ? "ok" : "FAIL"));

  int violations = 0;
  int half_violations = 0;
  double worst = 0.0;
  int worst_n = 0;
  std::string first_rows;
  for (int n = 6; n <= 200; n += 2) {
    const DeltaReport d = delta0(n);
    const double ratio = d.delta_given_count / d.bound;
    if (ratio > 1.0) ++violations;
    if (d.delta_half > d.bound) ++half_violations;
    if (ratio > worst) {
      worst = ratio;
      worst_n = n;
    }
    if (n <= 10 || n == 200) {
      r.details.push_back(fmt("n=%d: Delta_0 %.6f, 2sqrt(Var u_n) %.6f, sqrt(Var u_n) %.6f, bound %.6f", n,
                              d.delta_given_count, d.delta, d.delta_half, d.bound));
    }
  }
  r.details.push_back(fmt("Delta_0 <= bound violated at %d of 98 even n; max ratio %.4f at n=%d", violations, worst,
                          worst_n));
  r.details.push_back(fmt("info: sqrt(Var u_n) <= bound violated at %d of 98 even n (u_n is half of E(X^s-X|F))",
                          half_violations));
  r.measured = worst;
  r.tolerance = 1.0;
  r.pass = mc_ok && violations == 0;
}

void check_concentration(const SuiteConfig& cfg, CheckResult& r) {
  const int n = 10;
  const CoupledSample s = sample_even_coupling(n, cfg.samples, check_seed(cfg, "C12"), "C12");
  const Moments mv = mean_var_formula(SwitchPattern::standard(n));
  const std::vector<double> zs{-2.0, -1.0, 0.0, 1.0, 2.0};
  const std::vector<double> as{0.5, 1.0, 1.5, 2.0, 3.0};
  const auto cells = concentration_grid(s, mv.mean, std::sqrt(mv.variance), zs, as);
  double worst = -1e300;
  bool ok = true;
  for (const auto& c : cells) {
    const double slack = c.mean - (c.a + 4.0 * c.std_error);
    if (slack > 0.0) ok = false;
    worst = std::max(worst, c.mean / c.a);
  }
  r.details.push_back(fmt("25 cells, max of statistic/a = %.4f", worst));
  r.measured = worst;
  r.tolerance = 1.0;
  r.pass = ok;
}

// ---- bounds ------------------------------------------------------------------

void check_bounds(const SuiteConfig&, CheckResult& r) {
  int failures = 0;
  double worst = 0.0;
  int worst_n = 0;
  for (int n = 6; n <= 200; ++n) {
    const BoundReport b = certify(n);
    if (!b.certified()) ++failures;
    const double ratio = *b.ks_exact / b.total;
    if (ratio > worst) {
      worst = ratio;
      worst_n = n;
    }
  }
  const BoundReport big = even_bound(10000);
  const double scaled = big.total * std::sqrt(10000.0);
  const BoundReport big_odd = odd_bound(10001);
  r.details.push_back(fmt("KS <= bound failures: %d over even [6,200] and odd [7,199]; max KS/bound %.4f at n=%d",
                          failures, worst, worst_n));
  r.details.push_back(fmt("n=10000 bound*sqrt(n) = %.4f (target [17,19]); n=10001 odd: %.4f", scaled,
                          big_odd.total * std::sqrt(10001.0)));
  r.measured = worst;
  r.tolerance = 1.0;
  r.pass = failures == 0 && scaled >= 17.0 && scaled <= 19.0;
}

// ---- spectral ----------------------------------------------------------------

void check_spectral(const SuiteConfig& cfg, CheckResult& r) {
  double worst = 0.0;
  for (int n = 1; n <= 6; ++n)
    for (int b = 1; b <= std::min(3, n); ++b)
      for (int s = 0; s <= n; ++s) {
        worst = std::max(worst, max_abs_difference(transition_matrix(n, b, s).p, spectral_reconstruction(n, b, s)));
      }
  Rng rng(cfg.seed, stream_id("C9"));
  double worst_perm = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const int n = rng.uniform_int(2, 10);
    const SwitchPattern p = random_pattern(n, n, rng);
    std::vector<int> shuffled = p.sizes();
    std::shuffle(shuffled.begin(), shuffled.end(), rng.engine());
    worst_perm = std::max(worst_perm, total_variation(exact_pmf(p), exact_pmf(SwitchPattern(n, shuffled))));
  }
  r.details.push_back(fmt("max |P - T'GT| %.3e over n<=6, b<=3, all s", worst));
  r.details.push_back(fmt("max TV under 20 random stage permutations %.3e", worst_perm));
  r.measured = std::max(worst, worst_perm);
  r.tolerance = 1e-12;
  r.pass = worst <= 1e-12 && worst_perm <= 1e-12;
}

void check_lemma44(const SuiteConfig&, CheckResult& r) {
  double worst = 1e300;
  int worst_n = 0;
  int failures = 0;
  int entries = 0;
  for (int n = 6; n <= 200; ++n) {
    if (n % 2 == 1 && n < 7) continue;
    const Lemma44Report rep = verify_lemma44(n);
    entries += static_cast<int>(rep.entries.size());
    if (!rep.holds) ++failures;
    if (rep.min_margin < worst) {
      worst = rep.min_margin;
      worst_n = n;
    }
  }
  r.details.push_back(fmt("%d eigenvalue products checked; %d values of n fail; smallest log-margin %.4f at n=%d",
                          entries, failures, worst, worst_n));
  r.measured = worst;
  r.tolerance = 0.0;
  r.pass = failures == 0;
}

void check_appendix(const SuiteConfig&, CheckResult& r) {
  double worst = 0.0;
  for (int n : {7, 9, 11}) {
    const AppendixSums s = appendix_sums(n);
    const AppendixTerms terms = appendix_terms(n);
    auto enumerated = [](const std::vector<TwoStageSpec>& specs) {
      oracle::Rational total = 0;
      for (const auto& spec : specs) total += oracle::enumerate_g_two_stage(spec);
      return static_cast<double>(total);
    };
    const double e4 = enumerated(terms.four_bulb);
    const double e3 = enumerated(terms.three_bulb);
    const double e2 = enumerated(terms.two_bulb);
    const double diffs[] = {
        std::fabs(s.four_bulb.lhs - s.four_bulb.rhs), std::fabs(e4 - s.four_bulb.rhs),
        std::fabs(s.four_bulb_weighted - s.four_bulb.rhs), std::fabs(s.three_bulb.lhs - s.three_bulb.rhs),
        std::fabs(e3 - s.three_bulb.rhs), std::fabs(s.two_bulb.lhs - s.two_bulb.rhs),
        std::fabs(e2 - s.two_bulb.rhs)};
    double local = 0.0;
    for (double d : diffs) local = std::max(local, d);
    worst = std::max(worst, local);
    r.details.push_back(fmt("n=%d: four-bulb %.15f, three-bulb %.15f, two-bulb %.15f; max |diff| %.2e", n,
                            s.four_bulb.rhs, s.three_bulb.rhs, s.two_bulb.rhs, local));
  }
  r.measured = worst;
  r.tolerance = 1e-12;
  r.pass = worst <= 1e-12;
}

using CheckFn = void (*)(const SuiteConfig&, CheckResult&);

struct Registered {
  CheckInfo info;
  CheckFn fn;
  double time_limit;  // seconds; 0 for none
};

const std::vector<Registered>& registry() {
  static const std::vector<Registered> checks{
      {{"C1", "chain", "exact pmf equals exhaustive enumeration"}, check_pmf_enumeration, 1.0},
      {{"C2", "chain", "moment formulas match exact pmf, n in [2,200]"}, check_moments, 5.0},
      {{"C3", "coupling", "even coupling law at n=4, exact"}, check_even_exact, 0.0},
      {{"C4", "coupling", "even coupling law, sampled n in {6,10,20}"}, check_even_sampled, 30.0},
      {{"C5", "coupling", "odd symmetrization and coupling at n=3, exact"}, check_odd_exact, 0.0},
      {{"C6", "coupling", "odd variance terms A, B and delta_1 bound"}, check_odd_terms, 0.0},
      {{"C7", "coupling", "Var(u_n) closed form and Delta_0 <= bound"}, check_delta0, 0.0},
      {{"C8", "bounds", "exact KS distance below the normal bound"}, check_bounds, 60.0},
      {{"C9", "spectral", "spectral form of transition matrices; order invariance"}, check_spectral, 0.0},
      {{"C10", "spectral", "eigenvalue product bounds, log space"}, check_lemma44, 0.0},
      {{"C11", "spectral", "two-stage identities"}, check_appendix, 0.0},
      {{"C12", "coupling", "concentration inequality on a (z,a) grid"}, check_concentration, 0.0},
  };
  return checks;
}

}  // namespace

bool SuiteResult::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

const std::vector<CheckInfo>& registered_checks() {
  static const std::vector<CheckInfo> infos = [] {
    std::vector<CheckInfo> v;
    for (const auto& r : registry()) v.push_back(r.info);
    return v;
  }();
  return infos;
}

bool selected(const CheckInfo& info, const std::vector<std::string>& only) {
  if (only.empty()) return true;
  return std::any_of(only.begin(), only.end(),
                     [&](const std::string& s) { return s == info.id || s == info.group; });
}

SuiteResult run_verification_suite(const SuiteConfig& config,
                                   const std::function<void(const CheckResult&)>& on_result) {
  SuiteResult out;
  for (const auto& reg : registry()) {
    if (!selected(reg.info, config.only)) continue;
    CheckResult r;
    r.info = reg.info;
    const auto start = std::chrono::steady_clock::now();
    try {
      reg.fn(config, r);
    } catch (const std::exception& e) {
      r.pass = false;
      r.details.push_back(std::string("exception: ") + e.what());
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (reg.time_limit > 0.0) {
      const bool in_time = r.seconds < reg.time_limit;
      r.details.push_back(fmt("runtime %.2f s (limit %.0f s)", r.seconds, reg.time_limit));
      r.pass = r.pass && in_time;
    }
    if (on_result) on_result(r);
    out.checks.push_back(std::move(r));
  }
  return out;
}

}  // namespace steinlight
