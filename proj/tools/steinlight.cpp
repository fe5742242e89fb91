#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "steinlight/bounds.hpp"
#include "steinlight/chain.hpp"
#include "steinlight/coupling.hpp"
#include "steinlight/csv.hpp"
#include "steinlight/montecarlo.hpp"
#include "steinlight/numeric.hpp"
#include "steinlight/spectral.hpp"
#include "steinlight/suite.hpp"

namespace sl = steinlight;

namespace {

struct Options {
  int n = 0;
  int n_min = 0;
  int n_max = 0;
  std::string parity = "both";
  std::size_t samples = 1'000'000;
  std::uint64_t seed = sl::default_seed();
  std::string out;
  std::string pattern;
  std::vector<std::string> only;
};

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw std::runtime_error("cannot open " + path);
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

std::vector<int> n_range(const Options& o) {
  int lo = o.n;
  int hi = o.n;
  if (o.n == 0) {
    lo = o.n_min;
    hi = o.n_max;
  }
  if (lo <= 0 || hi < lo) throw std::invalid_argument("give --n or a nonempty --n-min/--n-max range");
  std::vector<int> ns;
  for (int n = lo; n <= hi; ++n) {
    if (o.parity == "even" && n % 2 != 0) continue;
    if (o.parity == "odd" && n % 2 == 0) continue;
    ns.push_back(n);
  }
  if (ns.empty()) throw std::invalid_argument("range holds no n of the requested parity");
  return ns;
}

sl::SwitchPattern parse_pattern(int n, const std::string& text) {
  if (text.empty()) return sl::SwitchPattern::standard(n);
  std::vector<int> sizes;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) sizes.push_back(std::stoi(item));
  return sl::SwitchPattern(n, std::move(sizes));
}

int run_exact(const Options& o) {
  const sl::SwitchPattern p = parse_pattern(o.n, o.pattern);
  const sl::Pmf law = sl::exact_pmf(p);
  const sl::Moments mv = sl::pmf_moments(law);
  Output out(o.out);
  auto& os = out.stream();
  sl::write_csv_row(os, {"k", "prob"});
  for (std::size_t k = 0; k < law.mass.size(); ++k) {
    if (law.mass[k] > 0.0) sl::write_csv_row(os, {std::to_string(k), sl::csv_real(law.mass[k])});
  }
  sl::write_csv_row(os, {"mean", sl::csv_real(mv.mean)});
  sl::write_csv_row(os, {"variance", sl::csv_real(mv.variance)});
  if (mv.variance > 0.0) {
    sl::write_csv_row(os, {"ks", sl::csv_real(sl::kolmogorov_distance(law, mv.mean, std::sqrt(mv.variance)))});
  }
  return 0;
}

int run_simulate(const Options& o) {
  const std::vector<int> draws = sl::sample_counts(o.n, o.samples, o.seed, "simulate");
  const sl::Pmf law = sl::exact_pmf(sl::SwitchPattern::standard(o.n));
  std::vector<std::size_t> counts(static_cast<std::size_t>(o.n) + 1, 0);
  for (int x : draws) ++counts[static_cast<std::size_t>(x)];
  Output out(o.out);
  auto& os = out.stream();
  sl::write_csv_row(os, {"k", "count", "empirical", "exact"});
  for (std::size_t k = 0; k < counts.size(); ++k) {
    sl::write_csv_row(os, {std::to_string(k), std::to_string(counts[k]),
                           sl::csv_real(static_cast<double>(counts[k]) / static_cast<double>(o.samples)),
                           sl::csv_real(law.mass[k])});
  }
  return 0;
}

int run_couple(const Options& o) {
  const bool even = o.n % 2 == 0;
  if (even && o.n < 2) throw std::invalid_argument("coupling needs n >= 2");
  if (!even && o.n < 3) throw std::invalid_argument("odd coupling needs n >= 3");
  sl::CoupledSample s;
  sl::Pmf law;
  std::size_t flips = 0;
  double sigma2 = 0.0;
  if (even) {
    s = sl::sample_even_coupling(o.n, o.samples, o.seed, "couple");
    law = sl::exact_pmf(sl::SwitchPattern::standard(o.n));
    sigma2 = sl::mean_var_formula(sl::SwitchPattern::standard(o.n)).variance;
  } else {
    sl::OddSample odd = sl::sample_odd_coupling(o.n, o.samples, o.seed, "couple");
    s = std::move(odd.pair);
    flips = odd.flips;
    law = sl::v_exact_pmf(o.n);
    sigma2 = sl::v_mean_var(o.n).variance;
  }
  const double mu = o.n / 2.0;
  std::vector<std::size_t> inc(3, 0);
  int lo = 2;
  int hi = 0;
  std::vector<double> diff(s.y.size());
  std::vector<std::size_t> counts(static_cast<std::size_t>(o.n) + 1, 0);
  for (std::size_t i = 0; i < s.y.size(); ++i) {
    const int d = s.ys[i] - s.y[i];
    if (d < 0 || d > 2) throw std::logic_error("coupling increment outside [0, 2]");
    ++inc[static_cast<std::size_t>(d)];
    lo = std::min(lo, d);
    hi = std::max(hi, d);
    diff[i] = d;
    ++counts[static_cast<std::size_t>(s.ys[i])];
  }
  sl::Pmf empirical;
  for (std::size_t c : counts) empirical.mass.push_back(static_cast<double>(c) / static_cast<double>(o.samples));
  const double tv = sl::total_variation(empirical, sl::size_biased_pmf(law));

  bool grid_ok = true;
  double grid_worst = 0.0;
  if (sigma2 > 0.0) {
    const auto cells = sl::concentration_grid(s, mu, std::sqrt(sigma2), {-2.0, -1.0, 0.0, 1.0, 2.0},
                                              {0.5, 1.0, 1.5, 2.0, 3.0});
    for (const auto& c : cells) {
      grid_worst = std::max(grid_worst, c.mean / c.a);
      if (c.mean > c.a + 4.0 * c.std_error) grid_ok = false;
    }
  }

  Output out(o.out);
  auto& os = out.stream();
  sl::write_csv_row(os, {"key", "value"});
  sl::write_csv_row(os, {"n", std::to_string(o.n)});
  sl::write_csv_row(os, {"parity", even ? "even" : "odd"});
  sl::write_csv_row(os, {"samples", std::to_string(o.samples)});
  sl::write_csv_row(os, {"seed", std::to_string(o.seed)});
  sl::write_csv_row(os, {"mean_increment", sl::csv_real(sl::sample_stats(diff).mean)});
  sl::write_csv_row(os, {"expected_increment", sl::csv_real(sigma2 / mu)});
  sl::write_csv_row(os, {"tv_size_biased", sl::csv_real(tv)});
  sl::write_csv_row(os, {"min_increment", std::to_string(lo)});
  sl::write_csv_row(os, {"max_increment", std::to_string(hi)});
  for (int d = 0; d <= 2; ++d) {
    sl::write_csv_row(os, {"count_increment_" + std::to_string(d), std::to_string(inc[static_cast<std::size_t>(d)])});
  }
  if (!even) sl::write_csv_row(os, {"flips", std::to_string(flips)});
  sl::write_csv_row(os, {"concentration_max_ratio", sl::csv_real(grid_worst)});
  sl::write_csv_row(os, {"concentration_ok", grid_ok ? "true" : "false"});
  return 0;
}

int run_spectral(const Options& o) {
  Output out(o.out);
  auto& os = out.stream();
  sl::write_csv_row(os, {"n", "pattern", "b", "log_abs_lambda", "log_threshold", "margin", "holds"});
  bool all = true;
  for (int n : n_range(o)) {
    if (n < 6 || (n % 2 == 1 && n < 7)) continue;
    const sl::Lemma44Report rep = sl::verify_lemma44(n);
    all = all && rep.holds;
    for (const auto& e : rep.entries) {
      sl::write_csv_row(os, {std::to_string(n), e.pattern, std::to_string(e.b), sl::csv_real(e.log_abs),
                             sl::csv_real(e.log_threshold), sl::csv_real(e.margin), e.margin > 0 ? "true" : "false"});
    }
  }
  return all ? 0 : 1;
}

int run_bound(const Options& o) {
  Output out(o.out);
  auto& os = out.stream();
  sl::write_csv_row(os, {"n", "parity", "sigma2", "delta_bar", "term1", "term2", "term3", "bound", "ks_exact",
                         "certified"});
  bool all = true;
  for (int n : n_range(o)) {
    const sl::BoundReport r = sl::certify(n);
    all = all && r.certified();
    sl::write_csv_row(os, {std::to_string(n), sl::to_string(r.parity), sl::csv_real(r.sigma2),
                           sl::csv_real(r.delta_bar), sl::csv_real(r.term_delta), sl::csv_real(r.term_smooth),
                           sl::csv_real(r.term_conc), sl::csv_real(r.total), sl::csv_real(*r.ks_exact),
                           r.certified() ? "true" : "false"});
  }
  return all ? 0 : 1;
}

int run_verify(const Options& o) {
  sl::SuiteConfig cfg;
  cfg.seed = o.seed;
  cfg.samples = o.samples;
  cfg.only = o.only;
  Output out(o.out);
  auto& os = out.stream();
  sl::write_csv_row(os, {"id", "group", "title", "pass", "measured", "tolerance", "seconds"});
  const sl::SuiteResult res = sl::run_verification_suite(cfg, [&](const sl::CheckResult& r) {
    sl::write_csv_row(os, {r.info.id, r.info.group, "\"" + r.info.title + "\"", r.pass ? "true" : "false",
                           sl::csv_real(r.measured), sl::csv_real(r.tolerance), sl::csv_real(r.seconds)});
    os.flush();
  });
  if (res.checks.empty()) throw std::invalid_argument("no check matches --only");
  return res.pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lightbulb process: exact laws, size-bias couplings and normal bounds"};
  app.require_subcommand(1);
  Options o;

  auto add_seed = [&](CLI::App* sub) {
    sub->add_option("--seed", o.seed, "RNG seed (default from STEINLIGHT_SEED)");
    sub->add_option("--samples", o.samples, "Monte Carlo draws")->check(CLI::PositiveNumber);
  };
  auto add_out = [&](CLI::App* sub) { sub->add_option("--out", o.out, "write CSV here instead of stdout"); };

  auto* exact = app.add_subcommand("exact", "exact law of the on-count");
  exact->add_option("--n", o.n, "bulb count")->required()->check(CLI::PositiveNumber);
  exact->add_option("--pattern", o.pattern, "comma-separated stage sizes (default 1..n)");
  add_out(exact);

  auto* simulate = app.add_subcommand("simulate", "sample the on-count and compare with the exact law");
  simulate->add_option("--n", o.n, "bulb count")->required()->check(CLI::PositiveNumber);
  add_seed(simulate);
  add_out(simulate);

  auto* couple = app.add_subcommand("couple", "sample the size-bias coupling and summarize it");
  couple->add_option("--n", o.n, "bulb count")->required()->check(CLI::Range(2, 1 << 20));
  add_seed(couple);
  add_out(couple);

  auto* spectral = app.add_subcommand("spectral", "eigenvalue product bounds in log space");
  spectral->add_option("--n", o.n, "bulb count");
  spectral->add_option("--n-min", o.n_min, "range start");
  spectral->add_option("--n-max", o.n_max, "range end");
  spectral->add_option("--parity", o.parity, "even, odd or both")->check(CLI::IsMember({"even", "odd", "both"}));
  add_out(spectral);

  auto* bound = app.add_subcommand("bound", "normal bound and exact Kolmogorov distance");
  bound->add_option("--n", o.n, "bulb count");
  bound->add_option("--n-min", o.n_min, "range start");
  bound->add_option("--n-max", o.n_max, "range end");
  bound->add_option("--parity", o.parity, "even, odd or both")->check(CLI::IsMember({"even", "odd", "both"}));
  add_out(bound);

  auto* verify = app.add_subcommand("verify", "run the verification suite");
  verify->add_option("--only", o.only, "check id (C1..C12) or group; repeatable");
  add_seed(verify);
  add_out(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*exact) return run_exact(o);
    if (*simulate) return run_simulate(o);
    if (*couple) return run_couple(o);
    if (*spectral) return run_spectral(o);
    if (*bound) return run_bound(o);
    if (*verify) return run_verify(o);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
