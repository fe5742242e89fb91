#include "steinlight/spectral.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "steinlight/numeric.hpp"

namespace steinlight {

double lambda(int n, int b, int s) {
  if (n < 1 || b < 0 || b > n || s < 0 || s > n) {
    throw std::invalid_argument("lambda arguments out of range");
  }
  CompensatedSum total;
  double ratio = 1.0;  // (s)_t / (n)_t
  double choose = 1.0; // C(b, t)
  double sign_pow = 1.0;
  for (int t = 0; t <= b; ++t) {
    if (t > 0) {
      ratio *= static_cast<double>(s - t + 1) / static_cast<double>(n - t + 1);
      choose = choose * (b - t + 1) / t;
      sign_pow *= -2.0;
    }
    if (ratio == 0.0) break;
    total += choose * sign_pow * ratio;
  }
  return total.value();
}

namespace {

int odd_half(int n) {
  if (n < 3 || n % 2 == 0) throw std::invalid_argument("averaged eigenvalues need odd n >= 3");
  return (n - 1) / 2;
}

void check_pattern(int n, const SwitchPattern& pattern) {
  if (pattern.n() != n) throw std::invalid_argument("pattern bulb count differs from n");
}

double bar_factor(int n, int b, int m) { return 0.5 * (lambda(n, b, m) + lambda(n, b, m + 1)); }

void accumulate_log(LogValue& acc, double factor) {
  if (acc.sign == 0) return;
  if (factor == 0.0) {
    acc.sign = 0;
    acc.log_abs = -std::numeric_limits<double>::infinity();
    return;
  }
  if (factor < 0.0) acc.sign = -acc.sign;
  acc.log_abs += std::log(std::fabs(factor));
}

}  // namespace

double lambda_product(int n, int b, const SwitchPattern& pattern) {
  check_pattern(n, pattern);
  double p = 1.0;
  for (int s : pattern.sizes()) p *= lambda(n, b, s);
  return p;
}

double lambda_bar(int n, int b, const SwitchPattern& pattern) {
  check_pattern(n, pattern);
  const int m = odd_half(n);
  const double avg = bar_factor(n, b, m);
  double p = 1.0;
  for (int s : pattern.sizes()) p *= (s == m || s == m + 1) ? avg : lambda(n, b, s);
  return p;
}

LogValue log_lambda_product(int n, int b, const SwitchPattern& pattern) {
  check_pattern(n, pattern);
  LogValue acc;
  for (int s : pattern.sizes()) accumulate_log(acc, lambda(n, b, s));
  return acc;
}

LogValue log_lambda_bar(int n, int b, const SwitchPattern& pattern) {
  check_pattern(n, pattern);
  const int m = odd_half(n);
  const double avg = bar_factor(n, b, m);
  LogValue acc;
  for (int s : pattern.sizes()) accumulate_log(acc, (s == m || s == m + 1) ? avg : lambda(n, b, s));
  return acc;
}

DenseMatrix kronecker(const DenseMatrix& x, const DenseMatrix& y) {
  DenseMatrix out(x.dim * y.dim);
  for (int i = 0; i < x.dim; ++i)
    for (int j = 0; j < x.dim; ++j)
      for (int k = 0; k < y.dim; ++k)
        for (int l = 0; l < y.dim; ++l) out(i * y.dim + k, j * y.dim + l) = x(i, j) * y(k, l);
  return out;
}

DenseMatrix multiply(const DenseMatrix& x, const DenseMatrix& y) {
  if (x.dim != y.dim) throw std::invalid_argument("dimension mismatch");
  DenseMatrix out(x.dim);
  for (int i = 0; i < x.dim; ++i)
    for (int k = 0; k < x.dim; ++k) {
      const double xik = x(i, k);
      if (xik == 0.0) continue;
      for (int j = 0; j < x.dim; ++j) out(i, j) += xik * y(k, j);
    }
  return out;
}

DenseMatrix transpose(const DenseMatrix& x) {
  DenseMatrix out(x.dim);
  for (int i = 0; i < x.dim; ++i)
    for (int j = 0; j < x.dim; ++j) out(j, i) = x(i, j);
  return out;
}

double max_abs_difference(const DenseMatrix& x, const DenseMatrix& y) {
  if (x.dim != y.dim) throw std::invalid_argument("dimension mismatch");
  double worst = 0.0;
  for (std::size_t i = 0; i < x.a.size(); ++i) worst = std::max(worst, std::fabs(x.a[i] - y.a[i]));
  return worst;
}

std::vector<int> a_vector(int b) {
  if (b < 1) throw std::invalid_argument("a_vector needs b >= 1");
  std::vector<int> a{0, 1};
  for (int level = 2; level <= b; ++level) {
    const std::size_t half = a.size();
    a.resize(2 * half);
    for (std::size_t i = 0; i < half; ++i) a[half + i] = a[i] + 1;
  }
  return a;
}

namespace {

DenseMatrix transition_rec(int n, int b, int s) {
  if (b == 0) {
    DenseMatrix one(1);
    one(0, 0) = 1.0;
    return one;
  }
  DenseMatrix swap(2);
  swap(0, 1) = swap(1, 0) = 1.0;
  DenseMatrix id(2);
  id(0, 0) = id(1, 1) = 1.0;
  const double hit = static_cast<double>(s) / n;
  DenseMatrix out(1 << b);
  if (s > 0) {
    const DenseMatrix part = kronecker(swap, transition_rec(n - 1, b - 1, s - 1));
    for (std::size_t i = 0; i < out.a.size(); ++i) out.a[i] += hit * part.a[i];
  }
  if (s < n) {
    const DenseMatrix part = kronecker(id, transition_rec(n - 1, b - 1, s));
    for (std::size_t i = 0; i < out.a.size(); ++i) out.a[i] += (1.0 - hit) * part.a[i];
  }
  return out;
}

}  // namespace

TransitionMatrix transition_matrix(int n, int b, int s) {
  if (b < 1 || b > n) throw std::invalid_argument("transition matrix needs 1 <= b <= n");
  if (b > kMaxTransitionBulbs) throw std::invalid_argument("transition matrix limited to 12 bulbs");
  if (s < 0 || s > n) throw std::invalid_argument("stage size out of range");
  return TransitionMatrix{n, b, s, transition_rec(n, b, s)};
}

DenseMatrix hadamard_power(int b) {
  DenseMatrix t(2);
  const double r = 1.0 / std::sqrt(2.0);
  t(0, 0) = r;
  t(0, 1) = r;
  t(1, 0) = -r;
  t(1, 1) = r;
  DenseMatrix out = t;
  for (int level = 2; level <= b; ++level) out = kronecker(out, t);
  return out;
}

std::vector<double> spectral_diag(int n, int b, int s) {
  const std::vector<int> a = a_vector(b);
  std::vector<double> d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = lambda(n, a[i], s);
  return d;
}

DenseMatrix spectral_reconstruction(int n, int b, int s) {
  const DenseMatrix h = hadamard_power(b);
  const std::vector<double> d = spectral_diag(n, b, s);
  DenseMatrix gh = h;
  for (int i = 0; i < gh.dim; ++i)
    for (int j = 0; j < gh.dim; ++j) gh(i, j) *= d[static_cast<std::size_t>(i)];
  return multiply(transpose(h), gh);
}

CoefficientTable coefficient_table(int alpha, int beta) {
  if (alpha < 0 || beta < 0) throw std::invalid_argument("coefficient table needs alpha, beta >= 0");
  std::vector<double> a(static_cast<std::size_t>(alpha) + 1, 1.0);
  for (int step = 1; step <= beta; ++step) {
    const int b = alpha + step;
    std::vector<double> next(static_cast<std::size_t>(b) + 1, 0.0);
    for (int j = 0; j <= b; ++j) {
      const double same = j < b ? a[static_cast<std::size_t>(j)] : 0.0;
      const double prev = j > 0 ? a[static_cast<std::size_t>(j - 1)] : 0.0;
      next[static_cast<std::size_t>(j)] =
          (static_cast<double>(b - j) / b) * same - (static_cast<double>(j) / b) * prev;
    }
    a = std::move(next);
  }
  return CoefficientTable{alpha, beta, std::move(a)};
}

double f_prob(int alpha, int beta, const SwitchPattern& pattern) {
  const int b = alpha + beta;
  if (alpha < 0 || beta < 0 || b > pattern.n()) {
    throw std::invalid_argument("f_prob needs 0 <= alpha + beta <= n");
  }
  const CoefficientTable table = coefficient_table(alpha, beta);
  CompensatedSum total;
  for (int j = 0; j <= b; ++j) {
    const double coef = table.a[static_cast<std::size_t>(j)];
    if (coef == 0.0) continue;
    total += binomial(b, j) * coef * lambda_product(pattern.n(), j, pattern);
  }
  return std::ldexp(total.value(), -b);
}

double g_one_stage(int alpha, int beta, const SwitchPattern& pattern, int l) {
  if (l < 1 || l > pattern.stage_count()) throw std::out_of_range("stage index out of range");
  const int n = pattern.n();
  const int s = pattern.size(l);
  const double select = falling(n - s, alpha) * falling(s, beta) / falling(n, alpha + beta);
  if (select == 0.0) return 0.0;
  return f_prob(alpha, beta, pattern.without(l)) * select;
}

namespace {

// Per involved bulb, the required switch value in one stage, or -1 if free.
// Returns false on contradictory requirements.
bool stage_requirements(const std::vector<std::pair<int, int>>& group, const std::vector<int>& labels,
                        std::vector<int>& need) {
  need.assign(labels.size(), -1);
  for (const auto& [bulb, value] : group) {
    const auto it = std::lower_bound(labels.begin(), labels.end(), bulb);
    const std::size_t idx = static_cast<std::size_t>(it - labels.begin());
    if (need[idx] != -1 && need[idx] != value) return false;
    need[idx] = value;
  }
  return true;
}

void validate_group(const std::vector<std::pair<int, int>>& group, int n) {
  for (std::size_t i = 0; i < group.size(); ++i) {
    const auto& [bulb, value] = group[i];
    if (bulb < 1 || bulb > n) throw std::invalid_argument("bulb label out of range");
    if (value != 0 && value != 1) throw std::invalid_argument("switch value must be 0 or 1");
    if (i > 0 && group[i - 1].first > bulb) throw std::invalid_argument("bulb labels must be sorted");
  }
}

}  // namespace

double g_two_stage(const TwoStageSpec& spec) {
  const SwitchPattern& pattern = spec.pattern;
  const int n = pattern.n();
  if (spec.r == spec.t) throw std::invalid_argument("two-stage event needs distinct stages");
  if (spec.r < 1 || spec.r > pattern.stage_count() || spec.t < 1 || spec.t > pattern.stage_count()) {
    throw std::out_of_range("stage index out of range");
  }
  validate_group(spec.first, n);
  validate_group(spec.second, n);

  std::vector<int> labels;
  for (const auto& [bulb, value] : spec.first) labels.push_back(bulb);
  for (const auto& [bulb, value] : spec.second) labels.push_back(bulb);
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  const int b = static_cast<int>(labels.size());

  std::vector<int> need_r;
  std::vector<int> need_t;
  if (!stage_requirements(spec.first, labels, need_r)) return 0.0;
  if (!stage_requirements(spec.second, labels, need_t)) return 0.0;

  const int sr = pattern.size(spec.r);
  const int st = pattern.size(spec.t);
  const SwitchPattern rest = pattern.without(spec.r, spec.t);
  std::vector<double> f_cache(static_cast<std::size_t>(b) + 1, -1.0);

  auto consistent = [&](unsigned e, const std::vector<int>& need) {
    for (int i = 0; i < b; ++i) {
      const int bit = static_cast<int>((e >> i) & 1u);
      if (need[static_cast<std::size_t>(i)] != -1 && need[static_cast<std::size_t>(i)] != bit) return false;
    }
    return true;
  };
  // Probability that the b involved bulbs take the switch vector e in a stage
  // of size s: the other entries of the stage are unconstrained.
  auto select = [&](unsigned e, int s) {
    const int ones = std::popcount(e);
    return falling(s, ones) * falling(n - s, b - ones) / falling(n, b);
  };

  CompensatedSum total;
  const unsigned states = 1u << b;
  for (unsigned er = 0; er < states; ++er) {
    if (!consistent(er, need_r)) continue;
    const double pr = select(er, sr);
    if (pr == 0.0) continue;
    for (unsigned et = 0; et < states; ++et) {
      if (!consistent(et, need_t)) continue;
      const double pt = select(et, st);
      if (pt == 0.0) continue;
      // After stages r and t the involved bulbs start from er xor et; by
      // exchangeability only the number starting on matters.
      const int on = std::popcount(er ^ et);
      double& f = f_cache[static_cast<std::size_t>(on)];
      if (f < 0.0) f = f_prob(b - on, on, rest);
      total += pr * pt * f;
    }
  }
  return total.value();
}

double appendix_p(int n, int k, int d) {
  const int m = odd_half(n);
  if (k < 0 || k > n || d < 0 || d > k) throw std::invalid_argument("appendix_p arguments out of range");
  double total = 0.0;
  for (int b = 0; b <= 1; ++b) total += falling(m + 1 - b, k - d) * falling(m + b, d);
  return total / falling(n, k);
}

double appendix_weight(int n, int alpha, int beta) {
  if (alpha < 0 || beta < 0 || alpha + beta != 4) {
    throw std::invalid_argument("four-bulb weights need alpha + beta = 4");
  }
  double w = 0.0;
  for (unsigned bits = 0; bits < 16; ++bits) {
    const int e3 = bits & 1;
    const int e4 = (bits >> 1) & 1;
    const int e1 = (bits >> 2) & 1;
    const int e2 = (bits >> 3) & 1;
    const int off = (e3 == 0) + (e4 == 1) + (e1 == 0) + (e2 == 1);
    if (off != alpha) continue;
    w += appendix_p(n, 4, 1 + e1 + e2) * appendix_p(n, 4, 1 + e3 + e4);
  }
  return w;
}

AppendixTerms appendix_terms(int n) {
  const int m = odd_half(n);
  if (n < 7) throw std::invalid_argument("appendix sums need odd n >= 7");
  using Group = std::vector<std::pair<int, int>>;
  AppendixTerms terms;
  auto over_shifts = [&](std::vector<TwoStageSpec>& out, const Group& first, const Group& second, int r, int t) {
    for (int a = 0; a <= 1; ++a)
      for (int b = 0; b <= 1; ++b) out.push_back(TwoStageSpec{first, second, r, t, SwitchPattern::shifted(n, b, a)});
  };
  over_shifts(terms.four_bulb, {{1, 0}, {2, 1}}, {{3, 0}, {4, 1}}, m, m + 1);
  const Group overlap[4][2] = {
      {{{1, 0}, {2, 1}}, {{1, 0}, {3, 1}}},
      {{{1, 1}, {2, 0}}, {{1, 1}, {3, 0}}},
      {{{1, 0}, {2, 1}}, {{1, 1}, {3, 0}}},
      {{{1, 1}, {2, 0}}, {{1, 0}, {3, 1}}},
  };
  for (const auto& [r, t] : {std::pair{m, m + 1}, std::pair{m + 1, m}}) {
    for (const auto& groups : overlap) over_shifts(terms.three_bulb, groups[0], groups[1], r, t);
  }
  over_shifts(terms.two_bulb, {{1, 0}, {2, 1}}, {{1, 0}, {2, 1}}, m, m + 1);
  return terms;
}

AppendixSums appendix_sums(int n) {
  const AppendixTerms terms = appendix_terms(n);
  const int m = (n - 1) / 2;
  const SwitchPattern inner = SwitchPattern::standard(n).without(m, m + 1);
  const double l1 = lambda_product(n, 1, inner);
  const double l2 = lambda_product(n, 2, inner);
  const double l4 = lambda_product(n, 4, inner);
  const double md = m;

  auto summed = [](const std::vector<TwoStageSpec>& specs) {
    CompensatedSum s;
    for (const auto& spec : specs) s += g_two_stage(spec);
    return s.value();
  };

  AppendixSums out;
  out.n = n;

  out.four_bulb.lhs = summed(terms.four_bulb);
  const double c4 = falling(md + 1, 3) / falling(n, 4);
  out.four_bulb.rhs = c4 * c4 * ((2 * md - 1) * (2 * md - 1) + 2 * (2 * md - 1) * l2 + l4);
  CompensatedSum weighted;
  for (int alpha = 0; alpha <= 4; ++alpha) {
    weighted += f_prob(alpha, 4 - alpha, inner) * appendix_weight(n, alpha, 4 - alpha);
  }
  out.four_bulb_weighted = weighted.value();

  // The lambda terms cancel in this sum.
  out.three_bulb.lhs = summed(terms.three_bulb);
  const double c3 = falling(md + 1, 2) * (2 * md - 1) / falling(n, 3);
  out.three_bulb.rhs = 4.0 * c3 * c3;

  out.two_bulb.lhs = summed(terms.two_bulb);
  const double c2 = falling(md + 1, 2) / falling(n, 2);
  out.two_bulb.rhs = (1.0 + 2.0 * l1 + l2) * c2 * c2;
  return out;
}

Lemma44Report verify_lemma44(int n) {
  if (n < 6 || (n % 2 == 1 && n < 7)) throw std::invalid_argument("eigenvalue bounds need n >= 6 (even) or n >= 7 (odd)");
  Lemma44Report report;
  report.n = n;
  const SwitchPattern full = SwitchPattern::standard(n);
  const double nd = n;

  auto add = [&](const std::string& label, int b, const LogValue& v) {
    Lemma44Entry e;
    e.pattern = label;
    e.b = b;
    e.log_abs = v.sign == 0 ? -std::numeric_limits<double>::infinity() : v.log_abs;
    e.log_threshold = b == 2 ? -nd : -nd - std::log(2.0);
    e.margin = e.log_threshold - e.log_abs;
    report.entries.push_back(e);
  };

  for (int b : {2, 4}) {
    if (n % 2 == 0) {
      add("n_h", b, log_lambda_product(n, b, full.without(n / 2)));
    } else {
      const int m = (n - 1) / 2;
      add("n_m", b, log_lambda_product(n, b, full.without(m)));
      add("n_m+1", b, log_lambda_product(n, b, full.without(m + 1)));
      add("n_m,m+1", b, log_lambda_product(n, b, full.without(m, m + 1)));
      add("bar n_m", b, log_lambda_bar(n, b, full.without(m)));
    }
  }
  report.min_margin = std::numeric_limits<double>::infinity();
  for (const auto& e : report.entries) report.min_margin = std::min(report.min_margin, e.margin);
  report.holds = report.min_margin > 0.0;
  return report;
}

}  // namespace steinlight
