#include "steinlight/chain.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "steinlight/numeric.hpp"
#include "steinlight/spectral.hpp"

namespace steinlight {

SwitchPattern::SwitchPattern(int n, std::vector<int> sizes) : n_(n), sizes_(std::move(sizes)) {
  if (n < 1) throw std::invalid_argument("bulb count must be positive");
  for (int s : sizes_) {
    if (s < 0 || s > n) {
      throw std::invalid_argument("stage size " + std::to_string(s) + " outside [0, " +
                                  std::to_string(n) + "]");
    }
  }
}

SwitchPattern SwitchPattern::standard(int n) {
  std::vector<int> sizes(static_cast<std::size_t>(std::max(n, 0)));
  for (int r = 0; r < n; ++r) sizes[static_cast<std::size_t>(r)] = r + 1;
  return SwitchPattern(n, std::move(sizes));
}

SwitchPattern SwitchPattern::shifted(int n, int a, int b) {
  if (n < 3 || n % 2 == 0) throw std::invalid_argument("shifted pattern needs odd n >= 3");
  if ((a != 0 && a != 1) || (b != 0 && b != 1)) throw std::invalid_argument("shift must be 0 or 1");
  const int m = (n - 1) / 2;
  std::vector<int> sizes;
  for (int r = 1; r <= m - 1; ++r) sizes.push_back(r);
  sizes.push_back(m + a);
  sizes.push_back(m + b);
  for (int r = m + 2; r <= n; ++r) sizes.push_back(r);
  return SwitchPattern(n, std::move(sizes));
}

SwitchPattern SwitchPattern::without(int l) const {
  if (l < 1 || l > stage_count()) throw std::out_of_range("stage index out of range");
  std::vector<int> sizes = sizes_;
  sizes.erase(sizes.begin() + (l - 1));
  return SwitchPattern(n_, std::move(sizes));
}

SwitchPattern SwitchPattern::without(int l, int j) const {
  if (l == j) throw std::invalid_argument("deleted stages must differ");
  if (l < 1 || l > stage_count() || j < 1 || j > stage_count()) {
    throw std::out_of_range("stage index out of range");
  }
  std::vector<int> sizes;
  for (int r = 1; r <= stage_count(); ++r) {
    if (r != l && r != j) sizes.push_back(size(r));
  }
  return SwitchPattern(n_, std::move(sizes));
}

int SwitchMatrix::row_sum(int row) const {
  int s = 0;
  for (int j = 0; j < n_; ++j) s += at(row, j);
  return s;
}

int SwitchMatrix::bulb_state(int bulb) const {
  int p = 0;
  for (int r = 0; r < k_; ++r) p ^= at(r, bulb);
  return p;
}

bool SwitchMatrix::matches(const SwitchPattern& pattern) const {
  if (pattern.n() != n_ || pattern.stage_count() != k_) return false;
  for (int r = 0; r < k_; ++r) {
    if (row_sum(r) != pattern.sizes()[static_cast<std::size_t>(r)]) return false;
  }
  return true;
}

double Pmf::total() const { return compensated_sum(mass); }

double Pmf::mean() const { return pmf_moments(*this).mean; }

double Pmf::variance() const { return pmf_moments(*this).variance; }

Moments pmf_moments(const Pmf& p) {
  CompensatedSum m;
  for (std::size_t k = 0; k < p.mass.size(); ++k) m += static_cast<double>(k) * p.mass[k];
  const double mean = m.value();
  CompensatedSum v;
  for (std::size_t k = 0; k < p.mass.size(); ++k) {
    const double d = static_cast<double>(k) - mean;
    v += d * d * p.mass[k];
  }
  return {mean, v.value()};
}

namespace {

// Floyd's sampler writes a uniform size-s subset indicator into the row.
void sample_row(SwitchMatrix& m, int row, int s, Rng& rng) {
  const int n = m.n();
  const bool complement = 2 * s > n;
  const int draws = complement ? n - s : s;
  const std::uint8_t mark = complement ? 0 : 1;
  for (int j = 0; j < n; ++j) m.at(row, j) = complement ? 1 : 0;
  for (int j = n - draws; j < n; ++j) {
    const int t = rng.uniform_int(0, j);
    if (m.at(row, t) == mark) {
      m.at(row, j) = mark;
    } else {
      m.at(row, t) = mark;
    }
  }
}

}  // namespace

void sample_switch_matrix(const SwitchPattern& pattern, Rng& rng, SwitchMatrix& out) {
  if (out.n() != pattern.n() || out.k() != pattern.stage_count()) {
    out = SwitchMatrix(pattern.n(), pattern.stage_count());
  }
  for (int r = 0; r < pattern.stage_count(); ++r) {
    sample_row(out, r, pattern.sizes()[static_cast<std::size_t>(r)], rng);
  }
}

SwitchMatrix sample_switch_matrix(const SwitchPattern& pattern, Rng& rng) {
  SwitchMatrix m(pattern.n(), pattern.stage_count());
  sample_switch_matrix(pattern, rng, m);
  return m;
}

int count_on(const SwitchMatrix& matrix) {
  int on = 0;
  for (int j = 0; j < matrix.n(); ++j) on += matrix.bulb_state(j);
  return on;
}

Pmf exact_pmf(const SwitchPattern& pattern) {
  const int n = pattern.n();
  std::vector<double> cur(static_cast<std::size_t>(n) + 1, 0.0);
  cur[0] = 1.0;
  std::vector<CompensatedSum> next;
  std::vector<double> w;
  for (int s : pattern.sizes()) {
    next.assign(cur.size(), CompensatedSum{});
    for (int k = 0; k <= n; ++k) {
      const double pk = cur[static_cast<std::size_t>(k)];
      if (pk == 0.0) continue;
      int jlo = 0;
      hypergeometric_weights(n, k, s, w, jlo);
      for (std::size_t idx = 0; idx < w.size(); ++idx) {
        const int j = jlo + static_cast<int>(idx);
        next[static_cast<std::size_t>(k - j + (s - j))] += pk * w[idx];
      }
    }
    for (std::size_t k = 0; k < cur.size(); ++k) cur[k] = next[k].value();
  }
  return Pmf{std::move(cur)};
}

Moments mean_var_formula(const SwitchPattern& pattern) {
  const double n = pattern.n();
  const double l1 = lambda_product(pattern.n(), 1, pattern);
  const double l2 = lambda_product(pattern.n(), 2, pattern);
  return {(n / 2.0) * (1.0 - l1), (n / 4.0) * (1.0 - l2) + (n * n / 4.0) * (l2 - l1 * l1)};
}

Moments v_mean_var(int n) {
  if (n < 3 || n % 2 == 0) throw std::invalid_argument("symmetrized count needs odd n >= 3");
  const double nd = n;
  const double lb = lambda_bar(n, 2, SwitchPattern::standard(n));
  return {nd / 2.0, (nd / 4.0) * (1.0 - lb) + (nd * nd / 4.0) * lb};
}

Pmf v_exact_pmf(int n) {
  if (n < 3 || n % 2 == 0) throw std::invalid_argument("symmetrized count needs odd n >= 3");
  Pmf out{std::vector<double>(static_cast<std::size_t>(n) + 1, 0.0)};
  for (int a = 0; a <= 1; ++a)
    for (int b = 0; b <= 1; ++b) {
      const Pmf part = exact_pmf(SwitchPattern::shifted(n, a, b));
      for (std::size_t k = 0; k < part.mass.size(); ++k) out.mass[k] += 0.25 * part.mass[k];
    }
  return out;
}

Pmf size_biased_pmf(const Pmf& p) {
  const double mu = p.mean();
  if (!(mu > 0.0)) throw std::invalid_argument("size biasing needs a positive mean");
  Pmf out{std::vector<double>(p.mass.size(), 0.0)};
  for (std::size_t k = 0; k < p.mass.size(); ++k) {
    out.mass[k] = static_cast<double>(k) * p.mass[k] / mu;
  }
  return out;
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

double kolmogorov_distance(const Pmf& p, double mean, double sd) {
  if (!(sd > 0.0)) throw std::invalid_argument("standard deviation must be positive");
  double worst = 0.0;
  CompensatedSum cdf;
  for (std::size_t k = 0; k < p.mass.size(); ++k) {
    const double phi = normal_cdf((static_cast<double>(k) - mean) / sd);
    const double left = cdf.value();
    cdf += p.mass[k];
    const double right = cdf.value();
    worst = std::max({worst, std::fabs(phi - left), std::fabs(phi - right)});
  }
  return worst;
}

double total_variation(const Pmf& a, const Pmf& b) {
  const std::size_t len = std::max(a.mass.size(), b.mass.size());
  CompensatedSum d;
  for (std::size_t k = 0; k < len; ++k) {
    const double x = k < a.mass.size() ? a.mass[k] : 0.0;
    const double y = k < b.mass.size() ? b.mass[k] : 0.0;
    d += std::fabs(x - y);
  }
  return 0.5 * d.value();
}

}  // namespace steinlight
