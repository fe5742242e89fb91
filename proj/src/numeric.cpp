#include "steinlight/numeric.hpp"

#include <algorithm>
#include <cmath>

namespace steinlight {

double compensated_sum(const std::vector<double>& xs) {
  CompensatedSum s;
  for (double x : xs) s += x;
  return s.value();
}

// Hypergeometric law of the number of on-bulbs hit when s of n bulbs are
// toggled and k are on. Weights run outward from the mode by ratio recurrence
// and are normalized at the end, so no factorials are formed.
void hypergeometric_weights(int n, int k, int s, std::vector<double>& w, int& jlo) {
  jlo = std::max(0, s - (n - k));
  const int jhi = std::min(k, s);
  w.assign(static_cast<std::size_t>(jhi - jlo + 1), 0.0);
  const double mode_guess = std::floor(static_cast<double>(k + 1) * (s + 1) / (n + 2));
  const int mode = std::clamp(static_cast<int>(mode_guess), jlo, jhi);
  w[static_cast<std::size_t>(mode - jlo)] = 1.0;
  for (int j = mode; j < jhi; ++j) {
    const double ratio = static_cast<double>(k - j) * (s - j) /
                         (static_cast<double>(j + 1) * (n - k - s + j + 1));
    w[static_cast<std::size_t>(j + 1 - jlo)] = w[static_cast<std::size_t>(j - jlo)] * ratio;
  }
  for (int j = mode; j > jlo; --j) {
    const double ratio = static_cast<double>(j) * (n - k - s + j) /
                         (static_cast<double>(k - j + 1) * (s - j + 1));
    w[static_cast<std::size_t>(j - 1 - jlo)] = w[static_cast<std::size_t>(j - jlo)] * ratio;
  }
  const double total = compensated_sum(w);
  for (double& x : w) x /= total;
}

SampleStats sample_stats(const std::vector<double>& xs) {
  SampleStats out;
  out.count = xs.size();
  if (xs.empty()) return out;
  const double nd = static_cast<double>(xs.size());
  out.mean = compensated_sum(xs) / nd;
  CompensatedSum m2;
  CompensatedSum m4;
  for (double x : xs) {
    const double d = x - out.mean;
    m2 += d * d;
    m4 += d * d * d * d;
  }
  if (xs.size() > 1) out.variance = m2.value() / (nd - 1.0);
  out.std_error = std::sqrt(out.variance / nd);
  const double mu2 = m2.value() / nd;
  const double mu4 = m4.value() / nd;
  out.variance_std_error = std::sqrt(std::max(0.0, mu4 - mu2 * mu2) / nd);
  return out;
}

}  // namespace steinlight
