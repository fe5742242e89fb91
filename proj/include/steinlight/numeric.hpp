#pragma once

#include <cmath>
#include <vector>

namespace steinlight {

// Neumaier compensated accumulator.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  CompensatedSum& operator+=(double x) {
    add(x);
    return *this;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// Falling factorial (x)_k = x(x-1)...(x-k+1); (x)_0 = 1.
inline double falling(double x, int k) {
  double r = 1.0;
  for (int t = 0; t < k; ++t) r *= (x - t);
  return r;
}

inline double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  if (k > n - k) k = n - k;
  double r = 1.0;
  for (int t = 1; t <= k; ++t) r = r * (n - k + t) / t;
  return r;
}

double compensated_sum(const std::vector<double>& xs);

// Law of the number of on-bulbs hit when s of n bulbs are toggled while k are
// on: w[idx] = P(j = jlo + idx). Built by ratio recurrence from the mode.
void hypergeometric_weights(int n, int k, int s, std::vector<double>& w, int& jlo);

struct SampleStats {
  double mean = 0.0;
  double variance = 0.0;  // unbiased
  double std_error = 0.0; // of the mean
  // Standard error of the sample variance, from the fourth central moment.
  double variance_std_error = 0.0;
  std::size_t count = 0;
};

SampleStats sample_stats(const std::vector<double>& xs);

}  // namespace steinlight
