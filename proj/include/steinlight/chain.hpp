#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "steinlight/rng.hpp"

namespace steinlight {

// Stage sizes of a lightbulb run on n bulbs. Stage labels are 1-based in the
// public API (stage l has size sizes()[l-1]).
class SwitchPattern {
 public:
  SwitchPattern(int n, std::vector<int> sizes);

  // (1, 2, ..., n)
  static SwitchPattern standard(int n);
  // Odd n = 2m+1: (1, ..., m-1, m+a, m+b, m+2, ..., n) with a, b in {0, 1}.
  static SwitchPattern shifted(int n, int a, int b);

  // Copy with stage l removed, or stages l and j removed.
  SwitchPattern without(int l) const;
  SwitchPattern without(int l, int j) const;

  int n() const { return n_; }
  int stage_count() const { return static_cast<int>(sizes_.size()); }
  int size(int l) const { return sizes_.at(static_cast<std::size_t>(l - 1)); }
  const std::vector<int>& sizes() const { return sizes_; }

  bool operator==(const SwitchPattern&) const = default;

 private:
  int n_;
  std::vector<int> sizes_;
};

// k x n toggle indicators, row-major; rows are 0-based here.
class SwitchMatrix {
 public:
  SwitchMatrix() = default;
  SwitchMatrix(int n, int k) : n_(n), k_(k), bits_(static_cast<std::size_t>(n) * k, 0) {}

  int n() const { return n_; }
  int k() const { return k_; }
  std::uint8_t at(int row, int bulb) const { return bits_[index(row, bulb)]; }
  std::uint8_t& at(int row, int bulb) { return bits_[index(row, bulb)]; }

  int row_sum(int row) const;
  // Parity of column `bulb`: 1 when that bulb ends on.
  int bulb_state(int bulb) const;
  bool matches(const SwitchPattern& pattern) const;

 private:
  std::size_t index(int row, int bulb) const {
    return static_cast<std::size_t>(row) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(bulb);
  }
  int n_ = 0;
  int k_ = 0;
  std::vector<std::uint8_t> bits_;
};

// Law of a bulb count on {0, ..., n}.
struct Pmf {
  std::vector<double> mass;

  int n() const { return static_cast<int>(mass.size()) - 1; }
  double mean() const;
  double variance() const;
  double total() const;
};

struct Moments {
  double mean;
  double variance;
};

SwitchMatrix sample_switch_matrix(const SwitchPattern& pattern, Rng& rng);
// Reuses the storage of `out`, which is resized as needed.
void sample_switch_matrix(const SwitchPattern& pattern, Rng& rng, SwitchMatrix& out);

int count_on(const SwitchMatrix& matrix);

Pmf exact_pmf(const SwitchPattern& pattern);
Moments pmf_moments(const Pmf& p);
Moments mean_var_formula(const SwitchPattern& pattern);
// Mean and variance of the symmetrized count V for odd n >= 3.
Moments v_mean_var(int n);
// Exact law of V: stages m and m+1 of the symmetrized matrix are independent
// equal mixtures of sizes m and m+1, so the law averages four shifted patterns.
Pmf v_exact_pmf(int n);

Pmf size_biased_pmf(const Pmf& p);
double normal_cdf(double z);
double kolmogorov_distance(const Pmf& p, double mean, double sd);
double total_variation(const Pmf& a, const Pmf& b);

}  // namespace steinlight
