#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <string_view>
#include <thread>
#include <vector>

#include "steinlight/rng.hpp"

namespace steinlight {

// Draws are split into fixed-size chunks; chunk c always uses stream
// (seed, stream_id(name, c)), so results do not depend on the thread count.
inline constexpr std::size_t kChunkSize = 1u << 14;

unsigned worker_count();

// fn(Rng&, begin, end) fills draws [begin, end).
template <class Fn>
void parallel_chunks(std::size_t samples, std::uint64_t seed, std::string_view name, Fn fn) {
  const std::size_t chunks = (samples + kChunkSize - 1) / kChunkSize;
  std::atomic<std::size_t> next{0};
  auto work = [&]() {
    for (;;) {
      const std::size_t c = next.fetch_add(1);
      if (c >= chunks) return;
      Rng rng(seed, stream_id(name, c));
      const std::size_t begin = c * kChunkSize;
      fn(rng, begin, std::min(samples, begin + kChunkSize));
    }
  };
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(worker_count(), std::max<std::size_t>(chunks, 1)));
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
}

struct CoupledSample {
  std::vector<int> y;   // X (even) or V (odd)
  std::vector<int> ys;  // size-biased companion
};

struct OddSample {
  CoupledSample pair;
  std::vector<int> x;  // unsymmetrized count
  std::vector<double> zeta;
  std::vector<double> xi;
  std::size_t flips = 0;
};

std::vector<int> sample_counts(int n, std::size_t samples, std::uint64_t seed, std::string_view name);
CoupledSample sample_even_coupling(int n, std::size_t samples, std::uint64_t seed, std::string_view name);
OddSample sample_odd_coupling(int n, std::size_t samples, std::uint64_t seed, std::string_view name);
std::vector<double> sample_u_n(int n, std::size_t samples, std::uint64_t seed, std::string_view name);

}  // namespace steinlight

namespace steinlight {

// One cell of the concentration check: the mean of
// (mu/sigma) (W^s - W) 1{W^s - W <= a} 1{z <= W <= z + a} over coupled draws,
// with W = (Y - mu)/sigma, which should not exceed a.
struct ConcentrationCell {
  double z = 0.0;
  double a = 0.0;
  double mean = 0.0;
  double std_error = 0.0;
};

std::vector<ConcentrationCell> concentration_grid(const CoupledSample& sample, double mu, double sigma,
                                                  const std::vector<double>& zs, const std::vector<double>& as);

// Per-draw differences Y g(Y) - mu g(Y^s); their mean is zero for a
// size-bias pair.
template <class G>
std::vector<double> size_bias_differences(const CoupledSample& sample, double mu, G g) {
  std::vector<double> d(sample.y.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    d[i] = sample.y[i] * g(sample.y[i]) - mu * g(sample.ys[i]);
  }
  return d;
}

}  // namespace steinlight
