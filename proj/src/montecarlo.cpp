#include "steinlight/montecarlo.hpp"

#include "steinlight/chain.hpp"
#include "steinlight/coupling.hpp"

namespace steinlight {

unsigned worker_count() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1u : hw;
}

std::vector<int> sample_counts(int n, std::size_t samples, std::uint64_t seed, std::string_view name) {
  const SwitchPattern pattern = SwitchPattern::standard(n);
  std::vector<int> out(samples);
  parallel_chunks(samples, seed, name, [&](Rng& rng, std::size_t begin, std::size_t end) {
    SwitchMatrix m;
    for (std::size_t i = begin; i < end; ++i) {
      sample_switch_matrix(pattern, rng, m);
      out[i] = count_on(m);
    }
  });
  return out;
}

CoupledSample sample_even_coupling(int n, std::size_t samples, std::uint64_t seed, std::string_view name) {
  const SwitchPattern pattern = SwitchPattern::standard(n);
  CoupledSample out{std::vector<int>(samples), std::vector<int>(samples)};
  parallel_chunks(samples, seed, name, [&](Rng& rng, std::size_t begin, std::size_t end) {
    SwitchMatrix m;
    for (std::size_t i = begin; i < end; ++i) {
      sample_switch_matrix(pattern, rng, m);
      const CouplingDraw d = even_size_bias(m, rng);
      out.y[i] = d.x;
      out.ys[i] = d.xs;
    }
  });
  return out;
}

OddSample sample_odd_coupling(int n, std::size_t samples, std::uint64_t seed, std::string_view name) {
  const SwitchPattern pattern = SwitchPattern::standard(n);
  OddSample out;
  out.pair = CoupledSample{std::vector<int>(samples), std::vector<int>(samples)};
  out.x.resize(samples);
  out.zeta.resize(samples);
  out.xi.resize(samples);
  std::vector<unsigned char> flipped(samples, 0);
  parallel_chunks(samples, seed, name, [&](Rng& rng, std::size_t begin, std::size_t end) {
    SwitchMatrix m;
    for (std::size_t i = begin; i < end; ++i) {
      sample_switch_matrix(pattern, rng, m);
      const VDraw v = symmetrize_v(m, rng);
      const CouplingDraw d = odd_size_bias(v, rng);
      const auto [zeta, xi] = zeta_xi(v);
      out.pair.y[i] = d.x;
      out.pair.ys[i] = d.xs;
      out.x[i] = v.x;
      out.zeta[i] = zeta;
      out.xi[i] = xi;
      flipped[i] = (d.flip && *d.flip) ? 1 : 0;
    }
  });
  for (unsigned char f : flipped) out.flips += f;
  return out;
}

std::vector<double> sample_u_n(int n, std::size_t samples, std::uint64_t seed, std::string_view name) {
  const SwitchPattern pattern = SwitchPattern::standard(n);
  std::vector<double> out(samples);
  parallel_chunks(samples, seed, name, [&](Rng& rng, std::size_t begin, std::size_t end) {
    SwitchMatrix m;
    for (std::size_t i = begin; i < end; ++i) {
      sample_switch_matrix(pattern, rng, m);
      out[i] = u_n(m);
    }
  });
  return out;
}

}  // namespace steinlight

#include "steinlight/numeric.hpp"

namespace steinlight {

std::vector<ConcentrationCell> concentration_grid(const CoupledSample& sample, double mu, double sigma,
                                                  const std::vector<double>& zs, const std::vector<double>& as) {
  std::vector<ConcentrationCell> cells;
  std::vector<double> values(sample.y.size());
  for (double z : zs) {
    for (double a : as) {
      for (std::size_t i = 0; i < values.size(); ++i) {
        const double w = (sample.y[i] - mu) / sigma;
        const double step = (sample.ys[i] - sample.y[i]) / sigma;
        const bool keep = step <= a && z <= w && w <= z + a;
        values[i] = keep ? (mu / sigma) * step : 0.0;
      }
      const SampleStats st = sample_stats(values);
      cells.push_back({z, a, st.mean, st.std_error});
    }
  }
  return cells;
}

}  // namespace steinlight
