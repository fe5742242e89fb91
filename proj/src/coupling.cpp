#include "steinlight/coupling.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "steinlight/numeric.hpp"
#include "steinlight/spectral.hpp"

namespace steinlight {

namespace {

void require_standard_shape(const SwitchMatrix& matrix) {
  if (matrix.k() != matrix.n()) throw std::invalid_argument("coupling needs a matrix from the standard pattern");
}

// Uniform index j whose entry in `row` differs from the entry of bulb i.
int opposite_partner(const SwitchMatrix& matrix, int row, int i, Rng& rng) {
  const std::uint8_t mine = matrix.at(row, i);
  for (;;) {
    const int j = rng.uniform_int(0, matrix.n() - 1);
    if (matrix.at(row, j) != mine) return j;
  }
}

}  // namespace

CouplingDraw even_size_bias(const SwitchMatrix& matrix, Rng& rng) {
  const int n = matrix.n();
  if (n % 2 != 0) throw std::invalid_argument("even coupling needs even n");
  require_standard_shape(matrix);
  const int row = n / 2 - 1;

  CouplingDraw d;
  d.x = count_on(matrix);
  d.xs = d.x;
  d.i = rng.uniform_int(0, n - 1);
  if (matrix.bulb_state(d.i) == 1) return d;

  // Swapping two opposite stage-n/2 entries toggles both bulbs: I turns on,
  // J turns on if it was off and off otherwise.
  const int j = opposite_partner(matrix, row, d.i, rng);
  d.j = j;
  d.xs = d.x + 1 + (matrix.bulb_state(j) == 0 ? 1 : -1);
  return d;
}

VDraw symmetrize_v(const SwitchMatrix& matrix, Rng& rng) {
  const int n = matrix.n();
  if (n < 3 || n % 2 == 0) throw std::invalid_argument("symmetrization needs odd n >= 3");
  require_standard_shape(matrix);
  const int m = (n - 1) / 2;
  const int row_m = m - 1;
  const int row_m1 = m;

  VDraw d;
  d.v = matrix;
  d.x = count_on(matrix);
  do {
    d.b_m = rng.uniform_int(0, n - 1);
  } while (matrix.at(row_m, d.b_m) != 0);
  do {
    d.b_m1 = rng.uniform_int(0, n - 1);
  } while (matrix.at(row_m1, d.b_m1) != 1);
  d.c_m = rng.uniform_int(0, 1);
  d.c_m1 = rng.uniform_int(0, 1);
  d.v.at(row_m, d.b_m) = static_cast<std::uint8_t>(d.c_m);
  d.v.at(row_m1, d.b_m1) = static_cast<std::uint8_t>(d.c_m1);
  d.v_count = count_on(d.v);
  return d;
}

CouplingDraw odd_size_bias(const VDraw& draw, Rng& rng) {
  const SwitchMatrix& v = draw.v;
  const int n = v.n();
  if (n < 3 || n % 2 == 0) throw std::invalid_argument("odd coupling needs odd n >= 3");
  require_standard_shape(v);
  const int m = (n - 1) / 2;

  CouplingDraw d;
  d.x = draw.v_count;
  d.xs = d.x;
  d.i = rng.uniform_int(0, n - 1);
  d.m_stage = m + rng.uniform_int(0, 1);
  if (v.bulb_state(d.i) == 1) return d;

  const int row = *d.m_stage - 1;
  const int others = v.row_sum(row) - v.at(row, d.i);
  bool flip = false;
  if (others == m) flip = rng.uniform_int(0, m) == 0;
  d.flip = flip;
  if (flip) {
    d.xs = d.x + 1;
    return d;
  }
  const int j = opposite_partner(v, row, d.i, rng);
  d.j = j;
  d.xs = d.x + 1 + (v.bulb_state(j) == 0 ? 1 : -1);
  return d;
}

void apply_coupling(SwitchMatrix& matrix, const CouplingDraw& draw) {
  const int row = draw.m_stage ? *draw.m_stage - 1 : matrix.n() / 2 - 1;
  if (draw.flip && *draw.flip) {
    matrix.at(row, draw.i) ^= 1u;
  } else if (draw.j) {
    std::swap(matrix.at(row, draw.i), matrix.at(row, *draw.j));
  }
}

double u_n(const SwitchMatrix& matrix) {
  const int n = matrix.n();
  if (n % 2 != 0) throw std::invalid_argument("u_n needs even n");
  require_standard_shape(matrix);
  const int row = n / 2 - 1;
  long off_unswitched = 0;
  long off_switched = 0;
  for (int j = 0; j < n; ++j) {
    if (matrix.bulb_state(j) != 0) continue;
    if (matrix.at(row, j) == 0) {
      ++off_unswitched;
    } else {
      ++off_switched;
    }
  }
  const double nd = n;
  return 4.0 * static_cast<double>(off_unswitched) * static_cast<double>(off_switched) / (nd * nd);
}

std::pair<double, double> zeta_xi(const VDraw& draw) {
  const SwitchMatrix& v = draw.v;
  const int n = v.n();
  if (n < 3 || n % 2 == 0) throw std::invalid_argument("zeta/xi need odd n >= 3");
  const int m = (n - 1) / 2;
  std::vector<int> state(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) state[static_cast<std::size_t>(j)] = v.bulb_state(j);

  long flips = 0;
  long pairs = 0;
  for (int row = m - 1; row <= m; ++row) {
    const int sum = v.row_sum(row);
    long off_zero = 0;
    long off_one = 0;
    for (int i = 0; i < n; ++i) {
      if (state[static_cast<std::size_t>(i)] != 0) continue;
      if (sum - v.at(row, i) == m) ++flips;
      if (v.at(row, i) == 0) {
        ++off_zero;
      } else {
        ++off_one;
      }
    }
    pairs += off_zero * off_one;
  }
  const double nd = n;
  const double md = m;
  return {static_cast<double>(flips) / (2.0 * nd * (md + 1.0)),
          static_cast<double>(pairs) / (nd * (md + 1.0))};
}

double delta0_bound(int n) {
  const double nd = n;
  return 1.0 / (2.0 * std::sqrt(nd)) + 1.0 / (2.0 * nd) + std::exp(-nd / 2.0) / 3.0;
}

double delta1_bound(int n) {
  const double nd = n;
  return 1.0 / std::sqrt(nd) + std::exp(-nd / 4.0) / (2.0 * std::sqrt(2.0));
}

double var_u_closed_form(int n) {
  if (n < 4 || n % 2 != 0) throw std::invalid_argument("Var(u_n) needs even n >= 4");
  const SwitchPattern p = SwitchPattern::standard(n).without(n / 2);
  const double l2 = lambda_product(n, 2, p);
  const double l4 = lambda_product(n, 4, p);
  const double nd = n;
  const double n2 = nd * nd;
  return 1.0 / (4.0 * nd) + 1.0 / (4.0 * n2) + (l4 - l2 * l2) / 16.0 - l2 / (2.0 * n2) +
         ((1.0 - nd) / (4.0 * n2)) * l4;
}

std::vector<double> conditional_increment_given_count(int n) {
  if (n < 4 || n % 2 != 0) throw std::invalid_argument("conditional increment needs even n >= 4");
  const int h = n / 2;
  const int others = n - 2;
  const double nd = n;

  // dist[(b1 * 2 + b2) * (others + 1) + c]: bulbs 1 and 2 states, c others on.
  // Stage h is applied first with bulb 1 unswitched and bulb 2 switched; by
  // the order invariance of the process the remaining stages follow in any order.
  const std::size_t width = static_cast<std::size_t>(others) + 1;
  std::vector<double> dist(4 * width, 0.0);
  dist[1 * width + static_cast<std::size_t>(h - 1)] = (nd / 2.0) * (nd / 2.0) / (nd * (nd - 1.0));

  std::vector<double> w;
  for (int s = 1; s <= n; ++s) {
    if (s == h) continue;
    std::vector<CompensatedSum> next(4 * width);
    for (int pair = 0; pair < 4; ++pair) {
      for (int c = 0; c <= others; ++c) {
        const double p = dist[static_cast<std::size_t>(pair) * width + static_cast<std::size_t>(c)];
        if (p == 0.0) continue;
        for (int e = 0; e < 4; ++e) {
          const int hits = (e >> 1) + (e & 1);
          const int rest = s - hits;
          if (rest < 0 || rest > others) continue;
          const double pe = falling(s, hits) * falling(n - s, 2 - hits) / falling(n, 2);
          if (pe == 0.0) continue;
          int jlo = 0;
          hypergeometric_weights(others, c, rest, w, jlo);
          const int to_pair = pair ^ e;
          for (std::size_t idx = 0; idx < w.size(); ++idx) {
            const int j = jlo + static_cast<int>(idx);
            next[static_cast<std::size_t>(to_pair) * width + static_cast<std::size_t>(c - j + rest - j)] +=
                p * pe * w[idx];
          }
        }
      }
    }
    for (std::size_t i = 0; i < dist.size(); ++i) dist[i] = next[i].value();
  }

  const Pmf law = exact_pmf(SwitchPattern::standard(n));
  std::vector<double> out(static_cast<std::size_t>(n) + 1, 0.0);
  const double scale = 8.0 * nd * (nd - 1.0) / (nd * nd);
  for (int k = 0; k <= others; ++k) {
    const double pk = law.mass[static_cast<std::size_t>(k)];
    if (pk > 0.0) out[static_cast<std::size_t>(k)] = scale * dist[static_cast<std::size_t>(k)] / pk;
  }
  return out;
}

DeltaReport delta0(int n) {
  if (n < 6 || n % 2 != 0) throw std::invalid_argument("delta0 needs even n >= 6");
  DeltaReport r;
  r.n = n;
  r.var_u = var_u_closed_form(n);
  r.delta_half = std::sqrt(r.var_u);
  r.delta = 2.0 * r.delta_half;
  r.bound = delta0_bound(n);

  const Pmf law = exact_pmf(SwitchPattern::standard(n));
  const std::vector<double> e = conditional_increment_given_count(n);
  CompensatedSum first;
  CompensatedSum second;
  for (std::size_t k = 0; k < e.size(); ++k) {
    first += law.mass[k] * e[k];
    second += law.mass[k] * e[k] * e[k];
  }
  const double mean = first.value();
  r.delta_given_count = std::sqrt(std::max(0.0, second.value() - mean * mean));
  return r;
}

DeltaReport delta1(int n) {
  if (n < 7 || n % 2 == 0) throw std::invalid_argument("delta1 needs odd n >= 7");
  const int m = (n - 1) / 2;
  const double nd = n;
  const double md = m;
  const SwitchPattern full = SwitchPattern::standard(n);
  const double l2bar = lambda_bar(n, 2, full.without(m));
  const double l4bar = lambda_bar(n, 4, full.without(m));
  const double l2mm = lambda_product(n, 2, full.without(m, m + 1));
  const double l4mm = lambda_product(n, 4, full.without(m, m + 1));
  const double n2 = nd * nd;
  const double n3 = n2 * nd;

  DeltaReport r;
  r.n = n;
  r.var_zeta = (3.0 * md + 2.0) / (8.0 * n3 * (md + 1.0)) + (md / (8.0 * n2 * (md + 1.0))) * l2bar;
  const double mm2 = falling(md, 2);
  r.var_xi = md * (8.0 * md + 3.0) / (8.0 * n3) +
             md * (md * md + md - 1.0) / (4.0 * n2 * (md + 1.0)) * l2bar +
             falling(md + 1.0, 2) / (4.0 * n3) * l2mm +
             md * md * (md - 1.0) / (8.0 * n2 * (md + 1.0)) * l4bar +
             mm2 * mm2 / (2.0 * n2 * falling(nd, 4)) * l4mm - (md * md / (4.0 * n2)) * l2bar * l2bar;
  r.combined = r.var_zeta + 4.0 * std::sqrt(r.var_zeta * r.var_xi) + 4.0 * r.var_xi;
  r.delta = std::sqrt(r.combined);
  r.bound = delta1_bound(n);
  return r;
}

}  // namespace steinlight
