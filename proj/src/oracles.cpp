#include "steinlight/oracles.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace steinlight::oracle {

namespace {

constexpr int kMaxEnumerationBulbs = 20;

std::vector<std::uint32_t> subsets_of_size(int n, int s) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (std::popcount(mask) == s) out.push_back(mask);
  }
  return out;
}

std::vector<std::vector<std::uint32_t>> row_choices(const SwitchPattern& pattern) {
  if (pattern.n() > kMaxEnumerationBulbs) throw std::invalid_argument("enumeration limited to 20 bulbs");
  std::vector<std::vector<std::uint32_t>> rows;
  for (int s : pattern.sizes()) rows.push_back(subsets_of_size(pattern.n(), s));
  return rows;
}

// Visits every matrix; `leaf` receives the chosen row masks and the xor of all rows.
template <class Leaf>
void visit(const std::vector<std::vector<std::uint32_t>>& rows, std::size_t depth, std::uint32_t acc,
           std::vector<std::uint32_t>& chosen, Leaf& leaf) {
  if (depth == rows.size()) {
    leaf(chosen, acc);
    return;
  }
  for (std::uint32_t mask : rows[depth]) {
    chosen[depth] = mask;
    visit(rows, depth + 1, acc ^ mask, chosen, leaf);
  }
}

template <class Leaf>
void visit_all(const std::vector<std::vector<std::uint32_t>>& rows, Leaf leaf) {
  std::vector<std::uint32_t> chosen(rows.size(), 0);
  visit(rows, 0, 0u, chosen, leaf);
}

Rational ratio(std::uint64_t num, std::uint64_t den) {
  return Rational(boost::multiprecision::cpp_int(num), boost::multiprecision::cpp_int(den));
}

std::int64_t falling_int(std::int64_t x, int k) {
  std::int64_t r = 1;
  for (int t = 0; t < k; ++t) r *= (x - t);
  return r;
}

bool bit(std::uint32_t mask, int j) { return ((mask >> j) & 1u) != 0; }

}  // namespace

std::uint64_t configuration_count(const SwitchPattern& pattern) {
  std::uint64_t total = 1;
  for (int s : pattern.sizes()) {
    std::uint64_t c = 1;
    for (int t = 1; t <= s; ++t) c = c * static_cast<std::uint64_t>(pattern.n() - s + t) / static_cast<std::uint64_t>(t);
    total *= c;
  }
  return total;
}

RationalPmf enumerate_pmf(const SwitchPattern& pattern) {
  const int n = pattern.n();
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(n) + 1, 0);
  visit_all(row_choices(pattern), [&](const std::vector<std::uint32_t>&, std::uint32_t state) {
    ++counts[static_cast<std::size_t>(std::popcount(state))];
  });
  const std::uint64_t total = configuration_count(pattern);
  RationalPmf out;
  for (std::uint64_t c : counts) out.push_back(ratio(c, total));
  return out;
}

Rational mean(const RationalPmf& p) {
  Rational m = 0;
  for (std::size_t k = 0; k < p.size(); ++k) m += Rational(static_cast<long long>(k)) * p[k];
  return m;
}

Rational variance(const RationalPmf& p) {
  const Rational mu = mean(p);
  Rational v = 0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    const Rational d = Rational(static_cast<long long>(k)) - mu;
    v += d * d * p[k];
  }
  return v;
}

RationalPmf size_biased(const RationalPmf& p) {
  const Rational mu = mean(p);
  if (mu == 0) throw std::invalid_argument("size biasing needs a positive mean");
  RationalPmf out(p.size());
  for (std::size_t k = 0; k < p.size(); ++k) out[k] = Rational(static_cast<long long>(k)) * p[k] / mu;
  return out;
}

Pmf to_pmf(const RationalPmf& p) {
  Pmf out;
  for (const Rational& r : p) out.mass.push_back(static_cast<double>(r));
  return out;
}

RationalPmf enumerate_even_coupling(int n) {
  if (n < 2 || n % 2 != 0) throw std::invalid_argument("even coupling enumeration needs even n");
  const SwitchPattern pattern = SwitchPattern::standard(n);
  const int h = n / 2 - 1;
  // Per matrix, I has weight 1/n and each admissible J weight 2/n; scale by n^2/2.
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(n) + 1, 0);
  visit_all(row_choices(pattern), [&](const std::vector<std::uint32_t>& rows, std::uint32_t state) {
    const int x = std::popcount(state);
    for (int i = 0; i < n; ++i) {
      if (bit(state, i)) {
        counts[static_cast<std::size_t>(x)] += static_cast<std::uint64_t>(n / 2);
        continue;
      }
      for (int j = 0; j < n; ++j) {
        if (bit(rows[static_cast<std::size_t>(h)], j) == bit(rows[static_cast<std::size_t>(h)], i)) continue;
        const std::uint32_t after = state ^ (1u << i) ^ (1u << j);
        ++counts[static_cast<std::size_t>(std::popcount(after))];
      }
    }
  });
  const std::uint64_t total = configuration_count(pattern) * static_cast<std::uint64_t>(n) *
                              static_cast<std::uint64_t>(n / 2);
  RationalPmf out;
  for (std::uint64_t c : counts) out.push_back(ratio(c, total));
  return out;
}

OddEnumeration enumerate_odd_coupling(int n) {
  if (n < 3 || n % 2 == 0) throw std::invalid_argument("odd coupling enumeration needs odd n >= 3");
  const SwitchPattern pattern = SwitchPattern::standard(n);
  const int m = (n - 1) / 2;
  const std::size_t row_m = static_cast<std::size_t>(m - 1);
  const std::size_t row_m1 = static_cast<std::size_t>(m);
  const Rational per_matrix = ratio(1, configuration_count(pattern));
  const Rational flip_prob = ratio(1, static_cast<std::uint64_t>(m + 1));

  OddEnumeration out;
  out.v_law.assign(static_cast<std::size_t>(n) + 1, Rational(0));
  out.vs_law.assign(static_cast<std::size_t>(n) + 1, Rational(0));

  visit_all(row_choices(pattern), [&](const std::vector<std::uint32_t>& rows, std::uint32_t) {
    std::vector<int> zeros_m;
    std::vector<int> ones_m1;
    for (int j = 0; j < n; ++j) {
      if (!bit(rows[row_m], j)) zeros_m.push_back(j);
      if (bit(rows[row_m1], j)) ones_m1.push_back(j);
    }
    const Rational per_v = per_matrix / Rational(static_cast<long long>(zeros_m.size() * ones_m1.size() * 4));
    for (int bm : zeros_m)
      for (int bm1 : ones_m1)
        for (int cm = 0; cm <= 1; ++cm)
          for (int cm1 = 0; cm1 <= 1; ++cm1) {
            std::vector<std::uint32_t> v = rows;
            v[row_m] = (v[row_m] & ~(1u << bm)) | (static_cast<std::uint32_t>(cm) << bm);
            v[row_m1] = (v[row_m1] & ~(1u << bm1)) | (static_cast<std::uint32_t>(cm1) << bm1);
            std::uint32_t state = 0;
            for (std::uint32_t r : v) state ^= r;
            const int count = std::popcount(state);
            out.v_law[static_cast<std::size_t>(count)] += per_v;

            const Rational per_choice = per_v / Rational(2 * n);
            for (int i = 0; i < n; ++i)
              for (int stage = m; stage <= m + 1; ++stage) {
                if (bit(state, i)) {
                  out.vs_law[static_cast<std::size_t>(count)] += per_choice;
                  continue;
                }
                const std::uint32_t row = v[static_cast<std::size_t>(stage - 1)];
                const int others = std::popcount(row) - (bit(row, i) ? 1 : 0);
                Rational interchange = per_choice;
                if (others == m) {
                  out.vs_law[static_cast<std::size_t>(count + 1)] += per_choice * flip_prob;
                  interchange = per_choice * (Rational(1) - flip_prob);
                }
                std::vector<int> partners;
                for (int j = 0; j < n; ++j) {
                  if (bit(row, j) != bit(row, i)) partners.push_back(j);
                }
                const Rational each = interchange / Rational(static_cast<long long>(partners.size()));
                for (int j : partners) {
                  const std::uint32_t after = state ^ (1u << i) ^ (1u << j);
                  out.vs_law[static_cast<std::size_t>(std::popcount(after))] += each;
                }
              }
          }
  });
  return out;
}

namespace {

struct Requirements {
  std::vector<int> labels;  // sorted distinct 1-based bulb labels
  std::vector<int> need_r;
  std::vector<int> need_t;
  bool contradictory = false;
};

Requirements collect(const TwoStageSpec& spec) {
  if (spec.r == spec.t) throw std::invalid_argument("two-stage event needs distinct stages");
  Requirements q;
  for (const auto& [b, v] : spec.first) q.labels.push_back(b);
  for (const auto& [b, v] : spec.second) q.labels.push_back(b);
  std::sort(q.labels.begin(), q.labels.end());
  q.labels.erase(std::unique(q.labels.begin(), q.labels.end()), q.labels.end());
  auto fill = [&](const std::vector<std::pair<int, int>>& group, std::vector<int>& need) {
    need.assign(q.labels.size(), -1);
    for (const auto& [b, v] : group) {
      const std::size_t idx =
          static_cast<std::size_t>(std::lower_bound(q.labels.begin(), q.labels.end(), b) - q.labels.begin());
      if (need[idx] != -1 && need[idx] != v) q.contradictory = true;
      need[idx] = v;
    }
  };
  fill(spec.first, q.need_r);
  fill(spec.second, q.need_t);
  return q;
}

}  // namespace

Rational enumerate_g_two_stage(const TwoStageSpec& spec) {
  const Requirements q = collect(spec);
  if (q.contradictory) return Rational(0);
  const int n = spec.pattern.n();
  const int b = static_cast<int>(q.labels.size());
  const std::uint32_t states = 1u << b;
  std::vector<Rational> dist(states, Rational(0));
  dist[0] = 1;
  for (int stage = 1; stage <= spec.pattern.stage_count(); ++stage) {
    const int s = spec.pattern.size(stage);
    std::vector<Rational> next(states, Rational(0));
    for (std::uint32_t e = 0; e < states; ++e) {
      bool ok = true;
      for (int i = 0; i < b && ok; ++i) {
        const int v = bit(e, i) ? 1 : 0;
        if (stage == spec.r && q.need_r[static_cast<std::size_t>(i)] != -1 && q.need_r[static_cast<std::size_t>(i)] != v) ok = false;
        if (stage == spec.t && q.need_t[static_cast<std::size_t>(i)] != -1 && q.need_t[static_cast<std::size_t>(i)] != v) ok = false;
      }
      if (!ok) continue;
      const int ones = std::popcount(e);
      const Rational pe(boost::multiprecision::cpp_int(falling_int(s, ones) * falling_int(n - s, b - ones)),
                        boost::multiprecision::cpp_int(falling_int(n, b)));
      if (pe == 0) continue;
      for (std::uint32_t x = 0; x < states; ++x) {
        if (dist[x] != 0) next[x ^ e] += dist[x] * pe;
      }
    }
    dist = std::move(next);
  }
  return dist[0];
}

Rational enumerate_g_two_stage_full(const TwoStageSpec& spec) {
  const Requirements q = collect(spec);
  if (q.contradictory) return Rational(0);
  std::vector<std::vector<std::uint32_t>> rows = row_choices(spec.pattern);
  std::uint32_t involved = 0;
  for (int label : q.labels) involved |= 1u << (label - 1);
  auto restrict_row = [&](int stage, const std::vector<int>& need) {
    auto& choices = rows[static_cast<std::size_t>(stage - 1)];
    std::vector<std::uint32_t> kept;
    for (std::uint32_t mask : choices) {
      bool ok = true;
      for (std::size_t i = 0; i < q.labels.size(); ++i) {
        if (need[i] != -1 && (bit(mask, q.labels[i] - 1) ? 1 : 0) != need[i]) ok = false;
      }
      if (ok) kept.push_back(mask);
    }
    choices = std::move(kept);
  };
  restrict_row(spec.r, q.need_r);
  restrict_row(spec.t, q.need_t);
  std::uint64_t hits = 0;
  visit_all(rows, [&](const std::vector<std::uint32_t>&, std::uint32_t state) {
    if ((state & involved) == 0) ++hits;
  });
  return ratio(hits, configuration_count(spec.pattern));
}

Rational enumerate_f_prob(int alpha, int beta, const SwitchPattern& pattern) {
  const int b = alpha + beta;
  if (alpha < 0 || beta < 0 || b > pattern.n()) throw std::invalid_argument("f oracle needs alpha + beta <= n");
  const std::uint32_t watched = (1u << b) - 1u;
  const std::uint32_t start = watched & ~((1u << alpha) - 1u);
  std::uint64_t hits = 0;
  visit_all(row_choices(pattern), [&](const std::vector<std::uint32_t>&, std::uint32_t state) {
    if (((state ^ start) & watched) == 0) ++hits;
  });
  return ratio(hits, configuration_count(pattern));
}

}  // namespace steinlight::oracle
