#include "steinlight/bounds.hpp"

#include <cmath>
#include <stdexcept>

#include "steinlight/chain.hpp"
#include "steinlight/coupling.hpp"
#include "steinlight/spectral.hpp"

namespace steinlight {

std::string to_string(Parity p) { return p == Parity::Even ? "even" : "odd"; }

BoundTerms generic_bound_terms(const BoundInputs& in) {
  if (!(in.sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
  if (in.b_width < 0.0 || in.delta_cap < 0.0) throw std::invalid_argument("width and delta must be nonnegative");
  const double s = in.sigma;
  const double delta = in.b_width / s;
  BoundTerms t;
  t.term_delta = in.mu * in.delta_cap / (s * s);
  t.term_smooth = kSmoothingConstant * delta * delta * in.mu / s;
  t.term_conc = delta;
  return t;
}

double generic_bound(const BoundInputs& in) { return generic_bound_terms(in).total(); }

BoundReport even_bound(int n) {
  if (n < 6 || n % 2 != 0) throw std::invalid_argument("even bound needs even n >= 6");
  const double nd = n;
  BoundReport r;
  r.n = n;
  r.parity = Parity::Even;
  r.sigma2 = mean_var_formula(SwitchPattern::standard(n)).variance;
  r.delta_bar = delta0_bound(n);
  const double sigma = std::sqrt(r.sigma2);
  r.term_delta = nd / (2.0 * r.sigma2) * r.delta_bar;
  r.term_smooth = kSmoothingConstantWidth2 * nd / (r.sigma2 * sigma);
  r.term_conc = 2.0 / sigma;
  r.total = r.term_delta + r.term_smooth + r.term_conc;
  return r;
}

BoundReport odd_bound(int n) {
  if (n < 7 || n % 2 == 0) throw std::invalid_argument("odd bound needs odd n >= 7");
  const double nd = n;
  BoundReport r;
  r.n = n;
  r.parity = Parity::Odd;
  r.sigma2 = v_mean_var(n).variance;
  r.delta_bar = delta1_bound(n);
  const double sigma = std::sqrt(r.sigma2);
  r.term_delta = nd / (2.0 * r.sigma2) * r.delta_bar;
  r.term_smooth = kSmoothingConstantWidth2 * nd / (r.sigma2 * sigma);
  // The count differs from V by at most two; the extra factor pays for
  // shifting the normal cdf by 2/sigma.
  r.term_conc = (2.0 / sigma) * (1.0 + kNormalDensityAtZero);
  r.total = r.term_delta + r.term_smooth + r.term_conc;
  return r;
}

BoundReport certify(int n) {
  BoundReport r = n % 2 == 0 ? even_bound(n) : odd_bound(n);
  const Pmf law = exact_pmf(SwitchPattern::standard(n));
  r.ks_exact = kolmogorov_distance(law, n / 2.0, std::sqrt(r.sigma2));
  return r;
}

}  // namespace steinlight
