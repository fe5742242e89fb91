#pragma once

#include <optional>
#include <string>

namespace steinlight {

// Constant in the smoothing term of the size-bias Berry-Esseen bound.
inline constexpr double kSmoothingConstant = 0.82;
// Twice the smoothing constant, as it appears once the width is 2.
inline constexpr double kSmoothingConstantWidth2 = 1.64;
// Standard normal density at 0, 1/sqrt(2 pi).
inline constexpr double kNormalDensityAtZero = 0.39894228040143268;

enum class Parity { Even, Odd };
std::string to_string(Parity p);

struct BoundInputs {
  double mu = 0.0;
  double sigma = 0.0;
  double delta_cap = 0.0;  // conditional-variance root
  double b_width = 0.0;    // almost-sure width: Y <= Y^s <= Y + b_width
};

struct BoundTerms {
  double term_delta = 0.0;
  double term_smooth = 0.0;
  double term_conc = 0.0;
  double total() const { return term_delta + term_smooth + term_conc; }
};

BoundTerms generic_bound_terms(const BoundInputs& in);
double generic_bound(const BoundInputs& in);

struct BoundReport {
  int n = 0;
  Parity parity = Parity::Even;
  double sigma2 = 0.0;
  double delta_bar = 0.0;
  double term_delta = 0.0;
  double term_smooth = 0.0;
  double term_conc = 0.0;
  double total = 0.0;
  std::optional<double> ks_exact;

  bool certified() const { return ks_exact && *ks_exact <= total; }
};

BoundReport even_bound(int n);
BoundReport odd_bound(int n);
// Bound plus the exact Kolmogorov distance of the standardized count.
BoundReport certify(int n);

}  // namespace steinlight
