#pragma once

#include <optional>
#include <utility>

#include "steinlight/chain.hpp"
#include "steinlight/rng.hpp"

namespace steinlight {

// One realization of a size-bias pair (Y, Y^s). Bulb indices are 0-based;
// m_stage is a 1-based stage label.
struct CouplingDraw {
  int x = 0;
  int xs = 0;
  int i = 0;
  std::optional<int> j;
  std::optional<int> m_stage;
  std::optional<bool> flip;
};

// The symmetrized switch matrix for odd n = 2m+1: one zero entry of stage m
// (bulb b_m) and one one entry of stage m+1 (bulb b_m1) are replaced by the
// fair bits c_m and c_m1.
struct VDraw {
  SwitchMatrix v;
  int b_m = 0;
  int b_m1 = 0;
  int c_m = 0;
  int c_m1 = 0;
  int v_count = 0;
  int x = 0;
};

// Even n, matrix from the standard pattern.
CouplingDraw even_size_bias(const SwitchMatrix& matrix, Rng& rng);
VDraw symmetrize_v(const SwitchMatrix& matrix, Rng& rng);
CouplingDraw odd_size_bias(const VDraw& draw, Rng& rng);

// Applies the move recorded in a draw (swap or flip) to the matrix it was
// drawn from. For even n the swap stage is n/2.
void apply_coupling(SwitchMatrix& matrix, const CouplingDraw& draw);

// (4/n^2) sum_{i != j} 1{X_i = 0, X_j = 0, X_{h,i} = 0, X_{h,j} = 1}, h = n/2.
// The conditional mean of X^s - X given the switch matrix is 2 u_n.
double u_n(const SwitchMatrix& matrix);

// Conditional means of the flip and interchange indicators given the
// symmetrized matrix; E(V^s - V | V matrix) = zeta + 2 xi.
std::pair<double, double> zeta_xi(const VDraw& draw);

struct DeltaReport {
  int n = 0;
  // Conditional-variance root given the full switch matrix (odd n: the
  // Cauchy-Schwarz upper bound sqrt(A + 4 sqrt(AB) + 4B)).
  double delta = 0.0;
  double bound = 0.0;  // closed-form upper bound used in the normal bound

  // Even n.
  double var_u = 0.0;              // Var(u_n), closed form
  double delta_half = 0.0;         // sqrt(Var u_n)
  double delta_given_count = 0.0;  // sqrt(Var E(X^s - X | X)), exact

  // Odd n.
  double var_zeta = 0.0;  // A
  double var_xi = 0.0;    // B
  double combined = 0.0;  // A + 4 sqrt(AB) + 4B
};

double delta0_bound(int n);
double delta1_bound(int n);
double var_u_closed_form(int n);
// Exact E(X^s - X | X = k) for k = 0..n, even n.
std::vector<double> conditional_increment_given_count(int n);

DeltaReport delta0(int n);
DeltaReport delta1(int n);

}  // namespace steinlight
