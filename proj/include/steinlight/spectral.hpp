#pragma once

#include <string>
#include <utility>
#include <vector>

#include "steinlight/chain.hpp"

namespace steinlight {

// Eigenvalue of the b-bulb marginal chain for one stage of size s.
double lambda(int n, int b, int s);
// Product of lambda(n, b, s_r) over the stages of the pattern.
double lambda_product(int n, int b, const SwitchPattern& pattern);
// Odd n = 2m+1 only: as lambda_product, with every stage of size m or m+1
// contributing the average of the two single-stage values.
double lambda_bar(int n, int b, const SwitchPattern& pattern);

// Sign and natural log of |value|, for products that would underflow.
struct LogValue {
  int sign = 1;          // -1, 0 or +1
  double log_abs = 0.0;  // -inf when sign == 0
};
LogValue log_lambda_product(int n, int b, const SwitchPattern& pattern);
LogValue log_lambda_bar(int n, int b, const SwitchPattern& pattern);

// Row-major square matrix; only what the spectral checks need.
struct DenseMatrix {
  int dim = 0;
  std::vector<double> a;

  explicit DenseMatrix(int d = 0) : dim(d), a(static_cast<std::size_t>(d) * d, 0.0) {}
  double& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * dim + j]; }
  double operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * dim + j]; }
};

DenseMatrix kronecker(const DenseMatrix& x, const DenseMatrix& y);
DenseMatrix multiply(const DenseMatrix& x, const DenseMatrix& y);
DenseMatrix transpose(const DenseMatrix& x);
double max_abs_difference(const DenseMatrix& x, const DenseMatrix& y);

// Exponent of lambda for each diagonal slot of the b-bulb spectral form:
// a_1 = (0, 1), a_b = (a_{b-1}, a_{b-1} + 1).
std::vector<int> a_vector(int b);

struct TransitionMatrix {
  int n = 0;
  int b = 0;
  int s = 0;
  DenseMatrix p;  // 2^b x 2^b; the first bulb is the most significant bit
};

constexpr int kMaxTransitionBulbs = 12;

TransitionMatrix transition_matrix(int n, int b, int s);
// b-fold Kronecker power of the orthogonal matrix (1/sqrt 2)[[1, 1], [-1, 1]].
DenseMatrix hadamard_power(int b);
// Diagonal entries lambda(n, a_i, s).
std::vector<double> spectral_diag(int n, int b, int s);
// H' diag(lambda) H with H = hadamard_power(b).
DenseMatrix spectral_reconstruction(int n, int b, int s);

// a_{alpha,beta}(j) for j = 0..alpha+beta, from the j-recursion in beta.
struct CoefficientTable {
  int alpha = 0;
  int beta = 0;
  std::vector<double> a;
};
CoefficientTable coefficient_table(int alpha, int beta);

// Probability that bulbs starting alpha off and beta on are all off after
// running the pattern.
double f_prob(int alpha, int beta, const SwitchPattern& pattern);
// Probability that alpha + beta given bulbs end off while the first alpha
// have switch value 0 and the remaining beta have value 1 in stage l.
double g_one_stage(int alpha, int beta, const SwitchPattern& pattern, int l);

// Joint event: the listed bulbs all end off, the bulbs of `first` take the
// given switch values in stage r, those of `second` in stage t.
// Bulb labels and stage labels are 1-based.
struct TwoStageSpec {
  std::vector<std::pair<int, int>> first;
  std::vector<std::pair<int, int>> second;
  int r = 0;
  int t = 0;
  SwitchPattern pattern;
};
double g_two_stage(const TwoStageSpec& spec);

// p_k(d) = sum_{b in {0,1}} (m+1-b)_{k-d} (m+b)_d / (n)_k for odd n = 2m+1.
double appendix_p(int n, int k, int d);
// Weight of f_{alpha, 4-alpha} in the four-bulb two-stage sum.
double appendix_weight(int n, int alpha, int beta);

struct Identity {
  double lhs = 0.0;
  double rhs = 0.0;
};
struct AppendixSums {
  int n = 0;
  Identity four_bulb;   // [(1,0),(2,1);(3,0),(4,1)] summed over n(b,a)
  Identity three_bulb;  // overlap-one sums over both stage orders
  Identity two_bulb;    // [(1,0),(2,1);(1,0),(2,1)] summed over n(b,a)
  double four_bulb_weighted = 0.0;  // sum_alpha f_{alpha,4-alpha} w_{alpha,4-alpha}
};
AppendixSums appendix_sums(int n);

// The two-stage events whose probabilities make up each left-hand side.
struct AppendixTerms {
  std::vector<TwoStageSpec> four_bulb;
  std::vector<TwoStageSpec> three_bulb;
  std::vector<TwoStageSpec> two_bulb;
};
AppendixTerms appendix_terms(int n);

struct Lemma44Entry {
  std::string pattern;  // label such as "n_m", "bar n_m+1"
  int b = 0;
  double log_abs = 0.0;
  double log_threshold = 0.0;
  double margin = 0.0;  // log_threshold - log_abs; positive means the bound holds
};
struct Lemma44Report {
  int n = 0;
  std::vector<Lemma44Entry> entries;
  double min_margin = 0.0;
  bool holds = false;
};
Lemma44Report verify_lemma44(int n);

}  // namespace steinlight
