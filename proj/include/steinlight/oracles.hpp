#pragma once

#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "steinlight/chain.hpp"
#include "steinlight/spectral.hpp"

namespace steinlight::oracle {

// Exhaustive-enumeration oracles in exact arithmetic. They share no code
// with the dynamic-programming and spectral routes they check.

using Rational = boost::multiprecision::cpp_rational;
using RationalPmf = std::vector<Rational>;

// Number of equally likely switch matrices, prod_r C(n, s_r).
std::uint64_t configuration_count(const SwitchPattern& pattern);

RationalPmf enumerate_pmf(const SwitchPattern& pattern);
RationalPmf size_biased(const RationalPmf& p);
Rational mean(const RationalPmf& p);
Rational variance(const RationalPmf& p);
Pmf to_pmf(const RationalPmf& p);

// Law of X^s under the even coupling, enumerating matrices, I and J.
RationalPmf enumerate_even_coupling(int n);

struct OddEnumeration {
  RationalPmf v_law;
  RationalPmf vs_law;
};
// Laws of V and V^s, enumerating matrices, B_m, B_{m+1}, C_m, C_{m+1},
// then I, M, F and J.
OddEnumeration enumerate_odd_coupling(int n);

// Two-stage event probability by enumerating, stage by stage, every switch
// assignment of the involved bulbs (the rest of each stage is marginalized).
Rational enumerate_g_two_stage(const TwoStageSpec& spec);
// Same event by enumerating every full switch matrix; feasible for n <= 7.
Rational enumerate_g_two_stage_full(const TwoStageSpec& spec);

// Probability that the first alpha + beta bulbs are all off when the first
// alpha start off and the next beta start on, by full enumeration.
Rational enumerate_f_prob(int alpha, int beta, const SwitchPattern& pattern);

}  // namespace steinlight::oracle
