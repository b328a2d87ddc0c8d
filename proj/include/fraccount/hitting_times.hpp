#pragma once

#include <cstdint>

#include "fraccount/counting_process.hpp"
#include "fraccount/simulation.hpp"

namespace fraccount {

// P{H_j <= t}: first occurrence of a jump of amplitude j,
// lam_j t^nu E_{nu,nu+1}(-lam_j t^nu); equals the k = 1 fractional
// waiting-time CDF at rate lam_j.
double waiting_cdf_Hj(const ProcessSpec& spec, int j, double t);

// P{G^j = n} = (lam_j/Lambda)(1 - lam_j/Lambda)^{n-1}: order of the first
// size-j jump in the jump sequence.
double geometric_order_pmf(const ProcessSpec& spec, int j, std::int64_t n);

struct FptResult {
    double value = 0.0;
    double tail_bound = 0.0;  // bound on the truncated h-tail
    int h_used = 0;
};

// First-passage CDF of tau_n for k = 2, nu = 1, evaluated as the printed
// triple sum with the bivariate law factorized by independent increments:
// P{N(s)=i, N(t)=j} = Pois(Lambda s; i) Pois(Lambda (t-s); j-i).
// Out-of-range binomials count as zero; the inner s-integral runs through
// adaptive quadrature.  h_max = 0 picks the truncation from the Poisson
// tail bound P{N(t) >= h} < 1e-10.
FptResult fpt_cdf_nu1(const ProcessSpec& spec, int n, double t,
                      int h_max = 0);

// Monte Carlo estimate of P{tau_n <= t}: fraction of simulated paths whose
// post-jump state visits exactly n by time t.
McEstimate fpt_cdf_mc(const ProcessSpec& spec, int n, double t,
                      std::int64_t paths, std::uint64_t seed);

}  // namespace fraccount
