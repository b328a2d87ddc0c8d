#pragma once

#include <cstdint>
#include <stdexcept>

namespace fraccount {

// Parameters of the fractional Poisson process N^nu_lam(t).
struct FpParams {
    double lam;  // rate, > 0
    double nu;   // fractional order, in (0,1]
    double t;    // time, >= 0

    void validate() const {
        if (!(lam > 0.0)) throw std::domain_error("FpParams: lam must be > 0");
        if (!(nu > 0.0) || !(nu <= 1.0))
            throw std::domain_error("FpParams: nu must lie in (0,1]");
        if (!(t >= 0.0)) throw std::domain_error("FpParams: t must be >= 0");
    }
};

// Density of the k-th event waiting time T_k: lam^k t^{k nu - 1}
// E^k_{nu, k nu}(-lam t^nu).  Defined on t > 0.
double waiting_pdf(const FpParams& p, int k);

// P{T_k <= t} = lam^k t^{k nu} E^k_{nu, k nu + 1}(-lam t^nu); k = 0 gives 1.
double waiting_cdf(const FpParams& p, int k);

// P{N^nu_lam(t) = n} = (lam t^nu)^n E^{n+1}_{nu, n nu + 1}(-lam t^nu).
double pmf_n(const FpParams& p, int n);

// E[e^{s N(t)}] = E_{nu,1}(lam (e^s - 1) t^nu).
double mgf_n(const FpParams& p, double s);

// Stirling number of the second kind S(m,l), exact integer recurrence.
std::uint64_t stirling2(int m, int l);

// Fractional Stirling number S_nu(m,l) = S(m,l) l! / Gamma(l nu + 1).
double fractional_stirling(int m, int l, double nu);

// E[N(t)^m] = sum_{l=0}^m S_nu(m,l) (lam t^nu)^l, m <= 10.
double moments_n(const FpParams& p, int m);

}  // namespace fraccount
