#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace fraccount {

// Model parameters of the counting process M^nu(t) with jump amplitudes
// 1..k at rates rates[0..k-1]; Lambda is their sum.
struct ProcessSpec {
    double nu;
    std::vector<double> rates;
    double Lambda = 0.0;

    ProcessSpec(double nu_, std::vector<double> rates_)
        : nu(nu_), rates(std::move(rates_)) {
        if (!(nu > 0.0) || !(nu <= 1.0))
            throw std::domain_error("ProcessSpec: nu must lie in (0,1]");
        if (rates.empty())
            throw std::domain_error("ProcessSpec: needs at least one rate");
        for (double r : rates)
            if (!(r > 0.0))
                throw std::domain_error("ProcessSpec: rates must be > 0");
        for (double r : rates) Lambda += r;
    }

    int k() const { return static_cast<int>(rates.size()); }
    ProcessSpec with_nu(double nu_) const { return {nu_, rates}; }

    // sum_j j^r rates[j-1]
    double rate_power_sum(int r) const {
        double s = 0.0;
        for (int j = 1; j <= k(); ++j)
            s += std::pow(static_cast<double>(j), r) * rates[j - 1];
        return s;
    }
};

// Probability masses p_0..p_{j_max} of M^nu(t) with their sum.
struct PmfTable {
    ProcessSpec spec;
    double t;
    std::vector<double> masses;
    double displayed_mass = 0.0;

    int j_max() const { return static_cast<int>(masses.size()) - 1; }
};

// Composition coefficients c_{j,r} = [x^j] (sum_i rates[i-1] x^i)^r for
// r, j = 0..j_max, computed by iterated truncated polynomial powers
// (dynamic programming over the jump-count / accumulated-amplitude grid).
// coeffs[r][j] holds c_{j,r}.
std::vector<std::vector<double>> composition_coeffs(
    const std::vector<double>& rates, int j_max);

// P{M^nu(t) = j} by the closed form
// sum_{r=0}^j c_{j,r} t^{r nu} E^{r+1}_{nu, r nu + 1}(-Lambda t^nu).
double pmf_m(const ProcessSpec& spec, double t, int j);

// nu = 1 closed form: sum over compositions of rate products / factorials
// times t^r e^{-Lambda t}; independent oracle for pmf_m at nu = 1.
double pmf_m_nu1(const ProcessSpec& spec, double t, int j);

// Table p_0..p_{j_max} with displayed mass (sum of the listed masses).
PmfTable pmf_table(const ProcessSpec& spec, double t, int j_max);

// E[e^{s M^nu(t)}] = E_{nu,1}(sum_j rates_j (e^{js} - 1) t^nu).
double mgf_m(const ProcessSpec& spec, double t, double s);

// Wald mean and total-variance decomposition:
// mean = S1 t^nu / Gamma(nu+1),
// var  = S2 t^nu / Gamma(nu+1) + S1^2 t^{2nu} Z(nu).
std::pair<double, double> mean_var_m(const ProcessSpec& spec, double t);

// Overdispersion factor Z(nu) = (1/nu)(1/Gamma(2 nu) - 1/(nu Gamma(nu)^2)).
double overdispersion_z(double nu);

// E[M^nu(t)^m], m <= 8, by the moment formula with inner derivatives
// d^n/ds^n (e^{js}-1)^i |_0 = i! j^n S(n,i).
double moments_m(const ProcessSpec& spec, double t, int m);

// Transition density of the random time T_{2nu}(t) (inverse nu-stable
// subordinator): (1/t^nu) W_{-nu,1-nu}(-z/t^nu) for z >= 0, else 0.
double folded_density(double nu, double z, double t);

// Upper integration limit Z* with folded-density tail below ~1e-13.
double folded_density_tail_cut(double nu, double t);

// P{M^nu(t) = j} via the subordination integral
// int_0^infty pmf_m_nu1(spec, z, j) folded_density(nu, z, t) dz.
double pmf_via_subordination(const ProcessSpec& spec, double t, int j,
                             double quad_tol);

// Composition identity: lhs = int pmf_m(spec, z, j) folded_density(nu,z,t) dz,
// rhs = pmf_m(spec with nu^2, t, j).
std::pair<double, double> composition_check(const ProcessSpec& spec, double t,
                                            int j, double quad_tol);

}  // namespace fraccount
