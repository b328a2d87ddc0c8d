#include "fraccount/counting_process.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "fraccount/fractional_poisson.hpp"
#include "fraccount/quadrature.hpp"
#include "fraccount/special_functions.hpp"

namespace fraccount {

namespace {

// Weighted composition table W[r][j] = c_{j,r} / r!; the nu = 1 pmf is
// e^{-Lambda t} sum_r W[r][j] t^r and avoids the large c / r! split.
std::vector<std::vector<double>> weighted_coeffs(
    const std::vector<double>& rates, int j_max) {
    const int k = static_cast<int>(rates.size());
    std::vector<std::vector<double>> w(
        j_max + 1, std::vector<double>(j_max + 1, 0.0));
    w[0][0] = 1.0;
    for (int r = 1; r <= j_max; ++r)
        for (int j = 1; j <= j_max; ++j) {
            double s = 0.0;
            for (int i = 1; i <= std::min(k, j); ++i)
                s += rates[i - 1] * w[r - 1][j - i];
            w[r][j] = s / r;
        }
    return w;
}

double pmf_m_with_coeffs(const ProcessSpec& spec, double t, int j,
                         const std::vector<std::vector<double>>& coeffs) {
    if (t == 0.0) return j == 0 ? 1.0 : 0.0;
    const double x = spec.Lambda * std::pow(t, spec.nu);
    double total = 0.0;
    double lam_pow = 1.0;  // Lambda^r
    for (int r = 0; r <= j; ++r) {
        const double c = coeffs[r][j];
        if (c != 0.0) {
            const double e =
                prabhakar_scaled(spec.nu, r * spec.nu + 1.0, r + 1.0, x, r)
                    .value;
            total += c / lam_pow * e;
        }
        lam_pow *= spec.Lambda;
    }
    return std::clamp(total, 0.0, 1.0);
}

void enumerate_compositions(int total, int parts,
                            std::vector<int>& scratch,
                            const std::function<void(const std::vector<int>&)>& emit) {
    if (parts == 1) {
        scratch.push_back(total);
        emit(scratch);
        scratch.pop_back();
        return;
    }
    for (int first = 0; first <= total; ++first) {
        scratch.push_back(first);
        enumerate_compositions(total - first, parts - 1, scratch, emit);
        scratch.pop_back();
    }
}

}  // namespace

std::vector<std::vector<double>> composition_coeffs(
    const std::vector<double>& rates, int j_max) {
    const int k = static_cast<int>(rates.size());
    std::vector<std::vector<double>> c(
        j_max + 1, std::vector<double>(j_max + 1, 0.0));
    c[0][0] = 1.0;
    for (int r = 1; r <= j_max; ++r)
        for (int j = 1; j <= j_max; ++j) {
            double s = 0.0;
            for (int i = 1; i <= std::min(k, j); ++i)
                s += rates[i - 1] * c[r - 1][j - i];
            c[r][j] = s;
        }
    return c;
}

double pmf_m(const ProcessSpec& spec, double t, int j) {
    if (j < 0) throw std::domain_error("pmf_m: j must be >= 0");
    if (!(t >= 0.0)) throw std::domain_error("pmf_m: t must be >= 0");
    return pmf_m_with_coeffs(spec, t, j, composition_coeffs(spec.rates, j));
}

double pmf_m_nu1(const ProcessSpec& spec, double t, int j) {
    if (spec.nu != 1.0)
        throw std::domain_error("pmf_m_nu1: requires nu = 1");
    if (j < 0) throw std::domain_error("pmf_m_nu1: j must be >= 0");
    if (!(t >= 0.0)) throw std::domain_error("pmf_m_nu1: t must be >= 0");
    if (t == 0.0) return j == 0 ? 1.0 : 0.0;
    const auto w = weighted_coeffs(spec.rates, j);
    double poly = 0.0;
    double tp = 1.0;
    for (int r = 0; r <= j; ++r) {
        poly += w[r][j] * tp;
        tp *= t;
    }
    return std::clamp(poly * std::exp(-spec.Lambda * t), 0.0, 1.0);
}

PmfTable pmf_table(const ProcessSpec& spec, double t, int j_max) {
    if (j_max < 0) throw std::domain_error("pmf_table: j_max must be >= 0");
    if (!(t >= 0.0)) throw std::domain_error("pmf_table: t must be >= 0");
    const auto coeffs = composition_coeffs(spec.rates, j_max);
    PmfTable table{spec, t, {}, 0.0};
    table.masses.reserve(j_max + 1);
    for (int j = 0; j <= j_max; ++j) {
        const double p = pmf_m_with_coeffs(spec, t, j, coeffs);
        table.masses.push_back(p);
        table.displayed_mass += p;
    }
    return table;
}

double mgf_m(const ProcessSpec& spec, double t, double s) {
    if (!(t >= 0.0)) throw std::domain_error("mgf_m: t must be >= 0");
    double z = 0.0;
    for (int j = 1; j <= spec.k(); ++j)
        z += spec.rates[j - 1] * std::expm1(j * s);
    z *= std::pow(t, spec.nu);
    return mittag_leffler(spec.nu, 1.0, z).value;
}

double overdispersion_z(double nu) {
    if (!(nu > 0.0) || !(nu <= 1.0))
        throw std::domain_error("overdispersion_z: nu must lie in (0,1]");
    return (1.0 / nu) *
           (1.0 / gamma_fn(2.0 * nu) - 1.0 / (nu * gamma_fn(nu) * gamma_fn(nu)));
}

std::pair<double, double> mean_var_m(const ProcessSpec& spec, double t) {
    if (!(t >= 0.0)) throw std::domain_error("mean_var_m: t must be >= 0");
    const double s1 = spec.rate_power_sum(1);
    const double s2 = spec.rate_power_sum(2);
    const double tn = std::pow(t, spec.nu);
    const double mean = s1 * tn / gamma_fn(spec.nu + 1.0);
    const double var = s2 * tn / gamma_fn(spec.nu + 1.0) +
                       s1 * s1 * tn * tn * overdispersion_z(spec.nu);
    return {mean, var};
}

double moments_m(const ProcessSpec& spec, double t, int m) {
    if (m < 0) throw std::domain_error("moments_m: m must be >= 0");
    if (m > 8) throw std::domain_error("moments_m: desk-scale limit m <= 8");
    if (!(t >= 0.0)) throw std::domain_error("moments_m: t must be >= 0");
    if (m == 0) return 1.0;
    const int k = spec.k();
    const double tn = std::pow(t, spec.nu);

    double m_fact = 1.0;
    for (int i = 2; i <= m; ++i) m_fact *= i;

    double total = 0.0;
    std::vector<int> scratch;
    for (int r = 0; r <= m; ++r) {
        const double outer = std::pow(tn, r) / gamma_fn(r * spec.nu + 1.0);
        double r_fact = 1.0;
        for (int i = 2; i <= r; ++i) r_fact *= i;
        double inner_sum = 0.0;
        enumerate_compositions(r, k, scratch, [&](const std::vector<int>& iv) {
            double weight = r_fact;
            for (int j = 0; j < k; ++j) {
                double f = 1.0;
                for (int i = 2; i <= iv[j]; ++i) f *= i;
                weight *= std::pow(spec.rates[j], iv[j]) / f;
            }
            if (weight == 0.0) return;
            // m-th coefficient of prod_j (e^{js}-1)^{i_j} via the exact
            // per-factor derivatives i! j^n S(n,i) / n!, composed by
            // truncated convolution.
            std::vector<double> poly(m + 1, 0.0);
            poly[0] = 1.0;
            for (int j = 1; j <= k; ++j) {
                const int ij = iv[j - 1];
                if (ij == 0) continue;
                double i_fact = 1.0;
                for (int i = 2; i <= ij; ++i) i_fact *= i;
                std::vector<double> factor(m + 1, 0.0);
                double n_fact = 1.0;
                for (int n = 0; n <= m; ++n) {
                    if (n > 0) n_fact *= n;
                    if (n < ij) continue;  // S(n,i) = 0 below the diagonal
                    factor[n] = i_fact * std::pow(double(j), n) *
                                static_cast<double>(stirling2(n, ij)) / n_fact;
                }
                std::vector<double> next(m + 1, 0.0);
                for (int aa = 0; aa <= m; ++aa) {
                    if (poly[aa] == 0.0) continue;
                    for (int bb = 0; aa + bb <= m; ++bb)
                        next[aa + bb] += poly[aa] * factor[bb];
                }
                poly.swap(next);
            }
            inner_sum += weight * poly[m];
        });
        total += outer * inner_sum * m_fact;
    }
    return total;
}

double folded_density(double nu, double z, double t) {
    if (!(nu > 0.0) || !(nu < 1.0))
        throw std::domain_error("folded_density: nu must lie in (0,1)");
    if (!(t > 0.0)) throw std::domain_error("folded_density: requires t > 0");
    if (z < 0.0) return 0.0;
    const double tn = std::pow(t, nu);
    return wright_m(nu, z / tn).value / tn;
}

double folded_density_tail_cut(double nu, double t) {
    const double tn = std::pow(t, nu);
    // asymptotic decay exponent (1-nu)/nu * sigma*, sigma* = (u nu)^{1/(1-nu)}
    const double sigma_star = 34.0 * nu / (1.0 - nu);
    double u = std::pow(sigma_star, 1.0 - nu) / nu;
    u = std::max(u, 4.0);
    double z = u * tn;
    for (int i = 0; i < 60; ++i) {
        if (folded_density(nu, z, t) < 1e-13 / std::max(tn, 1.0)) return z;
        z *= 2.0;
    }
    throw quadrature_error("folded_density_tail_cut: tail not located");
}

double pmf_via_subordination(const ProcessSpec& spec, double t, int j,
                             double quad_tol) {
    if (!(t > 0.0))
        throw std::domain_error("pmf_via_subordination: requires t > 0");
    if (j < 0)
        throw std::domain_error("pmf_via_subordination: j must be >= 0");
    if (spec.nu == 1.0) {
        // T_2(t) degenerates to a point mass at t
        return pmf_m_nu1(spec, t, j);
    }
    const auto w = weighted_coeffs(spec.rates, j);
    auto pmf1 = [&](double z) {
        double poly = 0.0, zp = 1.0;
        for (int r = 0; r <= j; ++r) {
            poly += w[r][j] * zp;
            zp *= z;
        }
        return poly * std::exp(-spec.Lambda * z);
    };
    const double zcut = folded_density_tail_cut(spec.nu, t);
    const auto q = integrate_gk(
        [&](double z) { return pmf1(z) * folded_density(spec.nu, z, t); },
        0.0, zcut, quad_tol);
    return q.value;
}

std::pair<double, double> composition_check(const ProcessSpec& spec, double t,
                                            int j, double quad_tol) {
    if (!(spec.nu > 0.0) || !(spec.nu < 1.0))
        throw std::domain_error("composition_check: nu must lie in (0,1)");
    if (!(t > 0.0))
        throw std::domain_error("composition_check: requires t > 0");
    const auto coeffs = composition_coeffs(spec.rates, j);
    const double zcut = folded_density_tail_cut(spec.nu, t);
    const auto q = integrate_gk(
        [&](double z) {
            return pmf_m_with_coeffs(spec, z, j, coeffs) *
                   folded_density(spec.nu, z, t);
        },
        0.0, zcut, quad_tol);
    const double rhs = pmf_m_with_coeffs(spec.with_nu(spec.nu * spec.nu), t,
                                         j, coeffs);
    return {q.value, rhs};
}

}  // namespace fraccount
