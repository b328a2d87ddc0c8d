#include "fraccount/fractional_poisson.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fraccount/special_functions.hpp"

namespace fraccount {

double waiting_pdf(const FpParams& p, int k) {
    p.validate();
    if (k < 1) throw std::domain_error("waiting_pdf: k must be >= 1");
    if (!(p.t > 0.0))
        throw std::domain_error("waiting_pdf: density defined on t > 0");
    const double x = p.lam * std::pow(p.t, p.nu);
    return prabhakar_scaled(p.nu, k * p.nu, k, x, k).value / p.t;
}

double waiting_cdf(const FpParams& p, int k) {
    p.validate();
    if (k < 0) throw std::domain_error("waiting_cdf: k must be >= 0");
    if (k == 0) return 1.0;
    if (p.t == 0.0) return 0.0;
    const double x = p.lam * std::pow(p.t, p.nu);
    const double v = prabhakar_scaled(p.nu, k * p.nu + 1.0, k, x, k).value;
    return std::clamp(v, 0.0, 1.0);
}

double pmf_n(const FpParams& p, int n) {
    p.validate();
    if (n < 0) throw std::domain_error("pmf_n: n must be >= 0");
    if (p.t == 0.0) return n == 0 ? 1.0 : 0.0;
    const double x = p.lam * std::pow(p.t, p.nu);
    const double v =
        prabhakar_scaled(p.nu, n * p.nu + 1.0, n + 1.0, x, n).value;
    return std::clamp(v, 0.0, 1.0);
}

double mgf_n(const FpParams& p, double s) {
    p.validate();
    const double z = p.lam * std::expm1(s) * std::pow(p.t, p.nu);
    return mittag_leffler(p.nu, 1.0, z).value;
}

std::uint64_t stirling2(int m, int l) {
    if (m < 0 || l < 0 || l > m)
        throw std::domain_error("stirling2: need 0 <= l <= m");
    if (m > 20)
        throw std::domain_error("stirling2: exact table limited to m <= 20");
    // triangle S(m,l) = l S(m-1,l) + S(m-1,l-1)
    std::uint64_t row[22] = {0};
    row[0] = 1;
    for (int i = 1; i <= m; ++i) {
        for (int j = i; j >= 1; --j)
            row[j] = static_cast<std::uint64_t>(j) * row[j] + row[j - 1];
        row[0] = 0;
    }
    return row[l];
}

double fractional_stirling(int m, int l, double nu) {
    if (l > m || l < 0 || m < 0)
        throw std::domain_error("fractional_stirling: need 0 <= l <= m");
    if (!(nu > 0.0) || !(nu > 0.0 && nu <= 1.0))
        throw std::domain_error("fractional_stirling: nu must lie in (0,1]");
    double fact = 1.0;
    for (int i = 2; i <= l; ++i) fact *= i;
    return static_cast<double>(stirling2(m, l)) * fact /
           gamma_fn(l * nu + 1.0);
}

double moments_n(const FpParams& p, int m) {
    p.validate();
    if (m < 0) throw std::domain_error("moments_n: m must be >= 0");
    if (m > 10)
        throw std::domain_error("moments_n: desk-scale limit m <= 10");
    const double x = p.lam * std::pow(p.t, p.nu);
    double total = 0.0;
    double xl = 1.0;
    for (int l = 0; l <= m; ++l) {
        total += fractional_stirling(m, l, p.nu) * xl;
        xl *= x;
    }
    return total;
}

}  // namespace fraccount
