#include "fraccount/hitting_times.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <vector>

#include "fraccount/quadrature.hpp"
#include "fraccount/special_functions.hpp"

namespace fraccount {

namespace {

double binom(int a, int b) {
    if (b < 0 || b > a) return 0.0;  // out-of-range coefficients vanish
    double r = 1.0;
    for (int i = 1; i <= b; ++i) r = r * (a - b + i) / i;
    return r;
}

double poisson_pmf(double mean, int n) {
    if (n < 0) return 0.0;
    if (mean == 0.0) return n == 0 ? 1.0 : 0.0;
    return std::exp(n * std::log(mean) - mean - std::lgamma(n + 1.0));
}

}  // namespace

double waiting_cdf_Hj(const ProcessSpec& spec, int j, double t) {
    if (j < 1 || j > spec.k())
        throw std::domain_error("waiting_cdf_Hj: amplitude j out of 1..k");
    if (!(t >= 0.0)) throw std::domain_error("waiting_cdf_Hj: t must be >= 0");
    if (t == 0.0) return 0.0;
    const double x = spec.rates[j - 1] * std::pow(t, spec.nu);
    const double v =
        prabhakar_scaled(spec.nu, spec.nu + 1.0, 1.0, x, 1.0).value;
    return std::clamp(v, 0.0, 1.0);
}

double geometric_order_pmf(const ProcessSpec& spec, int j, std::int64_t n) {
    if (j < 1 || j > spec.k())
        throw std::domain_error("geometric_order_pmf: amplitude j out of 1..k");
    if (n < 1) throw std::domain_error("geometric_order_pmf: n must be >= 1");
    const double p = spec.rates[j - 1] / spec.Lambda;
    return p * std::pow(1.0 - p, static_cast<double>(n - 1));
}

FptResult fpt_cdf_nu1(const ProcessSpec& spec, int n, double t, int h_max) {
    if (spec.k() != 2)
        throw std::domain_error("fpt_cdf_nu1: requires k = 2");
    if (spec.nu != 1.0)
        throw std::domain_error("fpt_cdf_nu1: requires nu = 1");
    if (n < 1) throw std::domain_error("fpt_cdf_nu1: n must be >= 1");
    if (!(t >= 0.0)) throw std::domain_error("fpt_cdf_nu1: t must be >= 0");
    FptResult out;
    if (t == 0.0) return out;

    const double lam = spec.Lambda;
    const double p1 = spec.rates[0] / lam;
    const double p2 = spec.rates[1] / lam;

    if (h_max <= 0) {
        // smallest H with P{N(t) >= H} < 1e-10
        double tail = 1.0, cum = 0.0;
        int h = 0;
        while (tail >= 1e-10 && h < 500) {
            cum += poisson_pmf(lam * t, h);
            tail = 1.0 - cum;
            ++h;
        }
        h_max = std::max(h, n + 2);
    }
    out.h_used = h_max;

    for (int h = n; h <= h_max; ++h) {
        for (int j = (h + 1) / 2; j <= h; ++j) {
            for (int i = 1; i <= j; ++i) {
                const double b1 = binom(i, n - i);
                if (b1 == 0.0) continue;
                const double b2 = binom(j - i, h - n - j + i);
                if (b2 == 0.0) continue;
                const double weight =
                    b1 * b2 * std::pow(p1, 2 * j - h) * std::pow(p2, h - j);
                // int_0^t Pois(lam s; i) Pois(lam (t-s); j-i) ds
                const auto q = integrate_gk(
                    [&](double s) {
                        return poisson_pmf(lam * s, i) *
                               poisson_pmf(lam * (t - s), j - i);
                    },
                    0.0, t, 1e-12 * std::max(1.0, t));
                out.value += weight * q.value;
            }
        }
    }
    // crude tail bound: time horizon times the Poisson tail beyond h_max
    double cum = 0.0;
    for (int h = 0; h <= h_max; ++h) cum += poisson_pmf(lam * t, h);
    out.tail_bound = t * std::max(0.0, 1.0 - cum);
    return out;
}

McEstimate fpt_cdf_mc(const ProcessSpec& spec, int n, double t,
                      std::int64_t paths, std::uint64_t seed) {
    if (n < 1) throw std::domain_error("fpt_cdf_mc: n must be >= 1");
    if (paths < 1) throw std::domain_error("fpt_cdf_mc: needs paths >= 1");
    if (!(t > 0.0)) throw std::domain_error("fpt_cdf_mc: t must be > 0");

    constexpr std::int64_t chunk = 4096;
    const std::int64_t n_chunks = (paths + chunk - 1) / chunk;
    std::vector<std::int64_t> hits(n_chunks, 0);
    std::atomic<std::int64_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const std::int64_t ci = next.fetch_add(1);
            if (ci >= n_chunks) return;
            const std::int64_t lo = ci * chunk;
            const std::int64_t hi = std::min(paths, lo + chunk);
            std::int64_t h = 0;
            for (std::int64_t i = lo; i < hi; ++i) {
                RandomStream rng(
                    RandomSource{seed, static_cast<std::uint64_t>(i)});
                double clock = 0.0;
                std::int64_t state = 0;
                for (;;) {
                    clock += sample_ml_interarrival(spec.Lambda, spec.nu, rng);
                    if (!(clock <= t)) break;
                    state += sample_jump_size(spec, rng);
                    if (state >= n) {
                        if (state == n) ++h;
                        break;
                    }
                }
            }
            hits[ci] = h;
        }
    };
    const int workers =
        std::min<std::int64_t>(simulation_worker_count(), n_chunks);
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    std::int64_t total = 0;
    for (auto h : hits) total += h;
    const double p = static_cast<double>(total) / static_cast<double>(paths);
    return {p, std::sqrt(p * (1.0 - p) / static_cast<double>(paths)), paths};
}

}  // namespace fraccount
