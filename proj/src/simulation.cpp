#include "fraccount/simulation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <thread>

#include "fraccount/fractional_poisson.hpp"

namespace fraccount {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kUniformEps = 1.1102230246251565e-16;  // 2^-53
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

std::uint64_t splitmix64(std::uint64_t z) {
    z += kGolden;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// fixed chunk size keeps reductions independent of the worker count
constexpr std::int64_t kChunk = 4096;

template <typename PerPath>
void run_paths(std::int64_t paths, std::uint64_t seed,
               std::vector<ChunkAccumulator>& chunks, int j_slots,
               PerPath&& per_path) {
    const std::int64_t n_chunks = (paths + kChunk - 1) / kChunk;
    chunks.assign(n_chunks, ChunkAccumulator{});
    for (auto& c : chunks) c.counts.assign(j_slots, 0);

    std::atomic<std::int64_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const std::int64_t ci = next.fetch_add(1);
            if (ci >= n_chunks) return;
            ChunkAccumulator& acc = chunks[ci];
            const std::int64_t lo = ci * kChunk;
            const std::int64_t hi = std::min(paths, lo + kChunk);
            double comp = 0.0;
            for (std::int64_t i = lo; i < hi; ++i) {
                RandomStream rng(
                    RandomSource{seed, static_cast<std::uint64_t>(i)});
                const double v = per_path(rng, acc);
                const double y = v - comp;  // Kahan within the chunk
                const double s = acc.sum + y;
                comp = (s - acc.sum) - y;
                acc.sum = s;
                acc.sum_sq += v * v;
            }
        }
    };

    const int workers = std::min<std::int64_t>(simulation_worker_count(),
                                               std::max<std::int64_t>(n_chunks, 1));
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
}

}  // namespace

int simulation_worker_count() {
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw <= 0) hw = 1;
    if (const char* env = std::getenv("FRACCOUNT_THREADS")) {
        char* end = nullptr;
        const long cap = std::strtol(env, &end, 10);
        if (end != env && cap >= 1) hw = std::min<long>(hw, cap);
    }
    return hw;
}

RandomStream::RandomStream(RandomSource src)
    : key_(splitmix64(splitmix64(src.seed) ^
                      splitmix64(src.stream_id ^ 0x5851F42D4C957F2Dull))) {}

std::uint64_t RandomStream::next_u64() {
    return splitmix64(key_ + (++counter_) * kGolden);
}

double RandomStream::next_uniform() {
    const double u =
        (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    return std::clamp(u, kUniformEps, 1.0 - kUniformEps);
}

double sample_ml_interarrival(double lam, double nu, RandomStream& rng) {
    if (!(lam > 0.0))
        throw std::domain_error("sample_ml_interarrival: lam must be > 0");
    if (!(nu > 0.0) || !(nu > 0.0 && nu <= 1.0))
        throw std::domain_error("sample_ml_interarrival: nu must lie in (0,1]");
    const double u = rng.next_uniform();
    if (nu == 1.0) return -std::log(u) / lam;
    const double v = rng.next_uniform();
    const double bracket =
        std::sin(nu * kPi) / std::tan(nu * kPi * v) - std::cos(nu * kPi);
    return std::pow(lam, -1.0 / nu) * (-std::log(u)) *
           std::pow(bracket, 1.0 / nu);
}

int sample_jump_size(const ProcessSpec& spec, RandomStream& rng) {
    const int k = spec.k();
    if (k == 1) {
        rng.next_u64();  // keep stream alignment uniform across k
        return 1;
    }
    const double u = rng.next_uniform() * spec.Lambda;
    double cum = 0.0;
    for (int j = 1; j < k; ++j) {
        cum += spec.rates[j - 1];
        if (u < cum) return j;
    }
    return k;
}

PathSample simulate_path(const ProcessSpec& spec, double horizon,
                         RandomStream& rng) {
    if (!(horizon > 0.0))
        throw std::domain_error("simulate_path: horizon must be > 0");
    PathSample path;
    path.counters.assign(spec.k(), 0);
    double t = 0.0;
    for (;;) {
        t += sample_ml_interarrival(spec.Lambda, spec.nu, rng);
        if (!(t <= horizon)) break;
        const int j = sample_jump_size(spec, rng);
        path.event_times.push_back(t);
        path.jump_sizes.push_back(j);
        ++path.counters[j - 1];
        path.final_state += j;
    }
    return path;
}

double sample_inverse_stable(double nu, double t, RandomStream& rng) {
    if (!(t > 0.0))
        throw std::domain_error("sample_inverse_stable: t must be > 0");
    if (!(nu > 0.0) || !(nu <= 1.0))
        throw std::domain_error("sample_inverse_stable: nu must lie in (0,1]");
    if (nu == 1.0) return t;  // degenerate inverse subordinator
    // Chambers-Mallows-Stuck, beta = 1, normalized so E[e^{-sD}] = e^{-s^nu}
    const double u = kPi * (rng.next_uniform() - 0.5);
    const double w = -std::log(rng.next_uniform());
    const double a = nu * (u + 0.5 * kPi);
    const double d = std::sin(a) / std::pow(std::cos(u), 1.0 / nu) *
                     std::pow(std::cos(u - a) / w, (1.0 - nu) / nu);
    return std::pow(t / d, nu);
}

std::vector<McEstimate> estimate_pmf(const ProcessSpec& spec, double t,
                                     int j_max, std::int64_t paths,
                                     std::uint64_t seed) {
    if (paths < 100)
        throw std::domain_error("estimate_pmf: needs paths >= 100");
    if (j_max < 0) throw std::domain_error("estimate_pmf: j_max must be >= 0");
    std::vector<ChunkAccumulator> chunks;
    run_paths(paths, seed, chunks, j_max + 1,
              [&](RandomStream& rng, ChunkAccumulator& acc) {
                  const PathSample p = simulate_path(spec, t, rng);
                  if (p.final_state <= j_max) ++acc.counts[p.final_state];
                  return 0.0;
              });
    std::vector<std::int64_t> counts(j_max + 1, 0);
    for (const auto& c : chunks)
        for (int j = 0; j <= j_max; ++j) counts[j] += c.counts[j];
    std::vector<McEstimate> out(j_max + 1);
    for (int j = 0; j <= j_max; ++j) {
        const double p = static_cast<double>(counts[j]) /
                         static_cast<double>(paths);
        out[j] = {p, std::sqrt(p * (1.0 - p) / static_cast<double>(paths)),
                  paths};
    }
    return out;
}

std::vector<CutoffPoint> cutoff_experiment(const ProcessSpec& base_spec,
                                           const std::vector<double>& lam_grid,
                                           double nu, double t, int m,
                                           CutoffMode mode,
                                           std::int64_t paths,
                                           std::uint64_t seed) {
    if (m < 1 || m > 4)
        throw std::domain_error("cutoff_experiment: m must lie in 1..4");
    if (paths < 100)
        throw std::domain_error("cutoff_experiment: needs paths >= 100");
    for (size_t i = 1; i < lam_grid.size(); ++i)
        if (!(lam_grid[i] > lam_grid[i - 1]))
            throw std::domain_error(
                "cutoff_experiment: lam_grid must be increasing");

    std::vector<CutoffPoint> out;
    std::uint64_t grid_index = 0;
    for (double lam : lam_grid) {
        if (!(lam > 0.0))
            throw std::domain_error("cutoff_experiment: rates must be > 0");
        ProcessSpec spec = [&] {
            if (mode == CutoffMode::N) return ProcessSpec(nu, {lam});
            std::vector<double> rates = base_spec.rates;
            rates[0] = lam;
            return ProcessSpec(nu, rates);
        }();
        const double denom =
            mode == CutoffMode::N
                ? moments_n(FpParams{lam, nu, t}, m)
                : moments_m(spec, t, m);
        std::vector<ChunkAccumulator> chunks;
        // separate seed stream block per grid point
        const std::uint64_t point_seed =
            seed ^ (0xA24BAED4963EE407ull * (grid_index + 1));
        run_paths(paths, point_seed, chunks, 1,
                  [&](RandomStream& rng, ChunkAccumulator&) {
                      const PathSample p = simulate_path(spec, t, rng);
                      const double x = static_cast<double>(p.final_state);
                      double xm = 1.0;
                      for (int i = 0; i < m; ++i) xm *= x;
                      return std::abs(xm / denom - 1.0);
                  });
        double sum = 0.0, sum_sq = 0.0;
        for (const auto& c : chunks) {
            sum += c.sum;
            sum_sq += c.sum_sq;
        }
        const double n = static_cast<double>(paths);
        const double mean = sum / n;
        const double var = std::max(0.0, sum_sq / n - mean * mean);
        out.push_back(
            {lam, {mean, std::sqrt(var / n), paths}});
        ++grid_index;
    }
    return out;
}

}  // namespace fraccount
