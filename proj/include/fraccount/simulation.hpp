#pragma once

#include <cstdint>
#include <vector>

#include "fraccount/counting_process.hpp"

namespace fraccount {

// Counter-based random stream: output r is a bijective 64-bit mix of
// (key(seed, stream_id) + r * golden).  Same (seed, stream_id) gives the
// same sequence on every platform; distinct stream_ids give statistically
// independent streams (SplitMix64 finalizer).
struct RandomSource {
    std::uint64_t seed = 0;
    std::uint64_t stream_id = 0;
};

class RandomStream {
public:
    explicit RandomStream(RandomSource src);

    std::uint64_t next_u64();
    // uniform in the open interval (0,1), clamped to [2^-53, 1 - 2^-53]
    double next_uniform();

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

// One simulated trajectory of M^nu(t) on (0, horizon].
struct PathSample {
    std::vector<double> event_times;   // strictly increasing
    std::vector<int> jump_sizes;       // in 1..k, same length
    std::vector<std::int64_t> counters;  // counters[j-1] = # jumps of size j
    std::int64_t final_state = 0;      // sum of jump sizes
};

// Monte Carlo point estimate with standard error.
struct McEstimate {
    double estimate = 0.0;
    double std_error = 0.0;
    std::int64_t n_samples = 0;
};

// Mittag-Leffler interarrival time: survival E_{nu,1}(-lam t^nu); exact
// two-uniform transform, exponential at nu = 1.
double sample_ml_interarrival(double lam, double nu, RandomStream& rng);

// Jump amplitude with P{X = j} = rates[j-1] / Lambda.
int sample_jump_size(const ProcessSpec& spec, RandomStream& rng);

// Renewal construction of M^nu on (0, horizon].
PathSample simulate_path(const ProcessSpec& spec, double horizon,
                         RandomStream& rng);

// Marginal of the inverse nu-stable subordinator at time t: (t/D)^nu with
// D one-sided nu-stable (Chambers-Mallows-Stuck, total skewness).
double sample_inverse_stable(double nu, double t, RandomStream& rng);

// Per-state proportion estimates P{M^nu(t) = j}, j = 0..j_max.
// Deterministic for fixed (seed, paths) regardless of worker count.
std::vector<McEstimate> estimate_pmf(const ProcessSpec& spec, double t,
                                     int j_max, std::int64_t paths,
                                     std::uint64_t seed);

enum class CutoffMode { N, M };

struct CutoffPoint {
    double lam;
    McEstimate dist;  // E| X^m / E[X^m] - 1 |
};

// Cut-off experiment: for each lam in lam_grid estimate E|ratio - 1| where
// ratio = N^nu_lam(t)^m / E[...] (mode N) or M^nu(t)^m / E[...] with the
// first rate of base_spec replaced by lam (mode M).  Analytic denominators.
std::vector<CutoffPoint> cutoff_experiment(const ProcessSpec& base_spec,
                                           const std::vector<double>& lam_grid,
                                           double nu, double t, int m,
                                           CutoffMode mode,
                                           std::int64_t paths,
                                           std::uint64_t seed);

// Worker cap honoring FRACCOUNT_THREADS; >= 1.
int simulation_worker_count();

// Deterministic parallel map-reduce over path indices: results are
// accumulated per fixed-size chunk and merged in chunk order, so the
// outcome is independent of the number of workers.
struct ChunkAccumulator {
    double sum = 0.0;
    double sum_sq = 0.0;
    std::vector<std::int64_t> counts;
};

}  // namespace fraccount
