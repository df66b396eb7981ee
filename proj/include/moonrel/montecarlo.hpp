#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "moonrel/architecture.hpp"

namespace moonrel {

/// RNG algorithm recorded in output metadata alongside seed and run count.
inline constexpr const char* kRngAlgorithm = "splitmix64";

/**
 * SplitMix64 (Steele, Lea & Flood 2014), the fixed-increment variant.
 * Substreams are derived by mixing (seed, run index), so every simulation
 * run owns an independent stream and parallel execution reproduces the
 * serial results bit for bit.
 */
class SplitMix64 {
  public:
    static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;

    explicit SplitMix64(std::uint64_t state) : state_(state) {}

    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Stream for one (seed, run) pair. The run index passes through the
    /// avalanche too; otherwise neighbouring runs would walk overlapping
    /// windows of one shared counter sequence and their draws would be
    /// heavily correlated.
    static SplitMix64 substream(std::uint64_t seed, std::uint64_t run_index) {
        return SplitMix64(mix(mix(seed + kGamma) + run_index));
    }

    std::uint64_t next() { return mix(state_ += kGamma); }

    /// Uniform double in [0, 1), 53 significant bits.
    double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Exponential variate via inverse CDF, -ln(1-u)/lambda. u < 1 strictly,
    /// so the argument never reaches zero.
    double next_exponential(double lambda) { return -std::log(1.0 - next_unit()) / lambda; }

  private:
    std::uint64_t state_;
};

/// Simulation size, seed and evaluation grid.
struct McConfig {
    std::uint64_t runs = 100000;
    std::uint64_t seed = 42;
    std::vector<double> t_grid;
};

/// Per-grid-point survival estimates with 99% normal-approximation CIs.
struct McEstimate {
    std::vector<double> t_grid;
    std::vector<double> estimate;       // R_hat, fraction of runs surviving past t
    std::vector<double> ci99_halfwidth; // 2.576 * sqrt(R_hat (1-R_hat) / runs)
    std::uint64_t runs = 0;
    std::uint64_t seed = 0;

    /// Interval endpoints clipped to [0, 1] for reporting.
    double ci_low(std::size_t i) const { return std::max(0.0, estimate[i] - ci99_halfwidth[i]); }
    double ci_high(std::size_t i) const { return std::min(1.0, estimate[i] + ci99_halfwidth[i]); }
};

namespace detail {

// Index of the first grid value >= t, i.e. the number of grid points the
// failure time survives past. Branch-free binary search; same result as
// std::lower_bound.
inline std::size_t lower_bound_index(const std::vector<double>& grid, double t) {
    std::size_t base = 0, len = grid.size();
    while (len > 1) {
        const std::size_t half = len / 2;
        base += (grid[base + half - 1] < t) ? half : 0;
        len -= half;
    }
    return base + ((len == 1 && grid[base] < t) ? 1 : 0);
}

inline void compare_exchange(double& x, double& y) {
    const double lo = std::min(x, y);
    const double hi = std::max(x, y);
    x = lo;
    y = hi;
}

// Failure time of a k-out-of-n layer: with lifetimes sorted ascending the
// layer drops below k operating components at the (n-k+1)-th failure.
// Branch-free sorting networks for the usual sizes; the lifetimes are
// random, so data-dependent branches would mispredict half the time.
inline double layer_failure_time(double* a, int n, int k) {
    switch (n) {
        case 1:
            break;
        case 2:
            compare_exchange(a[0], a[1]);
            break;
        case 3:
            compare_exchange(a[0], a[1]);
            compare_exchange(a[1], a[2]);
            compare_exchange(a[0], a[1]);
            break;
        case 4:
            compare_exchange(a[0], a[1]);
            compare_exchange(a[2], a[3]);
            compare_exchange(a[0], a[2]);
            compare_exchange(a[1], a[3]);
            compare_exchange(a[1], a[2]);
            break;
        default:
            std::sort(a, a + n);
            break;
    }
    return a[n - k];
}

}  // namespace detail

/**
 * Draws one system lifetime: N_M i.i.d. Exp(lambda_M) MCU lifetimes, then
 * N_S i.i.d. Exp(lambda_S) sensor lifetimes; each layer fails at its
 * (count - threshold + 1)-th smallest lifetime and the system at the
 * earlier of the two.
 */
inline double simulate_failure_time(const ArchitectureSpec& spec, SplitMix64& rng) {
    // Component counts stay tiny, so a fixed buffer and a full sort suffice.
    std::array<double, 64> lifetimes;
    if (spec.n_mcus > 64 || spec.n_sensors > 64)
        throw std::domain_error("simulate_failure_time: component count above 64");

    for (int i = 0; i < spec.n_mcus; ++i)
        lifetimes[i] = rng.next_exponential(spec.lambda_mcu);
    const double mcu_failure =
        detail::layer_failure_time(lifetimes.data(), spec.n_mcus, spec.m_required);

    for (int i = 0; i < spec.n_sensors; ++i)
        lifetimes[i] = rng.next_exponential(spec.lambda_sensor);
    const double sensor_failure =
        detail::layer_failure_time(lifetimes.data(), spec.n_sensors, spec.s_required);

    return std::min(mcu_failure, sensor_failure);
}

/**
 * Estimates the survival curve: R_hat(t) is the fraction of runs whose
 * failure time exceeds t. Runs use per-index substreams, so the estimate
 * is a pure function of (spec, seed, runs, grid).
 */
inline McEstimate estimate_curve(const ArchitectureSpec& spec, const McConfig& cfg) {
    if (cfg.runs < 1)
        throw std::domain_error("estimate_curve: need runs >= 1");
    if (cfg.t_grid.empty())
        throw std::invalid_argument("estimate_curve: empty time grid");
    for (std::size_t i = 0; i < cfg.t_grid.size(); ++i)
        if (!(cfg.t_grid[i] >= 0.0) || (i > 0 && !(cfg.t_grid[i] > cfg.t_grid[i - 1])))
            throw std::invalid_argument("estimate_curve: grid must be ascending and >= 0");

    // bucket[k] counts runs whose failure time exceeds exactly k grid points;
    // the suffix sums then give the per-point survivor counts.
    std::vector<std::uint64_t> bucket(cfg.t_grid.size() + 1, 0);
    for (std::uint64_t run = 0; run < cfg.runs; ++run) {
        SplitMix64 rng = SplitMix64::substream(cfg.seed, run);
        ++bucket[detail::lower_bound_index(cfg.t_grid, simulate_failure_time(spec, rng))];
    }
    std::vector<std::uint64_t> survivors(cfg.t_grid.size(), 0);
    std::uint64_t tail = 0;
    for (std::size_t i = cfg.t_grid.size(); i-- > 0;) {
        tail += bucket[i + 1];
        survivors[i] = tail;
    }

    McEstimate est{cfg.t_grid, {}, {}, cfg.runs, cfg.seed};
    est.estimate.reserve(cfg.t_grid.size());
    est.ci99_halfwidth.reserve(cfg.t_grid.size());
    const double n = static_cast<double>(cfg.runs);
    for (std::uint64_t count : survivors) {
        const double r = static_cast<double>(count) / n;
        est.estimate.push_back(r);
        est.ci99_halfwidth.push_back(2.576 * std::sqrt(r * (1.0 - r) / n));
    }
    return est;
}

}  // namespace moonrel
