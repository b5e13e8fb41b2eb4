#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>

#include "noisemod/params.hpp"
#include "noisemod/theory.hpp"

namespace noisemod {

/// Stop once min_errors bit errors were seen, or give up (and flag the
/// estimate censored) after max_bits simulated bits.
struct StoppingRule {
    std::uint64_t min_errors = 100;
    std::uint64_t max_bits = 100'000'000;
};

/// Monte Carlo bit error rate with a 95% Wilson confidence interval.
/// Fully reproducible from (params, master_seed); worker count never
/// changes the outcome.
struct BerEstimate {
    std::uint64_t errors = 0;
    std::uint64_t trials = 0;
    double ber = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    std::uint64_t master_seed = 0;
    bool censored = false;  ///< hit max_bits before min_errors

    bool operator==(const BerEstimate&) const = default;
};

struct SimOptions {
    int workers = 0;  ///< 0 selects the hardware concurrency
    /// Test hook: fixes every fading power gain |h_i|^2 to this value
    /// instead of drawing Rayleigh coefficients.
    std::optional<double> pin_gain;
};

/// 95% Wilson score interval for errors successes out of trials.
std::pair<double, double> wilson_interval(std::uint64_t errors, std::uint64_t trials);

/// End-to-end simulation: random bit -> variance plan -> noise samples ->
/// channel -> scheme detector -> error count. Trials are seeded
/// individually from (master_seed, trial index) and accumulated in fixed
/// batches, so the result is bit-identical for any worker count.
BerEstimate simulate_ber(const SchemeParams& p, const StoppingRule& rule,
                         std::uint64_t master_seed, int workers = 0);
BerEstimate simulate_ber(const SchemeParams& p, const StoppingRule& rule,
                         std::uint64_t master_seed, const SimOptions& options);

struct OracleEstimate {
    double value = 0.0;
    double std_error = 0.0;
};

/// Independent cross-check for the quadrature averages: samples the gain law
/// of n_slots slots and averages conditional_bep over the draws.
/// Requires draws >= 10^4.
OracleEstimate mc_expectation_oracle(const std::function<double(double)>& conditional_bep,
                                     int n_slots, std::uint64_t draws, std::uint64_t master_seed);

}  // namespace noisemod
