#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "noisemod/sweep.hpp"

namespace noisemod {

/// Invalid or unknown content in a `key = value` run configuration file.
class ConfigError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Custom sweep description loaded from a flat key = value file; see
/// parse_run_config for the accepted keys. Values left unset fall back to
/// the documented defaults.
struct RunConfig {
    SweepAxis axis = SweepAxis::DeltaDb;
    std::vector<double> axis_values;
    std::vector<Scheme> schemes{Scheme::NoiseMod};
    std::vector<int> n_list;             ///< one curve per entry when axis = delta_db
    std::vector<double> delta_db_list;   ///< one curve per entry when axis = n
    double alpha = 10.0;
    int n_slots = 2;
    double sigma_w_sq = 1.0;
    std::uint64_t seed = 1;
    std::uint64_t min_errors = 100;
    std::uint64_t max_bits = 100'000'000;
    int workers = 0;
    bool with_theory = true;
    bool with_sim = true;
    bool with_reference = false;
    bool both_td_variants = false;
    TdVariant td_variant = kDefaultTdVariant;
    std::string out_dir = "results";
};

RunConfig parse_run_config(const std::string& text);
SweepSpec sweep_from_config(const RunConfig& config);

/// Entry point behind the `noisemod` binary. Exit codes: 0 success,
/// 1 flag/parameter validation error, 2 config file error, 3 quadrature
/// non-convergence.
int cli_main(int argc, const char* const* argv);

}  // namespace noisemod
