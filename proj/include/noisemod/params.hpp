#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace noisemod {

/// One complex baseband sample.
using ComplexSample = std::complex<double>;

/// Modulation schemes that embed bits in the noise variance.
enum class Scheme {
    TherMod,     ///< thermal-noise variant, pure AWGN channel
    NoiseMod,    ///< externally generated noise, flat Rayleigh fading
    NcNoiseMod,  ///< non-coherent: low/high variance halves per bit
    TdNoiseMod,  ///< time diversity: bit split into independently faded slots
};

const char* scheme_name(Scheme s);
Scheme scheme_from_name(const std::string& name);

/// Full parameter tuple for one operating point.
///
/// alpha is the ratio of bit-1 to bit-0 information-noise variance, delta the
/// ratio of bit-0 information-noise variance to the AWGN variance. The two
/// transmit variance levels are delta*awgn_variance and
/// alpha*delta*awgn_variance.
struct SchemeParams {
    Scheme scheme = Scheme::NoiseMod;
    double alpha = 10.0;
    double delta = 1.0;
    int n_samples = 120;        ///< noise samples per bit
    int n_slots = 1;            ///< time-diversity slots per bit (1 unless TD)
    double awgn_variance = 1.0;

    double low_variance() const { return delta * awgn_variance; }
    double high_variance() const { return alpha * delta * awgn_variance; }
    int samples_per_slot() const { return n_samples / n_slots; }

    bool operator==(const SchemeParams&) const = default;
};

/// Checks every SchemeParams invariant, returning the params unchanged.
/// Throws std::invalid_argument naming the first violated invariant.
SchemeParams validate_params(const SchemeParams& p);

/// Fading coefficients seen by one bit: one entry per slot (one for non-TD).
struct ChannelRealization {
    std::vector<ComplexSample> coefficients;

    int n_slots() const { return static_cast<int>(coefficients.size()); }
    double gain(int slot) const { return std::norm(coefficients[static_cast<std::size_t>(slot)]); }
    /// Sum of per-slot power gains.
    double total_gain() const;
    /// Mean of per-slot power gains.
    double mean_gain() const;
};

double db_to_linear(double x_db);
double linear_to_db(double x);  ///< throws std::invalid_argument for x <= 0

}  // namespace noisemod
