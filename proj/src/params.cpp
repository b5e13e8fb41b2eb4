#include "noisemod/params.hpp"

#include <cmath>
#include <stdexcept>

namespace noisemod {

const char* scheme_name(Scheme s) {
    switch (s) {
        case Scheme::TherMod: return "thermod";
        case Scheme::NoiseMod: return "noisemod";
        case Scheme::NcNoiseMod: return "nc-noisemod";
        case Scheme::TdNoiseMod: return "td-noisemod";
    }
    return "?";
}

Scheme scheme_from_name(const std::string& name) {
    if (name == "thermod") return Scheme::TherMod;
    if (name == "noisemod") return Scheme::NoiseMod;
    if (name == "nc-noisemod") return Scheme::NcNoiseMod;
    if (name == "td-noisemod") return Scheme::TdNoiseMod;
    throw std::invalid_argument("unknown scheme '" + name +
                                "' (expected thermod, noisemod, nc-noisemod or td-noisemod)");
}

SchemeParams validate_params(const SchemeParams& p) {
    if (!(p.alpha > 0.0) || !std::isfinite(p.alpha))
        throw std::invalid_argument("alpha must be positive and finite");
    if (!(p.delta > 0.0) || !std::isfinite(p.delta))
        throw std::invalid_argument("delta must be positive and finite");
    if (p.n_samples < 1)
        throw std::invalid_argument("n_samples must be a positive integer");
    if (p.n_slots < 1)
        throw std::invalid_argument("n_slots must be >= 1");
    if (!(p.awgn_variance > 0.0) || !std::isfinite(p.awgn_variance))
        throw std::invalid_argument("awgn_variance must be positive and finite");
    if (p.scheme == Scheme::NcNoiseMod && p.n_samples % 2 != 0)
        throw std::invalid_argument("nc-noisemod requires even N");
    if (p.scheme == Scheme::TdNoiseMod) {
        if (p.n_samples % p.n_slots != 0)
            throw std::invalid_argument("td-noisemod requires N divisible by I");
    } else if (p.n_slots != 1) {
        throw std::invalid_argument("n_slots must be 1 for non-time-diversity schemes");
    }
    return p;
}

double ChannelRealization::total_gain() const {
    double g = 0.0;
    for (const auto& h : coefficients) g += std::norm(h);
    return g;
}

double ChannelRealization::mean_gain() const {
    if (coefficients.empty()) return 0.0;
    return total_gain() / static_cast<double>(coefficients.size());
}

double db_to_linear(double x_db) { return std::pow(10.0, x_db / 10.0); }

double linear_to_db(double x) {
    if (!(x > 0.0)) throw std::invalid_argument("linear_to_db requires a positive value");
    return 10.0 * std::log10(x);
}

}  // namespace noisemod
