#include "noisemod/detect.hpp"

#include <stdexcept>

namespace noisemod {

namespace {

ThresholdSpec harmonic_threshold(double var0, double var1, double sigma_w_sq) {
    const double gamma = 2.0 * var0 * var1 / (var0 + var1);
    return ThresholdSpec{gamma, gamma / sigma_w_sq};
}

}  // namespace

double sample_variance(std::span<const ComplexSample> samples) {
    if (samples.empty()) throw std::invalid_argument("sample_variance needs at least one sample");
    double acc = 0.0;
    for (const auto& s : samples) acc += std::norm(s);
    return acc / static_cast<double>(samples.size());
}

ThresholdSpec threshold_thermod(const SchemeParams& p) {
    const double var0 = p.awgn_variance * (1.0 + p.delta);
    const double var1 = p.awgn_variance * (1.0 + p.alpha * p.delta);
    return harmonic_threshold(var0, var1, p.awgn_variance);
}

ThresholdSpec threshold_noisemod(const SchemeParams& p, const ChannelRealization& h) {
    if (h.n_slots() != 1)
        throw std::invalid_argument("threshold_noisemod expects a single-coefficient realization");
    const double g = h.gain(0);
    const double var0 = p.awgn_variance * (1.0 + g * p.delta);
    const double var1 = p.awgn_variance * (1.0 + g * p.alpha * p.delta);
    return harmonic_threshold(var0, var1, p.awgn_variance);
}

ThresholdSpec threshold_td(const SchemeParams& p, const ChannelRealization& h) {
    if (h.n_slots() < 1) throw std::invalid_argument("threshold_td needs at least one coefficient");
    const double mean_gain = h.mean_gain();
    const double var0 = p.awgn_variance * (1.0 + mean_gain * p.delta);
    const double var1 = p.awgn_variance * (1.0 + mean_gain * p.alpha * p.delta);
    return harmonic_threshold(var0, var1, p.awgn_variance);
}

int decide_threshold(double sigma_hat, const ThresholdSpec& t) {
    return sigma_hat > t.gamma ? 1 : 0;
}

int decide_nc(std::span<const ComplexSample> samples) {
    if (samples.empty() || samples.size() % 2 != 0)
        throw std::invalid_argument("decide_nc needs a non-empty, even-length block");
    const std::size_t half = samples.size() / 2;
    const double first = sample_variance(samples.first(half));
    const double second = sample_variance(samples.last(half));
    return first > second ? 1 : 0;
}

}  // namespace noisemod
