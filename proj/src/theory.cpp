#include "noisemod/theory.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace noisemod {

double q_function(double x) { return 0.5 * std::erfc(x * (1.0 / std::numbers::sqrt2)); }

double bep_thermod(const SchemeParams& p) {
    const double num = std::sqrt(static_cast<double>(p.n_samples)) * p.delta * (p.alpha - 1.0);
    const double den = 2.0 + p.delta * (p.alpha + 1.0);
    return q_function(num / den);
}

double bep_noisemod_conditional(const SchemeParams& p, double h_sq) {
    if (h_sq < 0.0) throw std::invalid_argument("h_sq must be non-negative");
    const double num = std::sqrt(static_cast<double>(p.n_samples)) * h_sq * p.delta * (p.alpha - 1.0);
    const double den = 2.0 + h_sq * p.delta * (p.alpha + 1.0);
    return q_function(num / den);
}

double bep_nc_conditional(const SchemeParams& p, double h_sq) {
    if (h_sq < 0.0) throw std::invalid_argument("h_sq must be non-negative");
    if (p.n_samples % 2 != 0)
        throw std::invalid_argument("nc-noisemod error probability requires even N");
    const double num =
        std::sqrt(static_cast<double>(p.n_samples) / 2.0) * h_sq * p.delta * (p.alpha - 1.0);
    const double high = 1.0 + h_sq * p.delta * p.alpha;
    const double low = 1.0 + h_sq * p.delta;
    return q_function(num / std::sqrt(high * high + low * low));
}

const char* td_variant_name(TdVariant v) {
    return v == TdVariant::AsPrinted ? "as-printed" : "rederived";
}

double bep_td_conditional(const SchemeParams& p, double g, TdVariant variant) {
    if (g < 0.0) throw std::invalid_argument("summed gain g must be non-negative");
    const double eff =
        variant == TdVariant::Rederived ? g / static_cast<double>(p.n_slots) : g;
    const double num = std::sqrt(static_cast<double>(p.n_samples)) * eff * p.delta * (p.alpha - 1.0);
    const double den = 2.0 + eff * p.delta * (p.alpha + 1.0);
    return q_function(num / den);
}

double diversity_gain_pdf(double u, int n_slots) {
    if (u < 0.0) throw std::invalid_argument("gain must be non-negative");
    if (n_slots < 1) throw std::invalid_argument("n_slots must be >= 1");
    if (n_slots == 1) return std::exp(-u);
    return std::pow(u, n_slots - 1) * std::exp(-u) / std::tgamma(static_cast<double>(n_slots));
}

double diversity_gain_tail(double u, int n_slots) {
    // Regularized upper incomplete gamma at integer shape:
    // e^-u * sum_{k<I} u^k / k!.
    double term = 1.0, sum = 1.0;
    for (int k = 1; k < n_slots; ++k) {
        term *= u / static_cast<double>(k);
        sum += term;
    }
    return std::exp(-u) * sum;
}

double conditional_knee_gain(const SchemeParams& p) {
    const double slope = std::sqrt(static_cast<double>(p.n_samples)) * p.delta * (p.alpha - 1.0);
    if (!(slope > 0.0)) return std::numeric_limits<double>::infinity();
    return 2.0 / slope;
}

double expected_over_gain(const std::function<double(double)>& conditional_bep, int n_slots,
                          double knee_gain, const QuadratureSpec& quad) {
    if (n_slots < 1) throw std::invalid_argument("n_slots must be >= 1");

    const auto integrand = [&](double u) {
        return conditional_bep(u) * diversity_gain_pdf(u, n_slots);
    };

    const double upper0 = quad.truncation_point;
    std::vector<double> breakpoints;
    if (std::isfinite(knee_gain) && knee_gain > 0.0) {
        // Panels clustered geometrically around the transition so a single
        // wide panel cannot sample past it and report zero.
        for (double x = knee_gain * 0x1p-7; x < upper0; x *= 2.0) breakpoints.push_back(x);
    }

    auto head = integrate_adaptive(integrand, 0.0, upper0, breakpoints, quad.rel_tolerance,
                                   quad.max_subdivisions);

    // Extend the range until the discarded tail (conditional <= 0.5) is
    // provably below tolerance relative to the running estimate.
    const double floor = std::max(head.value, 1e-280);
    double upper = upper0;
    while (upper < 700.0 && 0.5 * diversity_gain_tail(upper, n_slots) > quad.rel_tolerance * floor)
        upper += 25.0;
    if (upper > upper0) {
        std::vector<double> tail_breaks;
        for (double x = upper0 + 25.0; x < upper; x += 25.0) tail_breaks.push_back(x);
        auto tail = integrate_adaptive(integrand, upper0, upper, tail_breaks, quad.rel_tolerance,
                                       quad.max_subdivisions);
        head.value += tail.value;
    }
    return head.value;
}

double bep_noisemod(const SchemeParams& p, const QuadratureSpec& quad) {
    return expected_over_gain([&](double u) { return bep_noisemod_conditional(p, u); }, 1,
                              conditional_knee_gain(p), quad);
}

double bep_nc_noisemod(const SchemeParams& p, const QuadratureSpec& quad) {
    return expected_over_gain([&](double u) { return bep_nc_conditional(p, u); }, 1,
                              conditional_knee_gain(p), quad);
}

double bep_td_noisemod(const SchemeParams& p, TdVariant variant, const QuadratureSpec& quad) {
    double knee = conditional_knee_gain(p);
    if (variant == TdVariant::Rederived && std::isfinite(knee))
        knee *= static_cast<double>(p.n_slots);
    return expected_over_gain([&](double g) { return bep_td_conditional(p, g, variant); },
                              p.n_slots, knee, quad);
}

double reference_curve(ReferenceKind kind, int n_samples, double delta, int n_slots) {
    if (!(delta > 0.0)) throw std::invalid_argument("delta must be positive");
    if (n_samples < 1) throw std::invalid_argument("n_samples must be >= 1");
    if (kind == ReferenceKind::NoDiversity)
        return 1.0 / (static_cast<double>(n_samples) * delta);
    return std::pow(10.0, 1.0 - n_slots) /
           (static_cast<double>(n_samples) * std::pow(delta, static_cast<double>(n_slots)));
}

}  // namespace noisemod
