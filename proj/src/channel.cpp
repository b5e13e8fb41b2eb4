#include "noisemod/channel.hpp"

#include <stdexcept>

namespace noisemod {

std::vector<ComplexSample> apply_awgn(std::span<const ComplexSample> samples, double sigma_w_sq,
                                      SeedContext ctx) {
    std::vector<ComplexSample> out(samples.begin(), samples.end());
    apply_awgn_inplace(out, sigma_w_sq, ctx);
    return out;
}

void apply_awgn_inplace(std::span<ComplexSample> samples, double sigma_w_sq, SeedContext ctx) {
    if (!(sigma_w_sq > 0.0)) throw std::invalid_argument("sigma_w_sq must be positive");
    StreamRng rng(ctx);
    for (auto& s : samples) s += rng.next_complex_gaussian(sigma_w_sq);
}

std::vector<ComplexSample> apply_fading(std::span<const ComplexSample> samples,
                                        const ChannelRealization& h, const VariancePlan& plan,
                                        double sigma_w_sq, SeedContext ctx) {
    std::vector<ComplexSample> out(samples.begin(), samples.end());
    apply_fading_inplace(out, h, plan, sigma_w_sq, ctx);
    return out;
}

void apply_fading_inplace(std::span<ComplexSample> samples, const ChannelRealization& h,
                          const VariancePlan& plan, double sigma_w_sq, SeedContext ctx) {
    if (!(sigma_w_sq > 0.0)) throw std::invalid_argument("sigma_w_sq must be positive");
    if (h.n_slots() != plan.n_slots)
        throw std::invalid_argument("channel realization has " + std::to_string(h.n_slots()) +
                                    " coefficients but the plan expects " +
                                    std::to_string(plan.n_slots));
    if (samples.size() != static_cast<std::size_t>(plan.samples_per_bit))
        throw std::invalid_argument("apply_fading expects exactly one bit block of samples");

    StreamRng rng(ctx);
    const std::size_t per_slot = static_cast<std::size_t>(plan.samples_per_slot());
    for (std::size_t k = 0; k < samples.size(); ++k) {
        const auto& coeff = h.coefficients[k / per_slot];
        samples[k] = coeff * samples[k] + rng.next_complex_gaussian(sigma_w_sq);
    }
}

}  // namespace noisemod
