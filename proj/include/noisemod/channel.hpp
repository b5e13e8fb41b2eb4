#pragma once

#include <span>
#include <vector>

#include "noisemod/params.hpp"
#include "noisemod/rng.hpp"
#include "noisemod/waveform.hpp"

namespace noisemod {

/// Adds i.i.d. complex Gaussian noise of variance sigma_w_sq to each sample.
std::vector<ComplexSample> apply_awgn(std::span<const ComplexSample> samples, double sigma_w_sq,
                                      SeedContext ctx);
void apply_awgn_inplace(std::span<ComplexSample> samples, double sigma_w_sq, SeedContext ctx);

/// Flat block fading for one bit: each sample is scaled by its slot's
/// coefficient, then AWGN is added. `samples` must be exactly one bit block
/// of the plan and `h` must carry one coefficient per slot (one for non-TD).
std::vector<ComplexSample> apply_fading(std::span<const ComplexSample> samples,
                                        const ChannelRealization& h, const VariancePlan& plan,
                                        double sigma_w_sq, SeedContext ctx);
void apply_fading_inplace(std::span<ComplexSample> samples, const ChannelRealization& h,
                          const VariancePlan& plan, double sigma_w_sq, SeedContext ctx);

}  // namespace noisemod
