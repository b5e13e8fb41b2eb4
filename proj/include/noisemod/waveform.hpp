#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "noisemod/params.hpp"
#include "noisemod/rng.hpp"

namespace noisemod {

/// Per-sample transmit variance for a bit string, plus the slot layout.
///
/// Every entry is one of the two transmit levels {delta*sigma_w^2,
/// alpha*delta*sigma_w^2}. TherMod/NoiseMod/TD bits are constant across the
/// bit; NC bits switch level at the half-bit boundary. For TD each bit's
/// samples split into n_slots contiguous slots that are faded independently.
struct VariancePlan {
    std::vector<double> per_sample_variance;
    int samples_per_bit = 0;
    int n_slots = 1;

    int n_bits() const {
        return samples_per_bit == 0 ? 0
                                    : static_cast<int>(per_sample_variance.size()) / samples_per_bit;
    }
    int samples_per_slot() const { return samples_per_bit / n_slots; }
    /// Half-open sample range covered by (bit, slot).
    std::pair<std::size_t, std::size_t> slot_range(int bit_index, int slot) const;
    /// Slot index (0..n_slots-1) owning sample k of a bit block.
    int slot_of(std::size_t sample_in_bit) const {
        return static_cast<int>(sample_in_bit) / samples_per_slot();
    }
};

/// Maps bits (0/1 values) to the per-sample variance plan for p.scheme.
std::vector<int> parse_bit_string(const std::string& bits);
VariancePlan plan_variances(const std::vector<int>& bits, const SchemeParams& p);

/// Draws sample k complex-Gaussian with variance plan[k].
std::vector<ComplexSample> generate_bit_samples(const VariancePlan& plan, SeedContext ctx);
void generate_bit_samples_into(const VariancePlan& plan, SeedContext ctx,
                               std::vector<ComplexSample>& out);

}  // namespace noisemod
