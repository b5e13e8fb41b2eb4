#pragma once

#include <cstdint>
#include <vector>

#include "noisemod/params.hpp"

namespace noisemod {

/// Identifies one reproducible random stream.
///
/// A (master_seed, stream_id) pair always yields the same sample sequence,
/// independent of worker count or evaluation order, so Monte Carlo trials can
/// be sharded arbitrarily. Simulation code packs a trial index and a purpose
/// tag into stream_id; see substream().
struct SeedContext {
    std::uint64_t master_seed = 0;
    std::uint64_t stream_id = 0;

    /// Stream for purpose `tag` (0..7) of trial `index`.
    static SeedContext for_trial(std::uint64_t master_seed, std::uint64_t index,
                                 std::uint64_t tag) {
        return SeedContext{master_seed, (index << 3) | (tag & 7u)};
    }
};

/// Counter-style generator: output k is a mix of seed + k*gamma, with the
/// seed and the odd increment gamma both derived from the SeedContext
/// (the SplittableRandom construction). Distinct streams never share a
/// sequence, and a stream's output depends only on its context.
class StreamRng {
  public:
    explicit StreamRng(SeedContext ctx);

    std::uint64_t next_u64();
    /// Uniform on [0, 1).
    double next_unit();
    /// Uniform on (0, 1]; safe as a log() argument.
    double next_unit_open();
    /// Circularly-symmetric complex Gaussian with E[|s|^2] = variance.
    ComplexSample next_complex_gaussian(double variance);
    /// Unit-mean exponential (the power gain of one Rayleigh coefficient).
    double next_exponential();
    bool next_bit();

  private:
    std::uint64_t state_;
    std::uint64_t gamma_;
};

/// count i.i.d. circularly-symmetric complex Gaussian samples with
/// E[|s|^2] = variance (each component has variance variance/2).
std::vector<ComplexSample> draw_complex_gaussian(SeedContext ctx, double variance, int count);

/// n_slots i.i.d. CN(0,1) fading coefficients; |h|^2 is unit-mean exponential.
ChannelRealization draw_rayleigh_channel(SeedContext ctx, int n_slots);
void draw_rayleigh_channel_into(SeedContext ctx, int n_slots, ChannelRealization& out);

}  // namespace noisemod
