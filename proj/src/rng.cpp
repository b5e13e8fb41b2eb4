#include "noisemod/rng.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace noisemod {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

// Stafford variant 13 of the 64-bit finalizer.
std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Gamma derivation from SplittableRandom: odd, with enough bit transitions.
std::uint64_t mix_gamma(std::uint64_t z) {
    z = (z ^ (z >> 33)) * 0xff51afd7ed558ccdULL;
    z = (z ^ (z >> 33)) * 0xc4ceb9fe1a85ec53ULL;
    z = (z ^ (z >> 33)) | 1ULL;
    if (std::popcount(z ^ (z >> 1)) < 24) z ^= 0xaaaaaaaaaaaaaaaaULL;
    return z;
}

}  // namespace

StreamRng::StreamRng(SeedContext ctx) {
    // For a fixed master seed, stream_id -> state is a bijection, so no two
    // streams of one run can collide.
    const std::uint64_t root = mix64(ctx.master_seed + kGolden);
    state_ = mix64(ctx.stream_id ^ root);
    gamma_ = mix_gamma(state_ + kGolden);
}

std::uint64_t StreamRng::next_u64() { return mix64(state_ += gamma_); }

double StreamRng::next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double StreamRng::next_unit_open() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
}

ComplexSample StreamRng::next_complex_gaussian(double variance) {
    // Marsaglia's polar method; rejection stays inside this stream, so the
    // draw is still a pure function of the context.
    double u, v, s;
    do {
        u = 2.0 * next_unit() - 1.0;
        v = 2.0 * next_unit() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double factor = std::sqrt(-variance * std::log(s) / s);
    return {u * factor, v * factor};
}

double StreamRng::next_exponential() { return -std::log(next_unit_open()); }

bool StreamRng::next_bit() { return (next_u64() >> 63) != 0; }

std::vector<ComplexSample> draw_complex_gaussian(SeedContext ctx, double variance, int count) {
    if (!(variance > 0.0)) throw std::invalid_argument("variance must be positive");
    if (count < 1) throw std::invalid_argument("count must be >= 1");
    StreamRng rng(ctx);
    std::vector<ComplexSample> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) out.push_back(rng.next_complex_gaussian(variance));
    return out;
}

ChannelRealization draw_rayleigh_channel(SeedContext ctx, int n_slots) {
    ChannelRealization h;
    draw_rayleigh_channel_into(ctx, n_slots, h);
    return h;
}

void draw_rayleigh_channel_into(SeedContext ctx, int n_slots, ChannelRealization& out) {
    if (n_slots < 1) throw std::invalid_argument("n_slots must be >= 1");
    StreamRng rng(ctx);
    out.coefficients.clear();
    out.coefficients.reserve(static_cast<std::size_t>(n_slots));
    for (int i = 0; i < n_slots; ++i) out.coefficients.push_back(rng.next_complex_gaussian(1.0));
}

}  // namespace noisemod
