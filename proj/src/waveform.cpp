#include "noisemod/waveform.hpp"

#include <stdexcept>
#include <string>

namespace noisemod {

std::pair<std::size_t, std::size_t> VariancePlan::slot_range(int bit_index, int slot) const {
    const std::size_t base = static_cast<std::size_t>(bit_index) * static_cast<std::size_t>(samples_per_bit);
    const std::size_t width = static_cast<std::size_t>(samples_per_slot());
    const std::size_t begin = base + static_cast<std::size_t>(slot) * width;
    return {begin, begin + width};
}

std::vector<int> parse_bit_string(const std::string& bits) {
    std::vector<int> out;
    out.reserve(bits.size());
    for (char c : bits) {
        if (c == '0')
            out.push_back(0);
        else if (c == '1')
            out.push_back(1);
        else
            throw std::invalid_argument(std::string("bit string may contain only 0 and 1, got '") + c + "'");
    }
    return out;
}

VariancePlan plan_variances(const std::vector<int>& bits, const SchemeParams& p) {
    if (bits.empty()) throw std::invalid_argument("bit list must not be empty");
    for (int b : bits)
        if (b != 0 && b != 1) throw std::invalid_argument("bits must be 0 or 1");

    const double low = p.low_variance();
    const double high = p.high_variance();
    const std::size_t n = static_cast<std::size_t>(p.n_samples);

    VariancePlan plan;
    plan.samples_per_bit = p.n_samples;
    plan.n_slots = p.n_slots;
    plan.per_sample_variance.reserve(bits.size() * n);

    for (int b : bits) {
        if (p.scheme == Scheme::NcNoiseMod) {
            // bit-0: low then high; bit-1: the reverse.
            const double first = b ? high : low;
            const double second = b ? low : high;
            plan.per_sample_variance.insert(plan.per_sample_variance.end(), n / 2, first);
            plan.per_sample_variance.insert(plan.per_sample_variance.end(), n / 2, second);
        } else {
            plan.per_sample_variance.insert(plan.per_sample_variance.end(), n, b ? high : low);
        }
    }
    return plan;
}

std::vector<ComplexSample> generate_bit_samples(const VariancePlan& plan, SeedContext ctx) {
    std::vector<ComplexSample> out;
    generate_bit_samples_into(plan, ctx, out);
    return out;
}

void generate_bit_samples_into(const VariancePlan& plan, SeedContext ctx,
                               std::vector<ComplexSample>& out) {
    StreamRng rng(ctx);
    out.clear();
    out.reserve(plan.per_sample_variance.size());
    for (double v : plan.per_sample_variance) out.push_back(rng.next_complex_gaussian(v));
}

}  // namespace noisemod
