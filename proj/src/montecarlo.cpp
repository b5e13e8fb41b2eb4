#include "noisemod/montecarlo.hpp"

#include <atomic>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <unordered_map>
#include <vector>

#include "noisemod/channel.hpp"
#include "noisemod/detect.hpp"
#include "noisemod/rng.hpp"
#include "noisemod/waveform.hpp"

namespace noisemod {

namespace {

// Trials are accounted in fixed batches; the stopping rule is evaluated on
// cumulative batch totals in batch order, which makes the stopping point a
// pure function of the seed.
constexpr std::uint64_t kBatchBits = 4096;

// Per-trial stream purposes.
enum : std::uint64_t { kBitStream = 0, kWaveformStream = 1, kChannelStream = 2, kAwgnStream = 3 };

struct TrialWorkspace {
    std::vector<ComplexSample> samples;
    ChannelRealization channel;
};

bool simulate_one_bit(const SchemeParams& p, const VariancePlan plans[2],
                      const ThresholdSpec& awgn_threshold, const SimOptions& options,
                      std::uint64_t master_seed, std::uint64_t trial, TrialWorkspace& ws) {
    StreamRng bit_rng(SeedContext::for_trial(master_seed, trial, kBitStream));
    const int sent = bit_rng.next_bit() ? 1 : 0;
    const VariancePlan& plan = plans[sent];

    generate_bit_samples_into(plan, SeedContext::for_trial(master_seed, trial, kWaveformStream),
                              ws.samples);

    int decided;
    if (p.scheme == Scheme::TherMod) {
        apply_awgn_inplace(ws.samples, p.awgn_variance,
                           SeedContext::for_trial(master_seed, trial, kAwgnStream));
        decided = decide_threshold(sample_variance(ws.samples), awgn_threshold);
    } else {
        if (options.pin_gain) {
            ws.channel.coefficients.assign(static_cast<std::size_t>(p.n_slots),
                                           ComplexSample(std::sqrt(*options.pin_gain), 0.0));
        } else {
            draw_rayleigh_channel_into(SeedContext::for_trial(master_seed, trial, kChannelStream),
                                       p.n_slots, ws.channel);
        }
        apply_fading_inplace(ws.samples, ws.channel, plan, p.awgn_variance,
                             SeedContext::for_trial(master_seed, trial, kAwgnStream));
        switch (p.scheme) {
            case Scheme::NoiseMod:
                decided = decide_threshold(sample_variance(ws.samples),
                                           threshold_noisemod(p, ws.channel));
                break;
            case Scheme::TdNoiseMod:
                decided =
                    decide_threshold(sample_variance(ws.samples), threshold_td(p, ws.channel));
                break;
            default:
                decided = decide_nc(ws.samples);
                break;
        }
    }
    return decided != sent;
}

}  // namespace

std::pair<double, double> wilson_interval(std::uint64_t errors, std::uint64_t trials) {
    if (trials == 0) return {0.0, 1.0};
    constexpr double z = 1.959963984540054;  // 97.5% normal quantile
    const double n = static_cast<double>(trials);
    const double phat = static_cast<double>(errors) / n;
    const double z2n = z * z / n;
    const double denom = 1.0 + z2n;
    const double center = (phat + 0.5 * z2n) / denom;
    const double half = z * std::sqrt(phat * (1.0 - phat) / n + 0.25 * z2n / n) / denom;
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

BerEstimate simulate_ber(const SchemeParams& p, const StoppingRule& rule,
                         std::uint64_t master_seed, int workers) {
    SimOptions options;
    options.workers = workers;
    return simulate_ber(p, rule, master_seed, options);
}

BerEstimate simulate_ber(const SchemeParams& p, const StoppingRule& rule,
                         std::uint64_t master_seed, const SimOptions& options) {
    validate_params(p);
    if (rule.min_errors < 1) throw std::invalid_argument("min_errors must be >= 1");
    if (rule.max_bits < 1) throw std::invalid_argument("max_bits must be >= 1");
    if (options.pin_gain && !(*options.pin_gain >= 0.0))
        throw std::invalid_argument("pinned gain must be non-negative");

    const VariancePlan plans[2] = {plan_variances({0}, p), plan_variances({1}, p)};
    const ThresholdSpec awgn_threshold = threshold_thermod(p);

    const std::uint64_t batch_count = (rule.max_bits + kBatchBits - 1) / kBatchBits;
    const auto batch_bits = [&](std::uint64_t b) {
        const std::uint64_t begin = b * kBatchBits;
        return std::min(kBatchBits, rule.max_bits - begin);
    };

    std::atomic<std::uint64_t> next_batch{0};
    std::atomic<std::uint64_t> stop_hint{batch_count};

    std::mutex mutex;
    std::unordered_map<std::uint64_t, std::uint64_t> batch_errors;
    std::uint64_t scan = 0, cum_errors = 0, cum_bits = 0;
    bool stopped = false;

    const auto worker = [&] {
        TrialWorkspace ws;
        ws.samples.reserve(static_cast<std::size_t>(p.n_samples));
        while (true) {
            const std::uint64_t b = next_batch.fetch_add(1, std::memory_order_relaxed);
            if (b >= stop_hint.load(std::memory_order_relaxed) || b >= batch_count) break;

            std::uint64_t errors = 0;
            const std::uint64_t begin = b * kBatchBits;
            const std::uint64_t end = begin + batch_bits(b);
            for (std::uint64_t t = begin; t < end; ++t)
                errors += simulate_one_bit(p, plans, awgn_threshold, options, master_seed, t, ws);

            std::lock_guard lock(mutex);
            batch_errors.emplace(b, errors);
            while (!stopped) {
                const auto it = batch_errors.find(scan);
                if (it == batch_errors.end()) break;
                cum_errors += it->second;
                cum_bits += batch_bits(scan);
                ++scan;
                if (cum_errors >= rule.min_errors || cum_bits >= rule.max_bits) {
                    stopped = true;
                    stop_hint.store(scan, std::memory_order_relaxed);
                }
            }
            if (stopped) break;
        }
    };

    int thread_count = options.workers > 0 ? options.workers
                                           : static_cast<int>(std::thread::hardware_concurrency());
    if (thread_count < 1) thread_count = 1;
    if (thread_count == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(thread_count));
        for (int i = 0; i < thread_count; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    BerEstimate est;
    est.errors = cum_errors;
    est.trials = cum_bits;
    est.ber = cum_bits ? static_cast<double>(cum_errors) / static_cast<double>(cum_bits) : 0.0;
    std::tie(est.ci_low, est.ci_high) = wilson_interval(cum_errors, cum_bits);
    est.master_seed = master_seed;
    est.censored = cum_errors < rule.min_errors;
    return est;
}

OracleEstimate mc_expectation_oracle(const std::function<double(double)>& conditional_bep,
                                     int n_slots, std::uint64_t draws, std::uint64_t master_seed) {
    if (n_slots < 1) throw std::invalid_argument("n_slots must be >= 1");
    if (draws < 10'000) throw std::invalid_argument("the expectation oracle needs >= 1e4 draws");

    StreamRng rng(SeedContext{master_seed, 0});
    double mean = 0.0, m2 = 0.0;
    for (std::uint64_t i = 0; i < draws; ++i) {
        double gain = 0.0;
        for (int s = 0; s < n_slots; ++s) gain += rng.next_exponential();
        const double x = conditional_bep(gain);
        const double delta = x - mean;
        mean += delta / static_cast<double>(i + 1);
        m2 += delta * (x - mean);
    }
    const double variance = m2 / static_cast<double>(draws - 1);
    return OracleEstimate{mean, std::sqrt(variance / static_cast<double>(draws))};
}

}  // namespace noisemod
