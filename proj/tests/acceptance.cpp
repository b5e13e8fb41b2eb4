// Acceptance suite: every release criterion in one binary, one verdict line
// each. Exit code 0 only when all criteria hold. Expect roughly ten minutes
// on two cores; the heavy lines are the deep time-diversity points of
// criteria 1-2.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "noisemod/channel.hpp"
#include "noisemod/detect.hpp"
#include "noisemod/montecarlo.hpp"
#include "noisemod/sweep.hpp"
#include "noisemod/theory.hpp"
#include "noisemod/waveform.hpp"

using namespace noisemod;

namespace {

int g_passed = 0, g_total = 0;

void report(int id, const std::string& name, bool pass, const std::string& detail) {
    ++g_total;
    if (pass) ++g_passed;
    std::printf("[%d] %s: %s (%s)\n", id, name.c_str(), pass ? "PASS" : "FAIL", detail.c_str());
    std::fflush(stdout);
}

SchemeParams make_params(Scheme scheme, int n, double delta, double alpha = 10.0, int slots = 1) {
    SchemeParams p;
    p.scheme = scheme;
    p.alpha = alpha;
    p.delta = delta;
    p.n_samples = n;
    p.n_slots = slots;
    return validate_params(p);
}

double binomial_se(double p, std::uint64_t trials) {
    return std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
}

struct GridAgreement {
    int within = 0;
    int total = 0;
    double worst_z = 0.0;
};

// --- criteria 1 and 2 ------------------------------------------------------

struct TdPoint {
    BerEstimate est;
    double theory_rederived;
    double theory_as_printed;
};

void criterion_theory_vs_sim() {
    const StoppingRule rule{100, 100'000'000};
    const std::vector<double> dbs{0, 2, 4, 6, 8, 10, 12};

    GridAgreement nm;
    std::uint64_t seed = 1000;
    for (int n : {100, 150}) {
        for (double db : dbs) {
            const auto p = make_params(Scheme::NoiseMod, n, db_to_linear(db));
            const double theory = bep_noisemod(p);
            const auto est = simulate_ber(p, rule, seed++);
            const double z = (est.ber - theory) / binomial_se(theory, est.trials);
            nm.total++;
            if (std::abs(z) <= 3.0) nm.within++;
            nm.worst_z = std::max(nm.worst_z, std::abs(z));
        }
    }
    report(1, "theory-simulation agreement, NoiseMod", nm.within * 10 >= nm.total * 9,
           std::to_string(nm.within) + "/" + std::to_string(nm.total) +
               " points within 3 s.e., worst |z|=" + std::to_string(nm.worst_z));

    // Same grid decides between the two time-diversity readings.
    GridAgreement rederived, as_printed;
    std::vector<TdPoint> points;
    seed = 2000;
    for (int n : {100, 150}) {
        for (double db : dbs) {
            const auto p = make_params(Scheme::TdNoiseMod, n, db_to_linear(db), 10.0, 2);
            TdPoint point;
            point.theory_rederived = bep_td_noisemod(p, TdVariant::Rederived);
            point.theory_as_printed = bep_td_noisemod(p, TdVariant::AsPrinted);
            point.est = simulate_ber(p, rule, seed++);
            points.push_back(point);

            const double z_r = (point.est.ber - point.theory_rederived) /
                               binomial_se(point.theory_rederived, point.est.trials);
            const double z_a = (point.est.ber - point.theory_as_printed) /
                               binomial_se(point.theory_as_printed, point.est.trials);
            rederived.total++;
            as_printed.total++;
            if (std::abs(z_r) <= 3.0) rederived.within++;
            if (std::abs(z_a) <= 3.0) as_printed.within++;
            rederived.worst_z = std::max(rederived.worst_z, std::abs(z_r));
        }
    }
    const bool rederived_ok = rederived.within * 10 >= rederived.total * 9;
    const bool as_printed_ok = as_printed.within * 10 >= as_printed.total * 9;
    const bool exactly_one = rederived_ok != as_printed_ok;
    const bool default_is_winner =
        (rederived_ok && kDefaultTdVariant == TdVariant::Rederived) ||
        (as_printed_ok && kDefaultTdVariant == TdVariant::AsPrinted);
    report(2, "time-diversity variant arbitration", exactly_one && default_is_winner,
           "rederived " + std::to_string(rederived.within) + "/" +
               std::to_string(rederived.total) + ", as-printed " +
               std::to_string(as_printed.within) + "/" + std::to_string(as_printed.total) +
               ", default=" + td_variant_name(kDefaultTdVariant));
}

// --- criterion 3 ------------------------------------------------------------

void criterion_nc_close_to_coherent() {
    double worst = 0.0;
    for (double db = 0.0; db <= 10.0; db += 1.0) {
        const auto p = make_params(Scheme::NcNoiseMod, 120, db_to_linear(db));
        const double nm = bep_noisemod(p);
        const double nc = bep_nc_noisemod(p);
        worst = std::max(worst, std::abs(nm - nc) / std::min(nm, nc));
    }
    report(3, "non-coherent matches coherent within 25%", worst <= 0.25,
           "worst relative gap " + std::to_string(worst));
}

// --- criterion 4 ------------------------------------------------------------

void criterion_diversity_order() {
    bool pass = true;
    std::string detail;
    for (int slots : {2, 3}) {
        std::vector<double> lx, ly;
        double ratio_lo = 1e300, ratio_hi = 0.0;
        for (double db = 5.0; db <= 15.0; db += 1.0) {
            const double delta = db_to_linear(db);
            const auto p = make_params(Scheme::TdNoiseMod, 120, delta, 10.0, slots);
            const double bep = bep_td_noisemod(p, kDefaultTdVariant);
            const double ref = reference_curve(ReferenceKind::TimeDiversity, 120, delta, slots);
            lx.push_back(std::log10(delta));
            ly.push_back(std::log10(bep));
            ratio_lo = std::min(ratio_lo, bep / ref);
            ratio_hi = std::max(ratio_hi, bep / ref);
        }
        // least-squares slope of log10(bep) vs log10(delta)
        const double n = static_cast<double>(lx.size());
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (std::size_t i = 0; i < lx.size(); ++i) {
            sx += lx[i];
            sy += ly[i];
            sxx += lx[i] * lx[i];
            sxy += lx[i] * ly[i];
        }
        const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);

        const bool slope_ok = std::abs(slope + slots) <= 0.15 * slots;
        const bool band_ok = ratio_lo >= 1.0 / 3.0 && ratio_hi <= 3.0;
        pass = pass && slope_ok && band_ok;
        char buf[160];
        std::snprintf(buf, sizeof buf, "I=%d slope=%.3f ratio=[%.3f,%.3f] ", slots, slope,
                      ratio_lo, ratio_hi);
        detail += buf;
    }
    report(4, "diversity order and reference band", pass, detail);
}

// --- criterion 5 ------------------------------------------------------------

double solve_thermod_delta(int n, double target) {
    double lo = 1e-4, hi = 10.0;
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = std::sqrt(lo * hi);
        if (bep_thermod(make_params(Scheme::TherMod, n, mid)) > target)
            lo = mid;
        else
            hi = mid;
    }
    return std::sqrt(lo * hi);
}

void criterion_awgn_closed_form() {
    // The closed form carries a Gaussian-approximation tail bias that decays
    // like 1/N at a fixed error level (exact Gamma-tail values: -1.3%, +0.3%,
    // +2.6%, +3.9%, +4.4% here), so deeper targets get larger blocks to keep
    // the bias well inside the 3 s.e. band.
    const std::pair<int, double> targets[] = {
        {100, 3e-2}, {150, 1e-2}, {300, 3e-3}, {600, 1e-3}, {1200, 3e-4}};
    int within = 0;
    double worst_z = 0.0;
    std::uint64_t seed = 5000;
    for (const auto& [n, target] : targets) {
        const double delta = solve_thermod_delta(n, target);
        const auto p = make_params(Scheme::TherMod, n, delta);
        const double theory = bep_thermod(p);
        const auto est = simulate_ber(p, StoppingRule{100, 100'000'000}, seed++);
        const double z = (est.ber - theory) / binomial_se(theory, est.trials);
        worst_z = std::max(worst_z, std::abs(z));
        if (std::abs(z) <= 3.0) ++within;
    }

    bool convex = true, decreasing = true;
    std::vector<double> logs;
    for (int n = 100; n <= 300; n += 20)
        logs.push_back(std::log(bep_thermod(make_params(Scheme::TherMod, n, 1.0))));
    for (std::size_t i = 0; i + 1 < logs.size(); ++i) {
        if (logs[i + 1] >= logs[i]) decreasing = false;
        if (i + 2 < logs.size() && logs[i] - 2.0 * logs[i + 1] + logs[i + 2] <= 0.0) convex = false;
    }

    report(5, "awgn closed form", within == 5 && convex && decreasing,
           std::to_string(within) + "/5 points within 3 s.e. (worst |z|=" +
               std::to_string(worst_z) + "), log-BEP vs N convex-decreasing: " +
               (convex && decreasing ? "yes" : "no"));
}

// --- criterion 6 ------------------------------------------------------------

void criterion_degenerate_and_invariances() {
    // alpha = 1: every scheme flips a fair coin
    StoppingRule forced;
    forced.min_errors = 1'000'000'000;
    forced.max_bits = 1'000'000;
    bool coin_ok = true;
    std::string coin_detail;
    std::uint64_t seed = 6000;
    for (Scheme scheme :
         {Scheme::TherMod, Scheme::NoiseMod, Scheme::NcNoiseMod, Scheme::TdNoiseMod}) {
        const auto p =
            make_params(scheme, 100, 1.0, 1.0, scheme == Scheme::TdNoiseMod ? 2 : 1);
        const auto est = simulate_ber(p, forced, seed++);
        const bool ok = std::abs(est.ber - 0.5) <= 0.0015;
        coin_ok = coin_ok && ok;
        coin_detail += std::string(scheme_name(scheme)) + "=" + std::to_string(est.ber) + " ";
    }

    // non-coherent decisions ignore any per-block complex scale
    StreamRng rng(SeedContext{616, 0});
    bool nc_invariant = true;
    for (int trial = 0; trial < 400; ++trial) {
        std::vector<ComplexSample> block;
        const int n = 2 * (1 + static_cast<int>(rng.next_u64() % 64));
        for (int k = 0; k < n; ++k) block.push_back(rng.next_complex_gaussian(2.0));
        const int base = decide_nc(block);
        const ComplexSample c = std::polar(0.02 + 25.0 * rng.next_unit(), 6.28 * rng.next_unit());
        for (auto& s : block) s *= c;
        nc_invariant = nc_invariant && decide_nc(block) == base;
    }

    // genie decisions ignore a joint rescale of all three variances
    bool genie_invariant = true;
    for (int trial = 0; trial < 400; ++trial) {
        SchemeParams p;
        p.alpha = 1.0 + 12.0 * rng.next_unit_open();
        p.delta = 3.0 * rng.next_unit_open();
        const double gain = 2.0 * rng.next_unit();
        const ChannelRealization h{{{std::sqrt(gain), 0.0}}};
        const double sigma_hat = 0.2 + 3.0 * rng.next_unit();
        const int base = decide_threshold(sigma_hat, threshold_noisemod(p, h));

        const double c = 0.05 + 50.0 * rng.next_unit();
        SchemeParams scaled = p;
        scaled.awgn_variance *= c;
        genie_invariant =
            genie_invariant && decide_threshold(sigma_hat * c, threshold_noisemod(scaled, h)) == base;
    }

    // gain density: unit mass for I in 1..5, exponential at I = 1
    bool pdf_ok = true;
    for (int slots = 1; slots <= 5; ++slots) {
        const double mass = expected_over_gain([](double) { return 1.0; }, slots, 0.0);
        pdf_ok = pdf_ok && std::abs(mass - 1.0) <= 1e-9;
    }
    for (double u = 0.0; u <= 30.0; u += 0.5)
        pdf_ok = pdf_ok && std::abs(diversity_gain_pdf(u, 1) - std::exp(-u)) <=
                               1e-12 * std::exp(-u) + 1e-300;

    report(6, "degenerate point and invariances",
           coin_ok && nc_invariant && genie_invariant && pdf_ok,
           "alpha=1 bers: " + coin_detail + "| nc-scaling " + (nc_invariant ? "ok" : "BROKEN") +
               ", joint-scaling " + (genie_invariant ? "ok" : "BROKEN") + ", gain pdf " +
               (pdf_ok ? "ok" : "BROKEN"));
}

// --- criterion 7 ------------------------------------------------------------

void criterion_oracle_equivalence() {
    const std::uint64_t draws = 10'000'000;
    int within = 0, total = 0;
    double worst_z = 0.0;
    std::uint64_t seed = 7000;
    for (int n : {100, 120, 150}) {
        for (double delta : {1.0, 5.0, 10.0}) {
            {
                const auto p = make_params(Scheme::NoiseMod, n, delta);
                const auto oracle = mc_expectation_oracle(
                    [&](double g) { return bep_noisemod_conditional(p, g); }, 1, draws, seed++);
                const double z = (oracle.value - bep_noisemod(p)) / oracle.std_error;
                ++total;
                if (std::abs(z) <= 3.0) ++within;
                worst_z = std::max(worst_z, std::abs(z));
            }
            for (TdVariant variant : {TdVariant::Rederived, TdVariant::AsPrinted}) {
                const auto p = make_params(Scheme::TdNoiseMod, n, delta, 10.0, 2);
                const auto oracle = mc_expectation_oracle(
                    [&](double g) { return bep_td_conditional(p, g, variant); }, 2, draws, seed++);
                const double z = (oracle.value - bep_td_noisemod(p, variant)) / oracle.std_error;
                ++total;
                if (std::abs(z) <= 3.0) ++within;
                worst_z = std::max(worst_z, std::abs(z));
            }
        }
    }
    report(7, "quadrature agrees with the sampling oracle", within == total,
           std::to_string(within) + "/" + std::to_string(total) +
               " averages within 3 s.e., worst |z|=" + std::to_string(worst_z));
}

// --- criterion 8 ------------------------------------------------------------

void criterion_determinism() {
    auto spec = make_fig4_spec(77);
    spec.axis_values = {0.0, 4.0, 8.0};
    spec.stopping = StoppingRule{50, 500'000};

    spec.workers = 1;
    const std::string one = emit_csv(run_sweep(spec));
    spec.workers = 8;
    const std::string eight = emit_csv(run_sweep(spec));
    const std::string rerun = emit_csv(run_sweep(spec));

    report(8, "bit-identical sweeps across worker counts", one == eight && eight == rerun,
           one == eight ? "CSV outputs match byte for byte" : "outputs diverged");
}

}  // namespace

int main() {
    std::printf("noisemod acceptance suite\n");
    criterion_theory_vs_sim();
    criterion_nc_close_to_coherent();
    criterion_diversity_order();
    criterion_awgn_closed_form();
    criterion_degenerate_and_invariances();
    criterion_oracle_equivalence();
    criterion_determinism();
    std::printf("ACCEPTANCE: %d/%d criteria passed\n", g_passed, g_total);
    return g_passed == g_total ? 0 : 1;
}
