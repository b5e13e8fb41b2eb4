#pragma once

#include <functional>

#include "noisemod/params.hpp"
#include "noisemod/quadrature.hpp"

namespace noisemod {

/// Controls the semi-infinite fading expectation. truncation_point is the
/// floor for the auto-selected upper limit; the limit is extended until the
/// truncated tail provably contributes less than rel_tolerance times the
/// current estimate.
struct QuadratureSpec {
    double rel_tolerance = 1e-10;
    double truncation_point = 50.0;
    int max_subdivisions = 4000;
};

/// Gaussian tail probability Q(x), via the complementary error function.
double q_function(double x);

/// Closed-form AWGN bit error probability of the threshold detector with the
/// uniform-error threshold; 0.5 at alpha = 1, decaying exponentially in N.
double bep_thermod(const SchemeParams& p);

/// Error probability of the genie-aided detector conditioned on the channel
/// power gain h_sq; equals bep_thermod at h_sq = 1 and 0.5 at h_sq = 0.
double bep_noisemod_conditional(const SchemeParams& p, double h_sq);

/// Error probability of the non-coherent half-block comparator conditioned
/// on h_sq. Requires even N.
double bep_nc_conditional(const SchemeParams& p, double h_sq);

/// The time-diversity conditional error probability exists in two readings
/// that differ for more than one slot. AsPrinted applies the summed slot
/// gain g directly; Rederived substitutes the slot-averaged conditional
/// variances, which replaces g by g/I. Monte Carlo validation selects
/// Rederived as the reported default (see kDefaultTdVariant).
enum class TdVariant { AsPrinted, Rederived };
inline constexpr TdVariant kDefaultTdVariant = TdVariant::Rederived;

const char* td_variant_name(TdVariant v);

/// Conditional error probability of TD with summed slot gain g.
double bep_td_conditional(const SchemeParams& p, double g, TdVariant variant);

/// Density of the summed power gain of n_slots independent Rayleigh
/// coefficients (chi-square with 2*n_slots degrees of freedom, mean n_slots):
/// u^(I-1) e^(-u) / (I-1)!.
double diversity_gain_pdf(double u, int n_slots);

/// P(gain > u) for the same law; used to bound truncation error.
double diversity_gain_tail(double u, int n_slots);

/// Expectation of a conditional error probability over the gain law of
/// n_slots slots. knee_gain marks where the conditional transitions from 0.5
/// toward 0 so the integrator can seed panels there; pass 0 when there is no
/// knee (flat conditional). Throws QuadratureError on non-convergence.
double expected_over_gain(const std::function<double(double)>& conditional_bep, int n_slots,
                          double knee_gain, const QuadratureSpec& quad = {});

/// Numerically integrated unconditional error probabilities.
double bep_noisemod(const SchemeParams& p, const QuadratureSpec& quad = {});
double bep_nc_noisemod(const SchemeParams& p, const QuadratureSpec& quad = {});
double bep_td_noisemod(const SchemeParams& p, TdVariant variant, const QuadratureSpec& quad = {});

/// Gain for which the conditional Q-argument reaches 1 (infinity if it never
/// does); the transition scale of the fading integrands.
double conditional_knee_gain(const SchemeParams& p);

enum class ReferenceKind { NoDiversity, TimeDiversity };

/// Empirical high-delta reference: 1/(N*delta) without diversity,
/// 10^(1-I)/(N*delta^I) with I slots.
double reference_curve(ReferenceKind kind, int n_samples, double delta, int n_slots);

}  // namespace noisemod
