#pragma once

#include <span>

#include "noisemod/params.hpp"

namespace noisemod {

/// Decision threshold on the sample variance. `gamma` carries variance
/// units; `normalized` is gamma / sigma_w^2. For alpha > 1 and a positive
/// channel gain, gamma lies strictly between the two conditional variances
/// it separates (it is their harmonic mean).
struct ThresholdSpec {
    double gamma = 0.0;
    double normalized = 0.0;
};

/// Mean of |s_n|^2 over the block; the detector's sufficient statistic.
double sample_variance(std::span<const ComplexSample> samples);

/// AWGN-only threshold: harmonic mean of sigma_w^2(1+delta) and
/// sigma_w^2(1+alpha*delta).
ThresholdSpec threshold_thermod(const SchemeParams& p);

/// Genie-aided fading threshold for one coefficient; reduces to
/// threshold_thermod at |h|^2 = 1.
ThresholdSpec threshold_noisemod(const SchemeParams& p, const ChannelRealization& h);

/// Genie-aided time-diversity threshold: harmonic mean of the slot-averaged
/// conditional variances; reduces to threshold_noisemod for one slot.
ThresholdSpec threshold_td(const SchemeParams& p, const ChannelRealization& h);

/// 1 iff sigma_hat > gamma; exact ties resolve to 0.
int decide_threshold(double sigma_hat, const ThresholdSpec& t);

/// Non-coherent decision: compares first-half and second-half sample
/// variances, no channel knowledge. 1 iff the first half is larger; tie -> 0.
int decide_nc(std::span<const ComplexSample> samples);

}  // namespace noisemod
