#pragma once

#include <functional>
#include <span>
#include <stdexcept>

namespace noisemod {

/// Raised when the adaptive integrator exhausts its subdivision budget.
class QuadratureError : public std::runtime_error {
  public:
    QuadratureError(const std::string& msg, double value, double error_estimate)
        : std::runtime_error(msg), value(value), error_estimate(error_estimate) {}

    double value;
    double error_estimate;
};

struct QuadratureOutcome {
    double value = 0.0;
    double error_estimate = 0.0;
    int subdivisions = 0;
};

/// Globally adaptive Gauss-Kronrod 7/15 integration of f over [a, b].
///
/// `breakpoints` seeds the initial partition; callers integrating a sharp
/// knee (the Q-function transition of the fading average) must list points
/// around it or a single panel can mistake the integrand for zero. Intervals
/// are then halved worst-error-first until the summed error estimate drops
/// below rel_tolerance * |integral|; exceeding max_subdivisions throws
/// QuadratureError carrying the best estimate so far.
QuadratureOutcome integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                     std::span<const double> breakpoints, double rel_tolerance,
                                     int max_subdivisions);

}  // namespace noisemod
