#pragma once

#include <optional>
#include <string>
#include <vector>

#include "noisemod/montecarlo.hpp"
#include "noisemod/params.hpp"
#include "noisemod/theory.hpp"

namespace noisemod {

enum class SweepAxis { DeltaDb, NSamples };
enum class CurveKind { Theory, Sim, Reference };

const char* sweep_axis_name(SweepAxis a);
SweepAxis sweep_axis_from_name(const std::string& name);
const char* curve_kind_name(CurveKind k);
CurveKind curve_kind_from_name(const std::string& name);

/// One curve of a sweep: a parameter template plus which outputs to produce.
/// The axis overrides delta (from dB) or n_samples per point.
struct SeriesSpec {
    std::string label;
    SchemeParams params;
    bool with_theory = true;
    bool with_sim = false;
    bool with_reference = false;
    TdVariant td_variant = kDefaultTdVariant;
};

struct SweepSpec {
    SweepAxis axis = SweepAxis::DeltaDb;
    std::vector<double> axis_values;  ///< dB for DeltaDb, sample counts for NSamples
    std::vector<SeriesSpec> series;
    StoppingRule stopping;
    std::uint64_t master_seed = 1;
    int workers = 0;
    QuadratureSpec quadrature;
};

/// One table cell. Confidence bounds are present only for simulated points.
struct SweepPoint {
    double axis_value = 0.0;
    std::string series;
    CurveKind kind = CurveKind::Theory;
    double value = 0.0;
    std::optional<double> ci_low;
    std::optional<double> ci_high;
    bool censored = false;

    bool operator==(const SweepPoint&) const = default;
};

struct SweepResult {
    SweepAxis axis = SweepAxis::DeltaDb;
    std::uint64_t master_seed = 0;
    std::vector<std::string> parameter_echo;  ///< one line per series
    std::vector<SweepPoint> rows;

    bool operator==(const SweepResult&) const = default;
    const SweepPoint* find(double axis_value, const std::string& series, CurveKind kind) const;
};

/// Runs every (axis value, series, output) cell. Sweep points are seeded
/// individually from the master seed, so scheduling cannot change any cell.
SweepResult run_sweep(const SweepSpec& spec);

/// Sweep definitions reproducing the three report figures. The returned
/// specs use the documented default grids; callers may adjust before
/// run_sweep (the test suites shrink the simulated grids).
SweepSpec make_fig3_spec(std::uint64_t master_seed);  ///< theory curves vs delta, N=120
SweepSpec make_fig4_spec(std::uint64_t master_seed);  ///< theory vs simulation, N in {100,150}, I=2
SweepSpec make_fig5_spec(std::uint64_t master_seed);  ///< BER vs N at two delta values

SweepResult run_fig3(std::uint64_t master_seed);
SweepResult run_fig4(std::uint64_t master_seed);
SweepResult run_fig5(std::uint64_t master_seed);

/// CSV round trip: header `axis,scheme,kind,value,ci_low,ci_high,censored`
/// plus `#` metadata lines. parse_csv(emit_csv(r)) reproduces r exactly.
std::string emit_csv(const SweepResult& result);
SweepResult parse_csv(const std::string& text);

/// Static SVG rendering with a log vertical axis, one styled polyline per
/// (series, kind) and a legend.
std::string render_svg(const SweepResult& result, const std::string& title);

}  // namespace noisemod
