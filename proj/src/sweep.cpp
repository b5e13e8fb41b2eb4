#include "noisemod/sweep.hpp"

#include <cinttypes>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "noisemod/rng.hpp"

namespace noisemod {

namespace {

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::uint64_t point_seed(std::uint64_t master_seed, std::size_t series_index,
                         std::size_t point_index) {
    StreamRng rng(SeedContext{master_seed,
                              (static_cast<std::uint64_t>(series_index) << 32) | point_index});
    return rng.next_u64();
}

SchemeParams params_at(const SeriesSpec& series, SweepAxis axis, double axis_value) {
    SchemeParams p = series.params;
    if (axis == SweepAxis::DeltaDb)
        p.delta = db_to_linear(axis_value);
    else
        p.n_samples = static_cast<int>(axis_value);
    return validate_params(p);
}

double theory_value(const SchemeParams& p, TdVariant variant, const QuadratureSpec& quad) {
    switch (p.scheme) {
        case Scheme::TherMod: return bep_thermod(p);
        case Scheme::NoiseMod: return bep_noisemod(p, quad);
        case Scheme::NcNoiseMod: return bep_nc_noisemod(p, quad);
        case Scheme::TdNoiseMod: return bep_td_noisemod(p, variant, quad);
    }
    throw std::logic_error("unreachable scheme");
}

std::string series_echo(const SeriesSpec& s) {
    std::ostringstream os;
    os << "series " << s.label << " scheme=" << scheme_name(s.params.scheme)
       << " alpha=" << format_double(s.params.alpha) << " n=" << s.params.n_samples
       << " slots=" << s.params.n_slots
       << " sigma_w_sq=" << format_double(s.params.awgn_variance);
    if (s.params.scheme == Scheme::TdNoiseMod && s.with_theory)
        os << " td_variant=" << td_variant_name(s.td_variant);
    return os.str();
}

}  // namespace

const char* sweep_axis_name(SweepAxis a) { return a == SweepAxis::DeltaDb ? "delta_db" : "n"; }

SweepAxis sweep_axis_from_name(const std::string& name) {
    if (name == "delta_db") return SweepAxis::DeltaDb;
    if (name == "n") return SweepAxis::NSamples;
    throw std::invalid_argument("unknown sweep axis '" + name + "' (expected delta_db or n)");
}

const char* curve_kind_name(CurveKind k) {
    switch (k) {
        case CurveKind::Theory: return "theory";
        case CurveKind::Sim: return "sim";
        case CurveKind::Reference: return "reference";
    }
    return "?";
}

CurveKind curve_kind_from_name(const std::string& name) {
    if (name == "theory") return CurveKind::Theory;
    if (name == "sim") return CurveKind::Sim;
    if (name == "reference") return CurveKind::Reference;
    throw std::invalid_argument("unknown curve kind '" + name + "'");
}

const SweepPoint* SweepResult::find(double axis_value, const std::string& series,
                                    CurveKind kind) const {
    for (const auto& row : rows)
        if (row.axis_value == axis_value && row.kind == kind && row.series == series) return &row;
    return nullptr;
}

SweepResult run_sweep(const SweepSpec& spec) {
    if (spec.axis_values.empty()) throw std::invalid_argument("axis_values must not be empty");
    for (std::size_t i = 1; i < spec.axis_values.size(); ++i)
        if (!(spec.axis_values[i] > spec.axis_values[i - 1]))
            throw std::invalid_argument("axis_values must be strictly increasing");
    if (spec.series.empty()) throw std::invalid_argument("sweep needs at least one series");

    SweepResult result;
    result.axis = spec.axis;
    result.master_seed = spec.master_seed;
    for (const auto& s : spec.series) result.parameter_echo.push_back(series_echo(s));

    for (std::size_t pi = 0; pi < spec.axis_values.size(); ++pi) {
        const double axis_value = spec.axis_values[pi];
        for (std::size_t si = 0; si < spec.series.size(); ++si) {
            const SeriesSpec& series = spec.series[si];
            const SchemeParams p = params_at(series, spec.axis, axis_value);

            if (series.with_theory) {
                SweepPoint row;
                row.axis_value = axis_value;
                row.series = series.label;
                row.kind = CurveKind::Theory;
                row.value = theory_value(p, series.td_variant, spec.quadrature);
                result.rows.push_back(row);
            }
            if (series.with_reference && p.scheme != Scheme::TherMod) {
                SweepPoint row;
                row.axis_value = axis_value;
                row.series = series.label;
                row.kind = CurveKind::Reference;
                row.value = reference_curve(p.scheme == Scheme::TdNoiseMod
                                                ? ReferenceKind::TimeDiversity
                                                : ReferenceKind::NoDiversity,
                                            p.n_samples, p.delta, p.n_slots);
                result.rows.push_back(row);
            }
            if (series.with_sim) {
                const BerEstimate est = simulate_ber(p, spec.stopping,
                                                     point_seed(spec.master_seed, si, pi),
                                                     spec.workers);
                SweepPoint row;
                row.axis_value = axis_value;
                row.series = series.label;
                row.kind = CurveKind::Sim;
                row.value = est.ber;
                row.ci_low = est.ci_low;
                row.ci_high = est.ci_high;
                row.censored = est.censored;
                result.rows.push_back(row);
            }
        }
    }
    return result;
}

SweepSpec make_fig3_spec(std::uint64_t master_seed) {
    SweepSpec spec;
    spec.axis = SweepAxis::DeltaDb;
    for (int db = -10; db <= 10; db += 2) spec.axis_values.push_back(db);
    spec.master_seed = master_seed;

    SchemeParams base;
    base.alpha = 10.0;
    base.n_samples = 120;

    SeriesSpec thermod{"thermod", base};
    thermod.params.scheme = Scheme::TherMod;
    spec.series.push_back(thermod);

    SeriesSpec nm{"noisemod", base};
    nm.params.scheme = Scheme::NoiseMod;
    nm.with_reference = true;
    spec.series.push_back(nm);

    SeriesSpec nc{"nc-noisemod", base};
    nc.params.scheme = Scheme::NcNoiseMod;
    spec.series.push_back(nc);

    for (int slots = 2; slots <= 5; ++slots) {
        SeriesSpec td{"td-i" + std::to_string(slots), base};
        td.params.scheme = Scheme::TdNoiseMod;
        td.params.n_slots = slots;
        td.with_reference = true;
        spec.series.push_back(td);

        SeriesSpec alt = td;
        alt.label += "-as-printed";
        alt.td_variant = TdVariant::AsPrinted;
        alt.with_reference = false;
        spec.series.push_back(alt);
    }
    return spec;
}

SweepSpec make_fig4_spec(std::uint64_t master_seed) {
    SweepSpec spec;
    spec.axis = SweepAxis::DeltaDb;
    for (int db = 0; db <= 14; ++db) spec.axis_values.push_back(db);
    spec.master_seed = master_seed;

    for (int n : {100, 150}) {
        SchemeParams base;
        base.alpha = 10.0;
        base.n_samples = n;

        SeriesSpec nm{"noisemod-n" + std::to_string(n), base};
        nm.params.scheme = Scheme::NoiseMod;
        nm.with_sim = true;
        spec.series.push_back(nm);

        SeriesSpec td{"td-i2-n" + std::to_string(n), base};
        td.params.scheme = Scheme::TdNoiseMod;
        td.params.n_slots = 2;
        td.with_sim = true;
        spec.series.push_back(td);
    }
    return spec;
}

SweepSpec make_fig5_spec(std::uint64_t master_seed) {
    SweepSpec spec;
    spec.axis = SweepAxis::NSamples;
    for (int n = 100; n <= 300; n += 20) spec.axis_values.push_back(n);
    spec.master_seed = master_seed;

    for (int db : {6, 12}) {
        SchemeParams base;
        base.alpha = 10.0;
        base.delta = db_to_linear(db);

        const std::string suffix = "-d" + std::to_string(db);
        SeriesSpec nm{"noisemod" + suffix, base};
        nm.params.scheme = Scheme::NoiseMod;
        nm.with_sim = true;
        spec.series.push_back(nm);

        SeriesSpec nc{"nc-noisemod" + suffix, base};
        nc.params.scheme = Scheme::NcNoiseMod;
        nc.with_sim = true;
        spec.series.push_back(nc);

        SeriesSpec td{"td-i2" + suffix, base};
        td.params.scheme = Scheme::TdNoiseMod;
        td.params.n_slots = 2;
        td.with_sim = true;
        spec.series.push_back(td);
    }
    return spec;
}

SweepResult run_fig3(std::uint64_t master_seed) { return run_sweep(make_fig3_spec(master_seed)); }
SweepResult run_fig4(std::uint64_t master_seed) { return run_sweep(make_fig4_spec(master_seed)); }
SweepResult run_fig5(std::uint64_t master_seed) { return run_sweep(make_fig5_spec(master_seed)); }

std::string emit_csv(const SweepResult& result) {
    std::ostringstream os;
    os << "# axis " << sweep_axis_name(result.axis) << "\n";
    os << "# seed " << result.master_seed << "\n";
    for (const auto& line : result.parameter_echo) os << "# " << line << "\n";
    os << "axis,scheme,kind,value,ci_low,ci_high,censored\n";
    for (const auto& row : result.rows) {
        os << format_double(row.axis_value) << ',' << row.series << ','
           << curve_kind_name(row.kind) << ',' << format_double(row.value) << ',';
        if (row.ci_low) os << format_double(*row.ci_low);
        os << ',';
        if (row.ci_high) os << format_double(*row.ci_high);
        os << ',' << (row.censored ? "true" : "false") << "\n";
    }
    return os.str();
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

}  // namespace

SweepResult parse_csv(const std::string& text) {
    SweepResult result;
    std::istringstream is(text);
    std::string line;
    bool header_seen = false;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            const std::string body = line.size() > 2 ? line.substr(2) : "";
            if (body.rfind("axis ", 0) == 0)
                result.axis = sweep_axis_from_name(body.substr(5));
            else if (body.rfind("seed ", 0) == 0)
                result.master_seed = std::strtoull(body.c_str() + 5, nullptr, 10);
            else
                result.parameter_echo.push_back(body);
            continue;
        }
        if (!header_seen) {
            if (line != "axis,scheme,kind,value,ci_low,ci_high,censored")
                throw std::invalid_argument("unexpected CSV header: " + line);
            header_seen = true;
            continue;
        }
        const auto fields = split_fields(line);
        if (fields.size() != 7) throw std::invalid_argument("malformed CSV row: " + line);
        SweepPoint row;
        row.axis_value = std::strtod(fields[0].c_str(), nullptr);
        row.series = fields[1];
        row.kind = curve_kind_from_name(fields[2]);
        row.value = std::strtod(fields[3].c_str(), nullptr);
        if (!fields[4].empty()) row.ci_low = std::strtod(fields[4].c_str(), nullptr);
        if (!fields[5].empty()) row.ci_high = std::strtod(fields[5].c_str(), nullptr);
        if (fields[6] == "true")
            row.censored = true;
        else if (fields[6] == "false")
            row.censored = false;
        else
            throw std::invalid_argument("censored must be true or false, got " + fields[6]);
        result.rows.push_back(row);
    }
    if (!header_seen) throw std::invalid_argument("CSV is missing its header row");
    return result;
}

}  // namespace noisemod
