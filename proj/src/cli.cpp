#include "noisemod/cli.hpp"

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "noisemod/rng.hpp"
#include "noisemod/waveform.hpp"

namespace noisemod {

namespace {

void warn_small_n(int n) {
    if (n < 100)
        std::cerr << "warning: N=" << n
                  << " is below 100; the Gaussian sample-variance approximation degrades and "
                     "results can be inconsistent\n";
}

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (!trim(cur).empty() || !out.empty()) out.push_back(trim(cur));
    return out;
}

double parse_number(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const double v = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "' has a non-numeric value '" + value + "'");
    }
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1") return true;
    if (value == "false" || value == "0") return false;
    throw ConfigError("config key '" + key + "' must be true or false, got '" + value + "'");
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
    os << content;
}

void emit_sweep_outputs(const SweepResult& result, const std::string& out_dir,
                        const std::string& name, const std::string& title) {
    std::filesystem::create_directories(out_dir);
    const auto csv_path = std::filesystem::path(out_dir) / (name + ".csv");
    const auto svg_path = std::filesystem::path(out_dir) / (name + ".svg");
    write_file(csv_path, emit_csv(result));
    write_file(svg_path, render_svg(result, title));
    std::cout << "wrote " << csv_path.string() << "\n";
    std::cout << "wrote " << svg_path.string() << "\n";
}

std::string waveform_csv(const VariancePlan& plan, std::uint64_t seed) {
    const auto samples = generate_bit_samples(plan, SeedContext{seed, 0});
    std::ostringstream os;
    os << "sample_index,re,im,variance_level\n";
    char buf[96];
    for (std::size_t k = 0; k < samples.size(); ++k) {
        std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g,%.17g\n", k, samples[k].real(),
                      samples[k].imag(), plan.per_sample_variance[k]);
        os << buf;
    }
    return os.str();
}

}  // namespace

RunConfig parse_run_config(const std::string& text) {
    RunConfig config;
    bool have_values = false, have_n_list = false, have_delta_list = false;
    std::istringstream is(text);
    std::string line;
    int line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(line_no) + " is not 'key = value': " + line);
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));

        if (key == "axis") {
            try {
                config.axis = sweep_axis_from_name(value);
            } catch (const std::invalid_argument& e) {
                throw ConfigError(e.what());
            }
        } else if (key == "values") {
            config.axis_values.clear();
            for (const auto& item : split_list(value))
                config.axis_values.push_back(parse_number(key, item));
            have_values = true;
        } else if (key == "schemes") {
            config.schemes.clear();
            for (const auto& item : split_list(value)) {
                try {
                    config.schemes.push_back(scheme_from_name(item));
                } catch (const std::invalid_argument& e) {
                    throw ConfigError(e.what());
                }
            }
        } else if (key == "n") {
            config.n_list = {static_cast<int>(parse_number(key, value))};
            have_n_list = true;
        } else if (key == "n_list") {
            config.n_list.clear();
            for (const auto& item : split_list(value))
                config.n_list.push_back(static_cast<int>(parse_number(key, item)));
            have_n_list = true;
        } else if (key == "delta_db") {
            config.delta_db_list = {parse_number(key, value)};
            have_delta_list = true;
        } else if (key == "delta_db_list") {
            config.delta_db_list.clear();
            for (const auto& item : split_list(value))
                config.delta_db_list.push_back(parse_number(key, item));
            have_delta_list = true;
        } else if (key == "alpha") {
            config.alpha = parse_number(key, value);
        } else if (key == "slots") {
            config.n_slots = static_cast<int>(parse_number(key, value));
        } else if (key == "sigma_w_sq") {
            config.sigma_w_sq = parse_number(key, value);
        } else if (key == "seed") {
            config.seed = static_cast<std::uint64_t>(parse_number(key, value));
        } else if (key == "min_errors") {
            config.min_errors = static_cast<std::uint64_t>(parse_number(key, value));
        } else if (key == "max_bits") {
            config.max_bits = static_cast<std::uint64_t>(parse_number(key, value));
        } else if (key == "workers") {
            config.workers = static_cast<int>(parse_number(key, value));
        } else if (key == "with_theory") {
            config.with_theory = parse_bool(key, value);
        } else if (key == "with_sim") {
            config.with_sim = parse_bool(key, value);
        } else if (key == "with_reference") {
            config.with_reference = parse_bool(key, value);
        } else if (key == "td_variant") {
            if (value == "rederived")
                config.td_variant = TdVariant::Rederived;
            else if (value == "as-printed")
                config.td_variant = TdVariant::AsPrinted;
            else if (value == "both")
                config.both_td_variants = true;
            else
                throw ConfigError("td_variant must be rederived, as-printed or both");
        } else if (key == "out") {
            config.out_dir = value;
        } else {
            throw ConfigError("unknown config key '" + key + "'");
        }
    }
    if (!have_values) throw ConfigError("config must set 'values'");
    if (config.axis == SweepAxis::DeltaDb && !have_n_list) config.n_list = {120};
    if (config.axis == SweepAxis::NSamples && !have_delta_list) config.delta_db_list = {6.0};
    return config;
}

SweepSpec sweep_from_config(const RunConfig& config) {
    SweepSpec spec;
    spec.axis = config.axis;
    spec.axis_values = config.axis_values;
    spec.master_seed = config.seed;
    spec.workers = config.workers;
    spec.stopping = StoppingRule{config.min_errors, config.max_bits};

    // One curve per (scheme, fixed n) when sweeping delta, per (scheme,
    // fixed delta) when sweeping N.
    const bool vary_delta = config.axis == SweepAxis::DeltaDb;
    const std::vector<int> fixed_ns =
        vary_delta ? config.n_list
                   : std::vector<int>{config.n_list.empty() ? 120 : config.n_list.front()};
    const std::vector<double> fixed_dbs = vary_delta ? std::vector<double>{0.0}
                                                     : config.delta_db_list;

    for (Scheme scheme : config.schemes) {
        for (int n : fixed_ns) {
            for (double db : fixed_dbs) {
                SchemeParams params;
                params.scheme = scheme;
                params.alpha = config.alpha;
                params.awgn_variance = config.sigma_w_sq;
                params.n_slots = scheme == Scheme::TdNoiseMod ? config.n_slots : 1;
                params.n_samples = n;
                if (!vary_delta) params.delta = db_to_linear(db);

                std::string label = scheme_name(scheme);
                if (scheme == Scheme::TdNoiseMod) label = "td-i" + std::to_string(params.n_slots);
                if (vary_delta && fixed_ns.size() > 1) label += "-n" + std::to_string(n);
                if (!vary_delta && fixed_dbs.size() > 1) {
                    std::ostringstream os;
                    os << "-d" << db;
                    label += os.str();
                }

                SeriesSpec series{label, params};
                series.with_theory = config.with_theory;
                series.with_sim = config.with_sim;
                series.with_reference = config.with_reference && scheme != Scheme::TherMod;
                series.td_variant = config.td_variant;
                spec.series.push_back(series);

                if (scheme == Scheme::TdNoiseMod && config.both_td_variants) {
                    SeriesSpec alt = series;
                    alt.td_variant = config.td_variant == TdVariant::AsPrinted
                                         ? TdVariant::Rederived
                                         : TdVariant::AsPrinted;
                    alt.label += std::string("-") + td_variant_name(alt.td_variant);
                    alt.with_sim = false;
                    alt.with_reference = false;
                    spec.series.push_back(alt);
                }
            }
        }
    }
    return spec;
}

int cli_main(int argc, const char* const* argv) {
    CLI::App app{"Link-level simulator and analytical toolkit for noise-variance modulation"};
    app.require_subcommand(1);

    // shared parameter options
    std::string scheme_name_arg = "noisemod";
    int n_samples = 120;
    double delta_db = 0.0;
    double alpha = 10.0;
    int slots = 1;
    double sigma_w_sq = 1.0;
    std::uint64_t seed = 1;
    int workers = 0;

    const auto add_params = [&](CLI::App* cmd, bool with_slots = true) {
        cmd->add_option("--scheme", scheme_name_arg,
                        "thermod, noisemod, nc-noisemod or td-noisemod")
            ->capture_default_str();
        cmd->add_option("--n", n_samples, "noise samples per bit (N)")->capture_default_str();
        cmd->add_option("--delta-db", delta_db, "delta in dB")->capture_default_str();
        cmd->add_option("--alpha", alpha, "variance ratio (linear)")->capture_default_str();
        if (with_slots)
            cmd->add_option("--i,--slots", slots, "time-diversity slots (td-noisemod)")
                ->capture_default_str();
        cmd->add_option("--sigma-w-sq", sigma_w_sq, "AWGN variance")->capture_default_str();
    };

    // theory
    auto* theory_cmd = app.add_subcommand("theory", "evaluate a bit error probability formula");
    add_params(theory_cmd);
    double h_sq = -1.0;
    std::string td_variant_arg = td_variant_name(kDefaultTdVariant);
    bool both_td = false;
    double rel_tol = 1e-10;
    theory_cmd->add_option("--h-sq", h_sq,
                           "conditional channel power gain (omit for the fading average)");
    theory_cmd->add_option("--td-variant", td_variant_arg, "rederived or as-printed")
        ->capture_default_str();
    theory_cmd->add_flag("--both-td-variants", both_td, "print both td readings");
    theory_cmd->add_option("--rel-tol", rel_tol, "quadrature relative tolerance")
        ->capture_default_str();

    // simulate
    auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo bit error rate at one point");
    add_params(sim_cmd);
    std::uint64_t min_errors = 100, max_bits = 100'000'000;
    sim_cmd->add_option("--seed", seed, "master seed")->capture_default_str();
    sim_cmd->add_option("--min-errors", min_errors, "stop after this many bit errors")
        ->capture_default_str();
    sim_cmd->add_option("--max-bits", max_bits, "hard cap on simulated bits")
        ->capture_default_str();
    sim_cmd->add_option("--workers", workers, "worker threads (0 = hardware)")
        ->capture_default_str();

    // sweep
    auto* sweep_cmd = app.add_subcommand("sweep", "run a figure sweep or a config-defined sweep");
    int figure = 0;
    std::string config_path, out_dir = "results";
    sweep_cmd->add_option("--figure", figure, "3, 4 or 5")->check(CLI::IsMember({3, 4, 5}));
    sweep_cmd->add_option("--config", config_path, "flat key = value sweep description");
    sweep_cmd->add_option("--seed", seed, "master seed")->capture_default_str();
    sweep_cmd->add_option("--out", out_dir, "output directory")->capture_default_str();
    sweep_cmd->add_option("--workers", workers, "worker threads (0 = hardware)")
        ->capture_default_str();
    std::uint64_t sweep_min_errors = 0, sweep_max_bits = 0;
    sweep_cmd->add_option("--min-errors", sweep_min_errors, "override stopping rule");
    sweep_cmd->add_option("--max-bits", sweep_max_bits, "override bit cap");

    // waveform
    auto* wave_cmd = app.add_subcommand("waveform", "export a transmit waveform as CSV");
    std::string bits_arg = "0110";
    std::string wave_out;
    wave_cmd->add_option("--bits", bits_arg, "bit string, e.g. 0110")->capture_default_str();
    add_params(wave_cmd);
    wave_cmd->add_option("--seed", seed, "master seed")->capture_default_str();
    wave_cmd->add_option("--out", wave_out, "output file (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (theory_cmd->parsed()) {
            SchemeParams p;
            p.scheme = scheme_from_name(scheme_name_arg);
            p.alpha = alpha;
            p.delta = db_to_linear(delta_db);
            p.n_samples = n_samples;
            p.n_slots = p.scheme == Scheme::TdNoiseMod ? slots : 1;
            p.awgn_variance = sigma_w_sq;
            validate_params(p);

            QuadratureSpec quad;
            quad.rel_tolerance = rel_tol;
            const bool conditional = theory_cmd->count("--h-sq") > 0;
            const TdVariant variant = td_variant_arg == "as-printed" ? TdVariant::AsPrinted
                                                                     : TdVariant::Rederived;
            if (td_variant_arg != "as-printed" && td_variant_arg != "rederived")
                throw std::invalid_argument("--td-variant must be rederived or as-printed");

            const auto evaluate = [&](TdVariant v) {
                switch (p.scheme) {
                    case Scheme::TherMod: return bep_thermod(p);
                    case Scheme::NoiseMod:
                        return conditional ? bep_noisemod_conditional(p, h_sq)
                                           : bep_noisemod(p, quad);
                    case Scheme::NcNoiseMod:
                        return conditional ? bep_nc_conditional(p, h_sq) : bep_nc_noisemod(p, quad);
                    case Scheme::TdNoiseMod:
                        return conditional ? bep_td_conditional(p, h_sq, v)
                                           : bep_td_noisemod(p, v, quad);
                }
                return 0.0;
            };

            char buf[48];
            if (both_td && p.scheme == Scheme::TdNoiseMod) {
                std::snprintf(buf, sizeof buf, "%.12e", evaluate(TdVariant::Rederived));
                std::cout << "rederived " << buf << "\n";
                std::snprintf(buf, sizeof buf, "%.12e", evaluate(TdVariant::AsPrinted));
                std::cout << "as-printed " << buf << "\n";
            } else {
                std::snprintf(buf, sizeof buf, "%.12e", evaluate(variant));
                std::cout << buf << "\n";
            }
        } else if (sim_cmd->parsed()) {
            SchemeParams p;
            p.scheme = scheme_from_name(scheme_name_arg);
            p.alpha = alpha;
            p.delta = db_to_linear(delta_db);
            p.n_samples = n_samples;
            p.n_slots = p.scheme == Scheme::TdNoiseMod ? slots : 1;
            p.awgn_variance = sigma_w_sq;
            validate_params(p);
            warn_small_n(p.n_samples);

            const BerEstimate est =
                simulate_ber(p, StoppingRule{min_errors, max_bits}, seed, workers);
            char buf[192];
            std::snprintf(buf, sizeof buf,
                          "ber=%.6e errors=%llu trials=%llu ci95=[%.6e,%.6e] censored=%s seed=%llu",
                          est.ber, static_cast<unsigned long long>(est.errors),
                          static_cast<unsigned long long>(est.trials), est.ci_low, est.ci_high,
                          est.censored ? "true" : "false",
                          static_cast<unsigned long long>(est.master_seed));
            std::cout << buf << "\n";
        } else if (sweep_cmd->parsed()) {
            if ((figure == 0) == config_path.empty())
                throw std::invalid_argument("sweep needs exactly one of --figure or --config");

            SweepSpec spec;
            std::string name, title;
            if (figure != 0) {
                spec = figure == 3   ? make_fig3_spec(seed)
                       : figure == 4 ? make_fig4_spec(seed)
                                     : make_fig5_spec(seed);
                name = "fig" + std::to_string(figure);
                title = figure == 3   ? "Numerical BEP of the noise modulation schemes (N=120)"
                        : figure == 4 ? "Theory vs simulation, NoiseMod and TD-NoiseMod (I=2)"
                                      : "BER vs N at fixed delta";
            } else {
                std::ifstream is(config_path);
                if (!is) throw ConfigError("cannot read config file " + config_path);
                std::stringstream buffer;
                buffer << is.rdbuf();
                RunConfig config = parse_run_config(buffer.str());
                if (sweep_cmd->count("--seed")) config.seed = seed;
                if (sweep_cmd->count("--workers")) config.workers = workers;
                if (sweep_cmd->count("--out") == 0) out_dir = config.out_dir;
                if (sweep_min_errors) config.min_errors = sweep_min_errors;
                if (sweep_max_bits) config.max_bits = sweep_max_bits;
                spec = sweep_from_config(config);
                name = "sweep";
                title = "noise modulation sweep";
            }
            if (sweep_cmd->count("--workers")) spec.workers = workers;
            if (sweep_min_errors) spec.stopping.min_errors = sweep_min_errors;
            if (sweep_max_bits) spec.stopping.max_bits = sweep_max_bits;
            for (const auto& s : spec.series) warn_small_n(s.params.n_samples);

            const SweepResult result = run_sweep(spec);
            emit_sweep_outputs(result, out_dir, name, title);
        } else if (wave_cmd->parsed()) {
            SchemeParams p;
            p.scheme = scheme_from_name(scheme_name_arg);
            p.alpha = alpha;
            p.delta = db_to_linear(delta_db);
            p.n_samples = n_samples;
            p.n_slots = p.scheme == Scheme::TdNoiseMod ? slots : 1;
            p.awgn_variance = sigma_w_sq;
            validate_params(p);
            warn_small_n(p.n_samples);

            const auto bits = parse_bit_string(bits_arg);
            const VariancePlan plan = plan_variances(bits, p);
            const std::string csv = waveform_csv(plan, seed);
            if (wave_out.empty()) {
                std::cout << csv;
            } else {
                write_file(wave_out, csv);
                std::cout << "wrote " << wave_out << "\n";
            }
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const QuadratureError& e) {
        std::cerr << "quadrature error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace noisemod
