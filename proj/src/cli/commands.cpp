#include "nadc/cli/commands.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "nadc/cli/verify.hpp"
#include "nadc/distributions.hpp"
#include "nadc/fock_oracle.hpp"

namespace nadc::cli {

namespace {

EvolutionCoefficients coefficients_for(const RunConfig& config, const CouplerParams& params,
                                       double t) {
    switch (config.method) {
        case CoefficientMethod::Analytic:
            if (!params.is_restricted()) {
                throw ConfigError("method=analytic requires lambda2 = lambda3 = lambda1/sqrt(2)");
            }
            return analytic_coefficients(params.lambda1, t);
        case CoefficientMethod::Numeric:
            return numeric_coefficients(params, t);
        case CoefficientMethod::Auto:
            break;
    }
    return params.is_restricted() ? analytic_coefficients(params.lambda1, t)
                                  : numeric_coefficients(params, t);
}

GaussianModeState state_for(const RunConfig& config, const CouplerParams& params, double t) {
    return state_params(coefficients_for(config, params, t), params, config.mode);
}

void describe(Dataset& data, const RunConfig& config) {
    const CouplerParams p = config.params();
    data.add_meta("lambda1", p.lambda1);
    data.add_meta("lambda2", p.lambda2);
    data.add_meta("lambda3", p.lambda3);
    for (int j = 0; j < 3; ++j) {
        const auto k = static_cast<std::size_t>(j);
        data.add_meta("alpha" + std::to_string(j + 1) + "_abs", config.alpha_abs[k]);
        data.add_meta("alpha" + std::to_string(j + 1) + "_phase", config.alpha_phase[k]);
    }
    data.add_meta("mode", std::string(to_string(config.mode)));
    data.add_meta("t_start", config.time.start);
    data.add_meta("t_stop", config.time.count > 1 ? config.time.stop : config.time.start);
    data.add_meta("t_count", config.time.count);
    const char* method = config.method == CoefficientMethod::Analytic  ? "analytic"
                         : config.method == CoefficientMethod::Numeric ? "numeric"
                                                                       : "auto";
    data.add_meta("method", std::string(method));
}

void absorb_warnings(Dataset& data, const DistributionSeries& series, double t) {
    for (const auto& w : series.warnings) {
        data.warnings.push_back("t=" + format_number(t) + ": " + w);
    }
}

std::ostream& open_output(const RunConfig& config, std::ostream& out, std::ofstream& file) {
    if (config.output.empty()) return out;
    file.open(config.output, std::ios::binary | std::ios::trunc);
    if (!file) throw ConfigError("cannot open output file '" + config.output + "'");
    return file;
}

void emit(const Dataset& data, const RunConfig& config, std::ostream& out) {
    std::ofstream file;
    std::ostream& dest = open_output(config, out, file);
    if (config.format == OutputFormat::Json) {
        write_json(data, dest);
    } else {
        write_csv(data, dest);
    }
    dest.flush();
    if (!dest) throw ConfigError("failed writing output");
}

void report_error(std::ostream& err, const std::string& message, const char* code) {
    err << "nadc: error: " << message << " [code=" << code << "]\n";
}

}  // namespace

Dataset coeffs_dataset(const RunConfig& config) {
    Dataset data;
    data.command = "coeffs";
    describe(data, config);
    data.columns = {"t"};
    for (const char* row : {"f", "g", "h"}) {
        for (int j = 1; j <= 6; ++j) data.columns.push_back(row + std::to_string(j));
    }
    const CouplerParams params = config.params();
    for (double t : config.time.values()) {
        const auto c = coefficients_for(config, params, t);
        std::vector<double> row{t};
        row.insert(row.end(), c.f.begin(), c.f.end());
        row.insert(row.end(), c.g.begin(), c.g.end());
        row.insert(row.end(), c.h.begin(), c.h.end());
        data.rows.push_back(std::move(row));
    }
    return data;
}

Dataset variances_dataset(const RunConfig& config) {
    Dataset data;
    data.command = "variances";
    describe(data, config);
    data.columns = {"t", "vx", "vy", "product", "x_squeezed", "y_squeezed", "a_plus", "a_minus"};
    const CouplerParams params = config.params();
    for (double t : config.time.values()) {
        const auto state = state_for(config, params, t);
        const auto v = quadrature_variances(state);
        data.rows.push_back({t, v.vx, v.vy, v.product(), v.x_squeezed ? 1.0 : 0.0,
                             v.y_squeezed ? 1.0 : 0.0, state.a_plus, state.a_minus});
    }
    return data;
}

Dataset pnd_dataset(const RunConfig& config) {
    Dataset data;
    data.command = "pnd";
    describe(data, config);
    const CouplerParams params = config.params();
    const auto times = config.time.values();
    const bool grid = times.size() > 1;
    data.columns = grid ? std::vector<std::string>{"t", "n", "p", "poisson", "norm_residual"}
                        : std::vector<std::string>{"n", "p", "poisson"};
    double worst = 0.0;
    for (double t : times) {
        const auto state = state_for(config, params, t);
        const int n_max = config.n_max ? *config.n_max : default_n_max(state);
        const auto p = photon_number_distribution(state, n_max);
        const double mean = mean_photon_number(state);
        const auto poisson = poisson_reference(mean, n_max);
        absorb_warnings(data, p, t);
        worst = std::max(worst, p.norm_residual);
        if (!grid) {
            data.add_meta("n_max", n_max);
            data.add_meta("mean_n", mean);
            data.add_meta("variance_n", photon_number_variance(state));
        }
        for (std::size_t n = 0; n < p.values.size(); ++n) {
            if (grid) {
                data.rows.push_back({t, p.grid[n], p.values[n], poisson.values[n], p.norm_residual});
            } else {
                data.rows.push_back({p.grid[n], p.values[n], poisson.values[n]});
            }
        }
    }
    data.add_meta("norm_residual", worst);
    return data;
}

Dataset phase_dataset(const RunConfig& config) {
    Dataset data;
    data.command = "phase";
    describe(data, config);
    data.add_meta("theta_points", config.theta_points);
    const CouplerParams params = config.params();
    const auto times = config.time.values();
    const bool grid = times.size() > 1;
    data.columns = grid ? std::vector<std::string>{"t", "theta", "p", "norm_residual"}
                        : std::vector<std::string>{"theta", "p"};
    const auto thetas = default_theta_grid(config.theta_points);
    double worst = 0.0;
    for (double t : times) {
        const auto series = phase_distribution(state_for(config, params, t), thetas);
        absorb_warnings(data, series, t);
        worst = std::max(worst, series.norm_residual);
        for (std::size_t i = 0; i < thetas.size(); ++i) {
            if (grid) {
                data.rows.push_back({t, thetas[i], series.values[i], series.norm_residual});
            } else {
                data.rows.push_back({thetas[i], series.values[i]});
            }
        }
    }
    data.add_meta("norm_residual", worst);
    return data;
}

Dataset wigner_dataset(const RunConfig& config) {
    if (config.time.is_grid()) throw ConfigError("wigner takes a single time");
    Dataset data;
    data.command = "wigner";
    describe(data, config);
    data.add_meta("wigner_width", config.wigner_half_width);
    data.add_meta("wigner_resolution", config.wigner_resolution);
    const auto state = state_for(config, config.params(), config.time.start);
    const auto w =
        quasiprobability_grid(state, 0.0, config.wigner_half_width, config.wigner_resolution);
    data.columns = {"x", "y", "w"};
    if (config.wigner_q) data.columns.emplace_back("q");
    for (std::size_t iy = 0; iy < w.y.size(); ++iy) {
        for (std::size_t ix = 0; ix < w.x.size(); ++ix) {
            std::vector<double> row{w.x[ix], w.y[iy], w.at(ix, iy)};
            if (config.wigner_q) {
                row.push_back(quasiprobability(state, Complex(w.x[ix], w.y[iy]), -1.0));
            }
            data.rows.push_back(std::move(row));
        }
    }
    return data;
}

Dataset figure_dataset(const FigurePreset& preset) {
    Dataset data;
    data.command = "figure " + preset.id;
    data.add_meta("figure", preset.id);
    data.add_meta("caption", preset.caption);
    const CouplerParams params = preset.params();
    data.add_meta("lambda1", params.lambda1);
    data.add_meta("lambda2", params.lambda2);
    data.add_meta("lambda3", params.lambda3);
    data.add_meta("alpha_abs", std::abs(preset.alpha));
    data.add_meta("alpha_phase", std::arg(preset.alpha));
    data.add_meta("mode", std::string(to_string(preset.mode)));

    if (preset.kind == FigureKind::PhotonNumber) {
        const auto state = state_at(params, preset.t, preset.mode);
        const int n_max = default_n_max(state);
        const auto p = photon_number_distribution(state, n_max);
        const double mean = mean_photon_number(state);
        data.add_meta("t", preset.t);
        data.add_meta("n_max", n_max);
        data.add_meta("mean_n", mean);
        data.add_meta("variance_n", photon_number_variance(state));
        data.add_meta("norm_residual", p.norm_residual);
        absorb_warnings(data, p, preset.t);
        data.columns = {"n", "p"};
        std::optional<DistributionSeries> poisson;
        if (preset.poisson_reference) {
            poisson = poisson_reference(mean, n_max);
            data.columns.emplace_back("poisson");
        }
        for (std::size_t n = 0; n < p.values.size(); ++n) {
            std::vector<double> row{p.grid[n], p.values[n]};
            if (poisson) row.push_back(poisson->values[n]);
            data.rows.push_back(std::move(row));
        }
        return data;
    }

    const auto times = preset.times();
    data.add_meta("t_start", times.front());
    data.add_meta("t_stop", times.back());
    data.add_meta("t_count", static_cast<int>(times.size()));
    data.add_meta("theta_points", preset.theta_points);
    data.columns = {"t", "theta", "p", "norm_residual"};
    const auto thetas = default_theta_grid(preset.theta_points);
    double worst = 0.0;
    for (double t : times) {
        const auto series = phase_distribution(state_at(params, t, preset.mode), thetas);
        absorb_warnings(data, series, t);
        worst = std::max(worst, series.norm_residual);
        for (std::size_t i = 0; i < thetas.size(); ++i) {
            data.rows.push_back({t, thetas[i], series.values[i], series.norm_residual});
        }
    }
    data.add_meta("norm_residual", worst);
    return data;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Quantum statistics of a nonlinear asymmetric directional coupler", "nadc"};
    app.set_version_flag("--version", library_version());
    app.require_subcommand(1);

    std::map<std::string, std::string> flags;
    std::string config_path;

    // Every subcommand except verify takes the full set of run options.
    auto add_run_options = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "key = value file; flags override it");
        const std::vector<std::pair<std::string, std::string>> options = {
            {"lambda1", "pair-creation coupling"},
            {"lambda2", "signal-linear coupling (default lambda1/sqrt2)"},
            {"lambda3", "idler-linear coupling (default lambda1/sqrt2)"},
            {"alpha", "modulus of all three input amplitudes"},
            {"phase", "phase (rad) of all three input amplitudes"},
            {"alpha1", "input amplitude modulus, signal"},
            {"alpha2", "input amplitude modulus, idler"},
            {"alpha3", "input amplitude modulus, linear"},
            {"phase1", "input amplitude phase, signal"},
            {"phase2", "input amplitude phase, idler"},
            {"phase3", "input amplitude phase, linear"},
            {"mode", "signal | idler | linear"},
            {"t", "single time"},
            {"t_start", "time grid start"},
            {"t_stop", "time grid stop"},
            {"t_count", "time grid points"},
            {"n_max", "photon-number cutoff"},
            {"theta_points", "phase grid points on [-pi, pi)"},
            {"wigner_width", "half width of the phase-space box in standard deviations"},
            {"wigner_resolution", "points per phase-space axis"},
            {"method", "auto | analytic | numeric"},
            {"output", "output path (default stdout)"},
            {"format", "csv | json"},
        };
        for (const auto& [key, help] : options) {
            std::string flag = "--" + key;
            for (char& c : flag) c = c == '_' ? '-' : c;
            sub->add_option_function<std::string>(
                flag, [&flags, key = key](const std::string& v) { flags[key] = v; }, help);
        }
        sub->add_flag_callback("--wigner-q", [&flags] { flags["wigner_q"] = "true"; },
                               "also emit the Q function");
    };

    auto* coeffs = app.add_subcommand("coeffs", "18 evolution coefficients vs t");
    auto* variances = app.add_subcommand("variances", "quadrature variances vs t");
    auto* pnd = app.add_subcommand("pnd", "photon-number distribution");
    auto* phase = app.add_subcommand("phase", "phase distribution");
    auto* wigner = app.add_subcommand("wigner", "Wigner function on a grid");
    auto* figure = app.add_subcommand("figure", "data series for a published plot");
    auto* verify = app.add_subcommand("verify", "invariant and oracle checks, JSON report");
    for (auto* sub : {coeffs, variances, pnd, phase, wigner}) add_run_options(sub);

    std::string figure_id;
    std::string figure_output;
    std::string figure_format = "csv";
    figure->add_option("id", figure_id, "2 | 3a | 3b | 4a | 4b | 5a | 5b")->required();
    figure->add_option("--output", figure_output, "output path (default stdout)");
    figure->add_option("--format", figure_format, "csv | json");

    std::string verify_output;
    bool skip_oracle = false;
    double tolerance_scale = 1.0;
    int oracle_cutoff = 15;
    verify->add_option("--output", verify_output, "report path (default stdout)");
    verify->add_flag("--skip-oracle", skip_oracle, "omit the truncated-Fock comparisons");
    verify->add_option("--tolerance-scale", tolerance_scale, "multiplies every tolerance");
    verify->add_option("--cutoff", oracle_cutoff, "starting Fock cutoff per mode");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::CallForVersion&) {
        out << library_version() << '\n';
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        report_error(err, e.what(), "config_error");
        return kExitConfigError;
    } catch (const ConfigError& e) {
        report_error(err, e.what(), "config_error");
        return kExitConfigError;
    }

    try {
        if (verify->parsed()) {
            if (!(tolerance_scale > 0.0)) throw ConfigError("tolerance-scale must be > 0");
            if (oracle_cutoff < 1) throw ConfigError("cutoff must be >= 1");
            VerifyOptions options;
            options.include_oracle = !skip_oracle;
            options.tolerance_scale = tolerance_scale;
            options.oracle_start_cutoff = oracle_cutoff;
            const auto report = run_verification(options);
            RunConfig dest;
            dest.output = verify_output;
            std::ofstream file;
            std::ostream& stream = open_output(dest, out, file);
            stream << to_json(report).dump(2) << '\n';
            if (!report.passed()) {
                report_error(err, std::to_string(report.failures()) + " verification check(s) failed",
                             "verification_failed");
                return kExitVerificationFailed;
            }
            return kExitOk;
        }

        if (figure->parsed()) {
            RunConfig dest;
            dest.output = figure_output;
            apply_setting(dest, "format", figure_format);
            const FigurePreset* preset = nullptr;
            try {
                preset = &find_figure(figure_id);
            } catch (const std::out_of_range& e) {
                throw ConfigError(e.what());
            }
            emit(figure_dataset(*preset), dest, out);
            return kExitOk;
        }

        RunConfig config;
        if (!config_path.empty()) load_config_file(config, config_path);
        apply_settings(config, flags);
        config.validate();

        Dataset data;
        if (coeffs->parsed()) data = coeffs_dataset(config);
        else if (variances->parsed()) data = variances_dataset(config);
        else if (pnd->parsed()) data = pnd_dataset(config);
        else if (phase->parsed()) data = phase_dataset(config);
        else data = wigner_dataset(config);
        emit(data, config, out);
        return kExitOk;
    } catch (const ConfigError& e) {
        report_error(err, e.what(), "config_error");
        return kExitConfigError;
    } catch (const std::invalid_argument& e) {
        report_error(err, e.what(), "config_error");
        return kExitConfigError;
    } catch (const oracle::CutoffGuardError& e) {
        report_error(err, e.what(), "numeric_range");
        return kExitNumericRange;
    } catch (const std::range_error& e) {
        report_error(err, e.what(), "numeric_range");
        return kExitNumericRange;
    } catch (const std::domain_error& e) {
        report_error(err, e.what(), "numeric_range");
        return kExitNumericRange;
    } catch (const std::length_error& e) {
        report_error(err, e.what(), "numeric_range");
        return kExitNumericRange;
    } catch (const std::exception& e) {
        report_error(err, e.what(), "runtime_error");
        return kExitNumericRange;
    }
}

}  // namespace nadc::cli
