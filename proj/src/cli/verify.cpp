#include "nadc/cli/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "nadc/cli/figures.hpp"
#include "nadc/coeffs.hpp"
#include "nadc/distributions.hpp"
#include "nadc/fock_oracle.hpp"
#include "nadc/gaussian.hpp"

namespace nadc::cli {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::array<ModeId, 3> kModes{ModeId::Signal, ModeId::Idler, ModeId::Linear};
constexpr std::array<double, 3> kLambdas{0.3, 0.6, 1.0};

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> out(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = a + (b - a) * i / (n - 1);
    return out;
}

class Recorder {
public:
    explicit Recorder(double scale) : scale_(scale) {}

    void check(std::string group, std::string name, double residual, double tolerance,
               std::string detail = {}) {
        const double tol = tolerance * scale_;
        report_.checks.push_back({std::move(group), std::move(name), residual, tol,
                                  std::isfinite(residual) && residual <= tol, std::move(detail)});
    }

    void check_bool(std::string group, std::string name, bool ok, double value,
                    std::string detail) {
        report_.checks.push_back(
            {std::move(group), std::move(name), value, 0.0, ok, std::move(detail)});
    }

    VerifyReport take() { return std::move(report_); }

private:
    double scale_;
    VerifyReport report_;
};

void coefficient_checks(Recorder& rec) {
    const auto times = linspace(0.0, 5.0, 200);
    double identities = 0.0;
    double agreement = 0.0;
    for (double lambda1 : kLambdas) {
        const auto params = CouplerParams::restricted(lambda1);
        for (double t : times) {
            const auto a = analytic_coefficients(lambda1, t);
            identities = std::max(identities, verify_identities(a).max());
            const auto n = numeric_coefficients(params, t);
            for (std::size_t j = 0; j < 6; ++j) {
                agreement = std::max({agreement, std::abs(a.f[j] - n.f[j]),
                                      std::abs(a.g[j] - n.g[j]), std::abs(a.h[j] - n.h[j])});
            }
        }
    }
    rec.check("coefficients", "commutator_identities", identities, 1e-10,
              "200 times in [0,5], lambda1 in {0.3,0.6,1}");
    rec.check("coefficients", "analytic_vs_matrix_exponential", agreement, 1e-10);

    // Unrestricted couplings have no closed form; the identities must still hold.
    double general = 0.0;
    const CouplerParams odd{0.8, 0.3, 1.1, {}, {}, {}};
    for (double t : linspace(0.0, 3.0, 61)) {
        general = std::max(general, verify_identities(numeric_coefficients(odd, t)).max());
    }
    rec.check("coefficients", "identities_unrestricted_coupling", general, 1e-10,
              "lambda = (0.8, 0.3, 1.1)");
}

void variance_checks(Recorder& rec) {
    const auto times = linspace(0.0, 5.0, 200);
    double closed = 0.0;
    double product = 0.0;
    double heisenberg = 0.0;
    for (double lambda1 : kLambdas) {
        const auto params = CouplerParams::restricted(lambda1);
        for (double t : times) {
            const auto state = state_at(params, t, ModeId::Linear);
            const auto v = quadrature_variances(state);
            const auto ref = linear_mode_variances(lambda1, t);
            closed = std::max({closed, std::abs(v.vx - ref.vx), std::abs(v.vy - ref.vy)});
            product = std::max(product, std::abs(v.product() - uncertainty_product(lambda1, t)));
            for (ModeId mode : kModes) {
                const auto s = state_at(params, t, mode);
                heisenberg = std::max(heisenberg, 1.0 - s.a_plus * s.a_minus);
            }
        }
    }
    rec.check("variances", "linear_closed_form", closed, 1e-12);
    rec.check("variances", "uncertainty_product_closed_form", product, 1e-12);
    rec.check("variances", "heisenberg_bound", std::max(0.0, heisenberg), 1e-10,
              "max(0, 1 - A+ A-) over all modes");

    double minimum = 0.0;
    for (double t : {0.0, squeeze_times(1.0, 1).t_s, squeeze_times(1.0, 2).t_s}) {
        const auto v = quadrature_variances(state_at(CouplerParams::restricted(1.0), t, ModeId::Linear));
        minimum = std::max(minimum, std::abs(v.product() - 1.0 / 16.0));
    }
    rec.check("variances", "minimum_uncertainty_at_squeeze_times", minimum, 1e-12,
              "t in {0, t_s(1), t_s(2)}, lambda1 = 1");

    const auto st = squeeze_times(1.0, 1);
    const double expected = 2.0 * kPi / std::sqrt(3.0);
    rec.check("variances", "squeeze_time", std::abs(st.t_s - expected), 1e-12);
    rec.check("variances", "squeeze_parameter", std::abs(st.r - expected), 1e-12);
}

void distribution_checks(Recorder& rec) {
    double pnd_norm = 0.0;
    double pnd_negative = 0.0;
    double phase_norm = 0.0;
    double phase_negative = 0.0;
    for (const auto& preset : figure_registry()) {
        const auto params = preset.params();
        for (double t : preset.times()) {
            const auto state = state_at(params, t, preset.mode);
            if (preset.kind == FigureKind::PhotonNumber) {
                const auto p = photon_number_distribution(state);
                pnd_norm = std::max(pnd_norm, p.norm_residual);
                pnd_negative = std::min(pnd_negative, p.min_unclamped);
            } else {
                const auto p = phase_distribution(state, default_theta_grid(preset.theta_points));
                phase_norm = std::max(phase_norm, p.norm_residual);
                phase_negative = std::min(phase_negative, p.min_unclamped);
            }
        }
    }
    rec.check("distributions", "pnd_normalization_presets", pnd_norm, 1e-9);
    rec.check("distributions", "pnd_nonnegative", -pnd_negative, 1e-12);
    rec.check("distributions", "phase_normalization_presets", phase_norm, 1e-8);
    rec.check("distributions", "phase_nonnegative", -phase_negative, 1e-12);

    // Zero-mean states: the phase density reduces to the two-peak vacuum form.
    double vacuum = 0.0;
    const auto thetas = default_theta_grid(181);
    for (double t : linspace(0.0, 6.0, 13)) {
        for (ModeId mode : kModes) {
            const auto s = state_at(CouplerParams::restricted(0.6), t, mode);
            for (double theta : thetas) {
                vacuum = std::max(vacuum, std::abs(phase_density(s, theta) -
                                                   vacuum_phase_distribution(s.a_plus + 1.0,
                                                                             s.a_minus + 1.0, theta)));
            }
        }
    }
    rec.check("distributions", "zero_mean_phase_vacuum_form", vacuum, 1e-12);

    // Poissonian inputs at t = 0.
    double fano_t0 = 0.0;
    for (double lambda1 : kLambdas) {
        for (Complex alpha : {std::polar(0.5, kPi / 3.0), Complex(1.0), std::polar(3.0, kPi / 3.0)}) {
            const auto params = CouplerParams::restricted_uniform(lambda1, alpha);
            for (ModeId mode : kModes) {
                fano_t0 = std::max(fano_t0, std::abs(fano_factor(state_at(params, 0.0, mode)) - 1.0));
            }
        }
    }
    rec.check("distributions", "fano_unity_at_t0", fano_t0, 1e-12);

    // Super-Poissonian linear mode at the weak-input spot times. Not universal:
    // real inputs (alpha = 1) give an amplitude-squeezed, sub-Poissonian linear mode.
    double fano_min = 1e300;
    const auto spot = CouplerParams::restricted_uniform(1.0, std::polar(0.5, kPi / 3.0));
    for (double t : {1.0, squeeze_times(1.0, 1).t_s, 5.0}) {
        fano_min = std::min(fano_min, fano_factor(state_at(spot, t, ModeId::Linear)));
    }
    rec.check_bool("distributions", "fano_linear_super_poissonian", fano_min > 1.0, fano_min,
                   "minimum Fano factor, lambda1 = 1, alpha = 0.5 exp(i pi/3), t in {1, t_s, 5}");
}

void phase_space_checks(Recorder& rec) {
    double w_norm = 0.0;
    double w_marginal = 0.0;
    double q_negative = 0.0;
    const auto params = CouplerParams::restricted_uniform(0.6, Complex(1.0));
    for (double t : {0.5, 1.5, 3.0}) {
        for (ModeId mode : kModes) {
            const auto state = state_at(params, t, mode);
            const auto v = quadrature_variances(state);
            const auto w = quasiprobability_grid(state, 0.0, 8.0, 401);
            const double dx = w.x[1] - w.x[0];
            const double dy = w.y[1] - w.y[0];
            double total = 0.0;
            for (std::size_t ix = 0; ix < w.x.size(); ++ix) {
                double column = 0.0;
                for (std::size_t iy = 0; iy < w.y.size(); ++iy) column += w.at(ix, iy);
                column *= dy;
                total += column * dx;
                const double u = w.x[ix] - state.mean.real();
                const double gauss =
                    std::exp(-u * u / (2.0 * v.vx)) / std::sqrt(2.0 * kPi * v.vx);
                w_marginal = std::max(w_marginal, std::abs(column - gauss));
            }
            w_norm = std::max(w_norm, std::abs(total - 1.0));
            const auto q = quasiprobability_grid(state, -1.0, 8.0, 61);
            q_negative = std::min(q_negative, *std::min_element(q.values.begin(), q.values.end()));
        }
    }
    rec.check("phase_space", "wigner_normalization", w_norm, 1e-8);
    rec.check("phase_space", "wigner_marginal_gaussian", w_marginal, 1e-8);
    rec.check("phase_space", "husimi_nonnegative", -q_negative, 0.0);
}

void oracle_checks(Recorder& rec, int start_cutoff) {
    const auto params = CouplerParams::restricted_uniform(1.0, std::polar(0.5, kPi / 3.0));
    const auto thetas = default_theta_grid(181);
    for (double t : {0.5, 1.0}) {
        const auto run = oracle::evolve_converged(params, t, start_cutoff);
        double moments = 0.0;
        double pnd = 0.0;
        double phase = 0.0;
        double husimi = 0.0;
        for (ModeId mode : kModes) {
            const auto state = state_at(params, t, mode);
            oracle::ObservableGrids grids;
            grids.theta_grid = thetas;
            for (double dy : linspace(-2.0, 2.0, 11)) {
                for (double dx : linspace(-2.0, 2.0, 11)) grids.q_points.push_back(state.mean + Complex(dx, dy));
            }
            const auto obs = oracle::oracle_observables(run.state, mode, grids);
            const auto v = quadrature_variances(state);
            moments = std::max({moments, std::abs(obs.mean - state.mean), std::abs(obs.vx - v.vx),
                                std::abs(obs.vy - v.vy)});
            const auto p = photon_number_distribution(state, static_cast<int>(obs.pnd.size()) - 1);
            for (std::size_t n = 0; n < obs.pnd.size(); ++n) pnd = std::max(pnd, std::abs(p.values[n] - obs.pnd[n]));
            for (std::size_t i = 0; i < thetas.size(); ++i) {
                phase = std::max(phase, std::abs(phase_density(state, thetas[i]) - obs.phase[i]));
            }
            for (std::size_t i = 0; i < grids.q_points.size(); ++i) {
                husimi = std::max(husimi, std::abs(quasiprobability(state, grids.q_points[i], -1.0) -
                                                   obs.q_values[i]));
            }
        }
        const std::string at = "t=" + std::to_string(t).substr(0, 3);
        const std::string detail = "cutoff " + std::to_string(run.state.cutoff) + ", edge " +
                                   std::to_string(run.edge_occupancy);
        rec.check("oracle", "moments_" + at, moments, 1e-4, detail);
        rec.check("oracle", "pnd_" + at, pnd, 1e-4, detail);
        rec.check("oracle", "phase_" + at, phase, 1e-3, detail);
        rec.check("oracle", "husimi_" + at, husimi, 1e-4, detail);
        rec.check("oracle", "norm_drift_" + at, run.norm_drift, 1e-10, detail);
    }
}

}  // namespace

bool VerifyReport::passed() const { return failures() == 0; }

std::size_t VerifyReport::failures() const {
    return static_cast<std::size_t>(
        std::count_if(checks.begin(), checks.end(), [](const CheckResult& c) { return !c.passed; }));
}

VerifyReport run_verification(const VerifyOptions& options) {
    Recorder rec(options.tolerance_scale);
    coefficient_checks(rec);
    variance_checks(rec);
    distribution_checks(rec);
    phase_space_checks(rec);
    if (options.include_oracle) oracle_checks(rec, options.oracle_start_cutoff);
    return rec.take();
}

nlohmann::ordered_json to_json(const VerifyReport& report) {
    nlohmann::ordered_json out;
    out["passed"] = report.passed();
    out["failures"] = report.failures();
    auto& checks = out["checks"] = nlohmann::ordered_json::array();
    for (const auto& c : report.checks) {
        nlohmann::ordered_json j;
        j["group"] = c.group;
        j["name"] = c.name;
        j["residual"] = c.residual;
        j["tolerance"] = c.tolerance;
        j["passed"] = c.passed;
        if (!c.detail.empty()) j["detail"] = c.detail;
        checks.push_back(std::move(j));
    }
    return out;
}

}  // namespace nadc::cli
