#include "nadc/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace nadc {

namespace {

constexpr double kInvSqrt3 = 0.57735026918962576451;
constexpr double kSqrt3Over2 = 0.86602540378443864676;

}  // namespace

std::string_view to_string(ModeId mode) {
    switch (mode) {
        case ModeId::Signal:
            return "signal";
        case ModeId::Idler:
            return "idler";
        case ModeId::Linear:
            return "linear";
    }
    return "unknown";
}

ModeId parse_mode(std::string_view text) {
    if (text == "signal" || text == "1") return ModeId::Signal;
    if (text == "idler" || text == "2") return ModeId::Idler;
    if (text == "linear" || text == "3") return ModeId::Linear;
    throw std::invalid_argument("unknown mode '" + std::string(text) +
                                "' (expected signal, idler or linear)");
}

std::array<double, 6> mode_row(const EvolutionCoefficients& c, ModeId mode) {
    switch (mode) {
        case ModeId::Signal:
            return c.f;
        case ModeId::Idler:
            return {-c.g[2], -c.g[3], -c.g[0], -c.g[1], c.g[4], c.g[5]};
        case ModeId::Linear:
            return {c.h[4], c.h[5], -c.h[2], -c.h[3], -c.h[0], -c.h[1]};
    }
    throw std::invalid_argument("invalid mode");
}

Complex mean_amplitude(const EvolutionCoefficients& coeffs, const CouplerParams& params,
                       ModeId mode) {
    const auto c = mode_row(coeffs, mode);
    const Complex& a1 = params.alpha1;
    const Complex& a2 = params.alpha2;
    const Complex& a3 = params.alpha3;
    return a1 * c[0] + std::conj(a1) * c[1] - a2 * c[2] - std::conj(a2) * c[3] - a3 * c[4] -
           std::conj(a3) * c[5];
}

GaussianModeState state_params(const EvolutionCoefficients& coeffs, const CouplerParams& params,
                               ModeId mode) {
    const auto c = mode_row(coeffs, mode);
    GaussianModeState s;
    s.mode = mode;
    s.t = coeffs.t;
    s.mean = mean_amplitude(coeffs, params, mode);
    s.eta1 = 0.0;
    s.eta2 = 0.0;
    s.a_plus = 0.0;
    s.a_minus = 0.0;
    for (int k = 0; k < 3; ++k) {
        const double u = c[2 * k];
        const double v = c[2 * k + 1];
        s.eta1 += u * u + v * v;
        s.eta2 += u * v;
        s.a_plus += (u + v) * (u + v);
        s.a_minus += (u - v) * (u - v);
    }
    return s;
}

GaussianModeState state_at(const CouplerParams& params, double t, ModeId mode) {
    params.validate();
    const EvolutionCoefficients coeffs = (params.is_restricted() && params.lambda1 > 0.0)
                                             ? analytic_coefficients(params.lambda1, t)
                                             : numeric_coefficients(params, t);
    return state_params(coeffs, params, mode);
}

QuadratureVariances quadrature_variances(const GaussianModeState& state) {
    QuadratureVariances v;
    v.vx = state.a_plus / 4.0;
    v.vy = state.a_minus / 4.0;
    v.x_squeezed = 4.0 * v.vx - 1.0 < 0.0;
    v.y_squeezed = 4.0 * v.vy - 1.0 < 0.0;
    return v;
}

QuadratureVariances linear_mode_variances(double lambda1, double t) {
    const double kt = kSqrt3Over2 * lambda1 * t;
    const double s = std::sin(kt);
    const double c = std::cos(kt);
    const double base = 4.0 / 3.0 * s * s;
    QuadratureVariances v;
    v.vx = 0.25 * (base + (c + kInvSqrt3 * s) * (c + kInvSqrt3 * s)) * std::exp(-lambda1 * t);
    v.vy = 0.25 * (base + (c - kInvSqrt3 * s) * (c - kInvSqrt3 * s)) * std::exp(lambda1 * t);
    v.x_squeezed = 4.0 * v.vx - 1.0 < 0.0;
    v.y_squeezed = 4.0 * v.vy - 1.0 < 0.0;
    return v;
}

double uncertainty_product(double lambda1, double t) {
    if (!(lambda1 > 0.0)) {
        throw std::invalid_argument("lambda1 must be positive");
    }
    const double s = std::sin(kSqrt3Over2 * lambda1 * t);
    const double s2 = s * s;
    return (1.0 + 16.0 / 9.0 * s2 * s2) / 16.0;
}

SqueezedTime squeeze_times(double lambda1, int m) {
    if (m < 1) {
        throw std::invalid_argument("squeeze_times: m must be >= 1");
    }
    if (!(lambda1 > 0.0) || !std::isfinite(lambda1)) {
        throw std::invalid_argument("lambda1 must be positive and finite");
    }
    const double r = 2.0 * m * std::numbers::pi / std::numbers::sqrt3;
    return {r / lambda1, r};
}

bool p_function_regular(const GaussianModeState& state) {
    return state.a_plus > 1.0 && state.a_minus > 1.0;
}

double quasiprobability(const GaussianModeState& state, Complex beta, double s) {
    if (!std::isfinite(beta.real()) || !std::isfinite(beta.imag())) {
        throw std::invalid_argument("quasiprobability: beta must be finite");
    }
    if (!std::isfinite(s) || s > 1.0) {
        throw std::invalid_argument("quasiprobability: ordering parameter must be <= 1");
    }
    const double dp = state.a_plus - s;
    const double dm = state.a_minus - s;
    if (s == 1.0 && !p_function_regular(state)) {
        throw std::domain_error("P function is singular (A+ = " + std::to_string(state.a_plus) +
                                ", A- = " + std::to_string(state.a_minus) + ")");
    }
    if (!(dp > 0.0) || !(dm > 0.0)) {
        throw std::domain_error("quasiprobability: A-+ - s must be positive");
    }
    const Complex l = state.mean - beta;
    // [l - l*]^2 = -4 Im(l)^2, [l + l*]^2 = 4 Re(l)^2
    const double exponent = -2.0 * l.imag() * l.imag() / dm - 2.0 * l.real() * l.real() / dp;
    return 2.0 / (std::numbers::pi * std::sqrt(dp * dm)) * std::exp(exponent);
}

PhaseSpaceGrid quasiprobability_grid(const GaussianModeState& state, double s,
                                     double half_width_sigmas, int resolution) {
    if (resolution < 2) {
        throw std::invalid_argument("quasiprobability_grid: resolution must be >= 2");
    }
    const auto v = quadrature_variances(state);
    const double half_x = half_width_sigmas * std::sqrt(v.vx);
    const double half_y = half_width_sigmas * std::sqrt(v.vy);
    PhaseSpaceGrid grid;
    const auto n = static_cast<std::size_t>(resolution);
    grid.x.resize(n);
    grid.y.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double u = -1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(resolution - 1);
        grid.x[i] = state.mean.real() + half_x * u;
        grid.y[i] = state.mean.imag() + half_y * u;
    }
    grid.values.resize(n * n);
    for (std::size_t iy = 0; iy < n; ++iy) {
        for (std::size_t ix = 0; ix < n; ++ix) {
            grid.values[iy * n + ix] = quasiprobability(state, {grid.x[ix], grid.y[iy]}, s);
        }
    }
    return grid;
}

}  // namespace nadc
