#pragma once

// Reduced single-mode Gaussian states of the coupler outputs for coherent
// inputs, their quadrature statistics and s-ordered quasiprobabilities.

#include <array>
#include <string_view>
#include <vector>

#include "nadc/coeffs.hpp"

namespace nadc {

enum class ModeId { Signal, Idler, Linear };

std::string_view to_string(ModeId mode);
/// Accepts "signal"/"idler"/"linear" or "1"/"2"/"3"; throws std::invalid_argument.
ModeId parse_mode(std::string_view text);

/// Coefficient row of a mode written in the signal-mode layout, so that
///   A_j(t) = a1 c1 + a1+ c2 - a2 c3 - a2+ c4 - a3 c5 - a3+ c6.
/// Signal -> f, Idler -> (-g3,-g4,-g1,-g2,g5,g6), Linear -> (h5,h6,-h3,-h4,-h1,-h2).
std::array<double, 6> mode_row(const EvolutionCoefficients& coeffs, ModeId mode);

struct GaussianModeState {
    ModeId mode = ModeId::Signal;
    double t = 0.0;
    Complex mean{};
    double eta1 = 1.0;
    double eta2 = 0.0;
    double a_plus = 1.0;   // 4 Var(X)
    double a_minus = 1.0;  // 4 Var(Y)
};

Complex mean_amplitude(const EvolutionCoefficients& coeffs, const CouplerParams& params,
                       ModeId mode);

GaussianModeState state_params(const EvolutionCoefficients& coeffs, const CouplerParams& params,
                               ModeId mode);

/// Convenience: analytic coefficients for restricted params, numeric otherwise.
GaussianModeState state_at(const CouplerParams& params, double t, ModeId mode);

struct QuadratureVariances {
    double vx = 0.25;
    double vy = 0.25;
    bool x_squeezed = false;  // 4 Vx - 1 < 0
    bool y_squeezed = false;

    [[nodiscard]] double product() const { return vx * vy; }
};

QuadratureVariances quadrature_variances(const GaussianModeState& state);

/// Closed-form linear-mode variances for restricted coupling:
///   Vx = 1/4 {4/3 sin^2(kt) + [cos(kt) + sin(kt)/sqrt3]^2} e^{-lambda1 t}
///   Vy = 1/4 {4/3 sin^2(kt) + [cos(kt) - sin(kt)/sqrt3]^2} e^{+lambda1 t}
/// with k = sqrt(3)/2 lambda1.
QuadratureVariances linear_mode_variances(double lambda1, double t);

/// Linear-mode Vx Vy = (1/16)[1 + (16/9) sin^4(kt)].
double uncertainty_product(double lambda1, double t);

struct SqueezedTime {
    double t_s = 0.0;
    /// Squeeze parameter in the convention Var = e^{-+r}/4 (not e^{-+2r}/4).
    double r = 0.0;
};

/// m-th time at which the two waveguides decouple: t_s = 2 m pi / (sqrt3 lambda1).
SqueezedTime squeeze_times(double lambda1, int m);

/// s-ordered quasiprobability at beta. s = 0 is the Wigner function,
/// s = -1 the Husimi Q function. Any s with A+ - s > 0 and A- - s > 0 is
/// accepted; s = +1 (Glauber P) is rejected with std::domain_error whenever
/// A+ <= 1 or A- <= 1 since P is then not a regular function.
double quasiprobability(const GaussianModeState& state, Complex beta, double s);

/// True when the P function exists as a regular Gaussian (A+ > 1 and A- > 1).
bool p_function_regular(const GaussianModeState& state);

struct PhaseSpaceGrid {
    std::vector<double> x;
    std::vector<double> y;
    std::vector<double> values;  // row-major, values[iy * x.size() + ix]

    [[nodiscard]] double at(std::size_t ix, std::size_t iy) const {
        return values[iy * x.size() + ix];
    }
};

/// Samples the quasiprobability on a grid centred at the mean with `resolution`
/// points per axis, spanning +- half_width_sigmas * sqrt(Vx) in x and
/// +- half_width_sigmas * sqrt(Vy) in y, so both axes stay resolved under squeezing.
PhaseSpaceGrid quasiprobability_grid(const GaussianModeState& state, double s,
                                     double half_width_sigmas = 5.0, int resolution = 201);

}  // namespace nadc
