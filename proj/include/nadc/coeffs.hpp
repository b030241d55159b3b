#pragma once

// Heisenberg-picture evolution of the three-mode coupler: signal (1) and
// idler (2) share the parametric-amplifier waveguide, mode 3 propagates in
// the linear waveguide.

#include <array>
#include <complex>

#include <Eigen/Core>

namespace nadc {

using Complex = std::complex<double>;
using Matrix6 = Eigen::Matrix<double, 6, 6>;

/// Coupling constants and initial coherent amplitudes.
///
/// lambda1 drives pair creation in the nonlinear guide; lambda2 and lambda3
/// couple signal and idler to the linear mode.
struct CouplerParams {
    double lambda1 = 1.0;
    double lambda2 = 1.0 / 1.4142135623730951;
    double lambda3 = 1.0 / 1.4142135623730951;
    Complex alpha1{};
    Complex alpha2{};
    Complex alpha3{};

    /// lambda2 = lambda3 = lambda1/sqrt(2), the case with a closed-form solution.
    static CouplerParams restricted(double lambda1, Complex alpha1 = {}, Complex alpha2 = {},
                                    Complex alpha3 = {});
    /// Same amplitude in all three inputs.
    static CouplerParams restricted_uniform(double lambda1, Complex alpha);

    [[nodiscard]] bool is_restricted() const;

    /// Throws std::invalid_argument on non-finite or out-of-range values.
    void validate() const;
};

/// The 18 real coefficients of the operator solution at time t.
///
/// Arrays are zero-based: f[0] is f_1. Signs follow the operator expansion
///   A1(t) = a1 f1 + a1+ f2 - a2 f3 - a2+ f4 - a3 f5 - a3+ f6
///   A2(t) = a2 g1 + a2+ g2 - a1 g3 - a1+ g4 - a3 g5 - a3+ g6
///   A3(t) = a3 h1 + a3+ h2 + a2 h3 + a2+ h4 + a1 h5 + a1+ h6
struct EvolutionCoefficients {
    double t = 0.0;
    std::array<double, 6> f{};
    std::array<double, 6> g{};
    std::array<double, 6> h{};

    static EvolutionCoefficients identity(double t = 0.0);
};

/// Overflow threshold on lambda1*t (and on ||M t||_1 for the numeric route).
inline constexpr double kMaxGrowthExponent = 700.0;

/// Closed-form coefficients for restricted coupling (lambda2 = lambda3 =
/// lambda1/sqrt(2)); the idler row equals the signal row.
///
/// Throws std::invalid_argument for non-finite input or lambda1 <= 0 and
/// std::range_error when |lambda1 t| exceeds kMaxGrowthExponent.
EvolutionCoefficients analytic_coefficients(double lambda1, double t);

/// Linear generator of the Heisenberg equations on the operator vector
/// (A1, A1+, A2, A2+, A3, A3+).
Matrix6 generator_matrix(const CouplerParams& params);

/// exp(M t) by scaling and squaring.
///
/// The argument is halved until ||M t||_1 <= 0.5 and a degree-18 Taylor
/// polynomial is evaluated there (truncation below 1e-22), then squared back.
/// Throws std::range_error when ||M t||_1 > kMaxGrowthExponent.
Matrix6 propagator(const CouplerParams& params, double t);
Matrix6 matrix_exponential(const Matrix6& a);

/// Coefficients for arbitrary couplings, read off rows 1, 3 and 5 of exp(M t).
EvolutionCoefficients numeric_coefficients(const CouplerParams& params, double t);

/// The 6x6 matrix S with (A1(t), A1+(t), ...)^T = S (a1, a1+, ...)^T,
/// rebuilt from the coefficients. Equals exp(M t) for consistent input.
Matrix6 coefficient_matrix(const EvolutionCoefficients& coeffs);

/// Absolute residuals of the bosonic commutation identities.
///
/// norm_* are [A_j, A_j+] - 1 for each mode. The cross_* entries are
/// [A_i, A_j] and the conj_* entries [A_i, A_j+] for i != j; for the
/// signal/idler pair these are the second and third coefficient identities
/// written out in f and g. symplectic is max |S Omega S^T - Omega|.
struct IdentityResiduals {
    double norm_signal = 0.0;
    double norm_idler = 0.0;
    double norm_linear = 0.0;
    double cross_signal_idler = 0.0;
    double conj_signal_idler = 0.0;
    double cross_signal_linear = 0.0;
    double conj_signal_linear = 0.0;
    double cross_idler_linear = 0.0;
    double conj_idler_linear = 0.0;
    double symplectic = 0.0;

    [[nodiscard]] double max() const;
};

IdentityResiduals verify_identities(const EvolutionCoefficients& coeffs);

}  // namespace nadc
