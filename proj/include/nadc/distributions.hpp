#pragma once

// Photon-number and phase distributions of a single-mode Gaussian output.

#include <string>
#include <vector>

#include "nadc/gaussian.hpp"
#include "nadc/special_functions.hpp"

namespace nadc {

enum class SeriesKind { PhotonNumber, Phase };

struct DistributionSeries {
    SeriesKind kind = SeriesKind::PhotonNumber;
    std::vector<double> grid;    // n = 0..n_max, or Theta ascending in [-pi, pi)
    std::vector<double> values;  // clamped to >= 0
    double norm_residual = 0.0;  // |1 - sum| or |1 - integral|
    double min_unclamped = 0.0;  // most negative raw value (0 if none)
    std::vector<std::string> warnings;
};

/// <n> = |mean|^2 + (eta1 - 1)/2.
double mean_photon_number(const GaussianModeState& state);

/// <(dn)^2> of a displaced Gaussian state with real fluctuation moments
/// N = <dA+ dA> = (eta1 - 1)/2 and M = <dA dA> = eta2:
///   |m|^2 (2N + 1) + 2 Re(m*^2 M) + N^2 + N + M^2.
double photon_number_variance(const GaussianModeState& state);

/// Var(n)/<n>; throws std::domain_error when <n> vanishes.
double fano_factor(const GaussianModeState& state);

/// Number of photon-number terms needed so that the neglected tail is below
/// ~1e-12. The larger of ceil(<n> + 10 sigma) + 10 and a geometric bound
/// ceil(ln(1e-12 (1 - q)) / ln q) + ceil(2 <n>), q = max |A-+ - 1|/(A-+ + 1);
/// the second term dominates for strongly squeezed states, whose
/// distributions decay like q^n rather than like a Gaussian.
int default_n_max(const GaussianModeState& state);

inline constexpr int kMaxPhotonNumber = 100'000;

/// P(n), n = 0..n_max, as a double sum over products of Laguerre factors
///   P(n) = 2/sqrt((A+ + 1)(A- + 1)) exp(-2 Re(m)^2/(A+ + 1) - 2 Im(m)^2/(A- + 1))
///          * sum_r S+_r S-_{n-r},
/// S+-_r = q+-^r L_r^{-1/2}(-w+-/q+-), q = (A - 1)/(A + 1),
/// w+ = 4 Re(m)^2/(A+ + 1)^2, w- = 4 Im(m)^2/(A- + 1)^2.
/// The r-sum is compensated. A warning is attached when 1 - sum P exceeds 1e-9.
/// The cost is quadratic in n_max; n_max > kMaxPhotonNumber throws std::range_error.
DistributionSeries photon_number_distribution(const GaussianModeState& state, int n_max);
DistributionSeries photon_number_distribution(const GaussianModeState& state);

/// Poisson pmf with the given mean; log-space for mean > 50.
DistributionSeries poisson_reference(double mean, int n_max);

/// Radial integral of the Q function along the ray arg(beta) = theta.
///
/// With Ap = A+ + 1 and Am = A- + 1 (the Q-function widths),
///   C = 2 (Ap sin^2 + Am cos^2) / (Ap Am)
///   B = 4 (Am Re(m) cos + Ap Im(m) sin) / (Ap Am)
///   P = e^E / (pi C sqrt(Ap Am)) [1 + sqrt(pi) z erfcx(-z)],  z = B / (2 sqrt C),
/// E = -2 Re(m)^2/Ap - 2 Im(m)^2/Am. Evaluated through erfcx so that the
/// e^{z^2} growth is folded into e^E before it can overflow.
double phase_density(const GaussianModeState& state, double theta);

/// `points` equally spaced angles from -pi to pi inclusive; 721 gives a 0.5
/// degree step containing 0, +-pi/2 and +-pi. The last sample repeats the first
/// point of the circle.
std::vector<double> default_theta_grid(int points = 721);

/// P(Theta) on an ascending grid in [-pi, pi]; the normalization residual uses
/// the periodic trapezoid rule (the wrap-around segment vanishes on closed grids).
DistributionSeries phase_distribution(const GaussianModeState& state,
                                      const std::vector<double>& theta_grid);

/// (1/2pi) sqrt(a+ a-) / (a+ sin^2 theta + a- cos^2 theta).
/// A zero-mean state has phase_density == vacuum_phase_distribution(A+ + 1, A- + 1, theta).
double vacuum_phase_distribution(double a_plus, double a_minus, double theta);

/// Periodic trapezoid integral over an ascending grid covering one period,
/// open (wrap-around segment added) or closed (last point = first + period).
double periodic_trapezoid(const std::vector<double>& grid, const std::vector<double>& values,
                          double period);

/// Indices of strict local maxima. Distributions whose total variation is
/// below rel_flat * max are treated as flat (no peaks).
std::vector<std::size_t> local_maxima(const std::vector<double>& values, bool periodic,
                                      double rel_flat = 1e-9);

/// Distinct periodic maxima of a phase distribution. On a closed grid the
/// duplicated endpoint is dropped, so a peak at +-pi is reported once, at -pi.
std::vector<std::size_t> phase_maxima(const std::vector<double>& grid,
                                      const std::vector<double>& values, double rel_flat = 1e-9);

}  // namespace nadc
