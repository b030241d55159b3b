#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include <gtest/gtest.h>

#include "nadc/distributions.hpp"

namespace {

using nadc::Complex;
using nadc::CouplerParams;
using nadc::GaussianModeState;
using nadc::ModeId;

constexpr double kPi = std::numbers::pi;
const Complex kWeak = std::polar(0.5, kPi / 3.0);

GaussianModeState coherent(Complex mean) {
    GaussianModeState s;
    s.mean = mean;
    return s;
}

double series_moment(const nadc::DistributionSeries& p, int power) {
    long double sum = 0.0L;
    for (std::size_t n = 0; n < p.values.size(); ++n) {
        sum += std::pow(static_cast<long double>(n), power) * p.values[n];
    }
    return static_cast<double>(sum);
}

// Radial integral of the Husimi function along a ray, by composite Simpson.
double phase_by_radial_quadrature(const GaussianModeState& s, double theta) {
    const double r_max = std::abs(s.mean) + 12.0 * std::sqrt(std::max(s.a_plus, s.a_minus) + 1.0);
    const int panels = 4000;
    const double h = r_max / panels;
    double sum = 0.0;
    for (int i = 0; i <= panels; ++i) {
        const double r = i * h;
        const double w = (i == 0 || i == panels) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        sum += w * r * nadc::quasiprobability(s, std::polar(r, theta), -1.0);
    }
    return sum * h / 3.0;
}

TEST(PhotonNumber, CoherentInputIsPoisson) {
    const auto s = nadc::state_at(CouplerParams::restricted_uniform(1.0, kWeak), 0.0, ModeId::Signal);
    const auto p = nadc::photon_number_distribution(s, 30);
    double expected = std::exp(-0.25);
    for (int n = 0; n <= 30; ++n) {
        if (n > 0) expected *= 0.25 / n;
        EXPECT_NEAR(p.values[static_cast<std::size_t>(n)], expected, 1e-12) << n;
    }
    const auto ref = nadc::poisson_reference(nadc::mean_photon_number(s), 30);
    for (std::size_t n = 0; n < p.values.size(); ++n) EXPECT_NEAR(p.values[n], ref.values[n], 1e-12);
}

TEST(PhotonNumber, ContinuousThroughUnitWidths) {
    GaussianModeState exact = coherent({0.7, -0.4});
    GaussianModeState near = exact;
    near.a_plus = 1.0 + 1e-6;
    near.a_minus = 1.0 / near.a_plus;
    near.eta1 = 0.5 * (near.a_plus + near.a_minus);
    near.eta2 = 0.25 * (near.a_plus - near.a_minus);
    const auto p0 = nadc::photon_number_distribution(exact, 25);
    const auto p1 = nadc::photon_number_distribution(near, 25);
    for (std::size_t n = 0; n < p0.values.size(); ++n) {
        EXPECT_NEAR(p1.values[n], p0.values[n], 2e-6) << n;
    }
}

TEST(PhotonNumber, LinearModeOscillatesAtSqueezeTime) {
    const auto s = nadc::state_at(CouplerParams::restricted_uniform(1.0, kWeak),
                                  nadc::squeeze_times(1.0, 1).t_s, ModeId::Linear);
    const auto p = nadc::photon_number_distribution(s);
    EXPECT_GE(nadc::local_maxima(p.values, false).size(), 3u);
    EXPECT_LT(p.norm_residual, 1e-9);
    EXPECT_TRUE(p.warnings.empty());
}

TEST(PhotonNumber, SignalModeSinglePeakedAndBroad) {
    const auto s = nadc::state_at(CouplerParams::restricted_uniform(0.3, std::polar(3.0, kPi / 3.0)),
                                  1.5, ModeId::Signal);
    const auto p = nadc::photon_number_distribution(s);
    EXPECT_EQ(nadc::local_maxima(p.values, false).size(), 1u);
    const double mean = nadc::mean_photon_number(s);
    const double var = nadc::photon_number_variance(s);
    EXPECT_GT(var, mean);
    EXPECT_NEAR(mean, 7.7982, 1e-4);
    EXPECT_NEAR(var, 10.7499, 1e-4);
    const auto poisson = nadc::poisson_reference(mean, static_cast<int>(p.values.size()) - 1);
    const double poisson_var = series_moment(poisson, 2) - std::pow(series_moment(poisson, 1), 2);
    EXPECT_GT(series_moment(p, 2) - std::pow(series_moment(p, 1), 2), poisson_var);
}

TEST(PhotonNumber, MomentsAgreeWithSeries) {
    const auto p = CouplerParams::restricted_uniform(1.0, kWeak);
    for (double t : {0.5, 1.0, 2.0, 3.6, 5.0}) {
        for (ModeId m : {ModeId::Signal, ModeId::Linear}) {
            // The amplified signal support grows like e^{lambda1 t}.
            if (m == ModeId::Signal && t > 2.0) continue;
            const auto s = nadc::state_at(p, t, m);
            const auto series = nadc::photon_number_distribution(s);
            const double mean = nadc::mean_photon_number(s);
            const double var = nadc::photon_number_variance(s);
            const double m1 = series_moment(series, 1);
            const double m2 = series_moment(series, 2);
            EXPECT_NEAR(m1, mean, 1e-6 * std::max(1.0, mean)) << t;
            EXPECT_NEAR(m2 - m1 * m1, var, 1e-6 * std::max(1.0, var)) << t;
            EXPECT_NEAR((m2 - m1 * m1) / m1, nadc::fano_factor(s), 1e-6 * nadc::fano_factor(s));
        }
    }
}

TEST(PhotonNumber, TruncationWarning) {
    const auto s = nadc::state_at(CouplerParams::restricted_uniform(1.0, kWeak), 5.0, ModeId::Linear);
    const auto p = nadc::photon_number_distribution(s, 20);
    EXPECT_GT(p.norm_residual, 1e-9);
    ASSERT_FALSE(p.warnings.empty());
    EXPECT_NE(p.warnings.front().find("truncated"), std::string::npos);
    EXPECT_THROW(nadc::photon_number_distribution(s, -1), std::invalid_argument);
    EXPECT_THROW(nadc::photon_number_distribution(s, nadc::kMaxPhotonNumber + 1), std::range_error);
    const auto wide = nadc::state_at(CouplerParams::restricted_uniform(1.0, kWeak), 5.0, ModeId::Signal);
    EXPECT_GT(nadc::default_n_max(wide), nadc::kMaxPhotonNumber);
    EXPECT_THROW(nadc::photon_number_distribution(wide), std::range_error);
}

TEST(PhotonNumber, DefaultSupportCoversSqueezedTails) {
    const auto p = CouplerParams::restricted_uniform(1.0, kWeak);
    EXPECT_EQ(nadc::default_n_max(nadc::state_at(p, nadc::squeeze_times(1.0, 1).t_s, ModeId::Linear)), 608);
    EXPECT_EQ(nadc::default_n_max(nadc::state_at(p, 5.0, ModeId::Linear)), 2986);
}

TEST(Poisson, Degenerate) {
    const auto p = nadc::poisson_reference(0.0, 5);
    EXPECT_EQ(p.values[0], 1.0);
    for (std::size_t n = 1; n < p.values.size(); ++n) EXPECT_EQ(p.values[n], 0.0);
    EXPECT_THROW(nadc::poisson_reference(-0.1, 5), std::invalid_argument);
    EXPECT_THROW(nadc::poisson_reference(1.0, -1), std::invalid_argument);
}

TEST(Poisson, LogSpaceBranch) {
    const double mean = 80.0;
    const auto p = nadc::poisson_reference(mean, 300);
    EXPECT_NEAR(p.norm_residual, 0.0, 1e-12);
    for (int n : {0, 40, 80, 200}) {
        const double ref = std::exp(n * std::log(mean) - mean - std::lgamma(n + 1.0));
        EXPECT_NEAR(p.values[static_cast<std::size_t>(n)], ref, 1e-13 * std::max(ref, 1e-300));
    }
    // Both branches agree near the switch-over.
    const auto lo = nadc::poisson_reference(50.0, 120);
    const auto hi = nadc::poisson_reference(std::nextafter(50.0, 60.0), 120);
    for (std::size_t n = 0; n < lo.values.size(); ++n) {
        EXPECT_NEAR(hi.values[n], lo.values[n], 1e-12 * std::max(lo.values[n], 1e-30));
    }
}

TEST(Moments, ZeroTime) {
    const auto s = coherent(kWeak);
    EXPECT_NEAR(nadc::mean_photon_number(s), 0.25, 1e-15);
    EXPECT_NEAR(nadc::fano_factor(s), 1.0, 1e-14);
    EXPECT_THROW(nadc::fano_factor(coherent({0.0, 0.0})), std::domain_error);
}

TEST(Moments, VacuumLinearModeFromCreationCoefficients) {
    const auto c = nadc::analytic_coefficients(1.0, 1.0);
    const auto row = nadc::mode_row(c, ModeId::Linear);
    const double creation = row[1] * row[1] + row[3] * row[3] + row[5] * row[5];
    const auto s = nadc::state_at(CouplerParams::restricted(1.0), 1.0, ModeId::Linear);
    EXPECT_NEAR(nadc::mean_photon_number(s), creation, 1e-14);
}

TEST(Fano, LinearModeSuperPoissonianAtSpotTimes) {
    const auto p = CouplerParams::restricted_uniform(1.0, kWeak);
    for (double t : {1.0, nadc::squeeze_times(1.0, 1).t_s, 5.0}) {
        EXPECT_GT(nadc::fano_factor(nadc::state_at(p, t, ModeId::Linear)), 1.0) << t;
    }
}

TEST(Fano, RealInputsGiveSubPoissonianLinearMode) {
    const auto s = nadc::state_at(CouplerParams::restricted_uniform(1.0, Complex(1.0)), 1.0,
                                  ModeId::Linear);
    EXPECT_NEAR(nadc::fano_factor(s), 0.837052, 1e-6);
}

TEST(Phase, UniformForVacuumAtZero) {
    const auto s = coherent({0.0, 0.0});
    for (double theta : nadc::default_theta_grid(37)) {
        EXPECT_NEAR(nadc::phase_density(s, theta), 1.0 / (2.0 * kPi), 1e-15);
    }
}

TEST(Phase, MatchesRadialQuadratureOfHusimi) {
    const auto p = CouplerParams::restricted_uniform(0.6, Complex(1.0));
    for (double t : {0.0, 1.0, 3.0, 6.0}) {
        for (ModeId m : {ModeId::Signal, ModeId::Linear}) {
            const auto s = nadc::state_at(p, t, m);
            for (double theta : nadc::default_theta_grid(24)) {
                EXPECT_NEAR(nadc::phase_density(s, theta), phase_by_radial_quadrature(s, theta), 1e-9)
                    << "t=" << t << " theta=" << theta;
            }
        }
    }
}

TEST(Phase, StableForLargeAmplitudes) {
    const auto s = nadc::state_at(CouplerParams::restricted_uniform(1.0, Complex(30.0, 10.0)), 2.0,
                                  ModeId::Signal);
    const auto series = nadc::phase_distribution(s, nadc::default_theta_grid(4001));
    EXPECT_LT(series.norm_residual, 1e-8);
    for (double v : series.values) EXPECT_TRUE(std::isfinite(v));
}

TEST(Phase, NormalizedAndPeriodic) {
    const auto p = CouplerParams::restricted_uniform(0.6, Complex(1.0));
    for (double t : {0.5, 2.5, 6.0}) {
        const auto s = nadc::state_at(p, t, ModeId::Linear);
        const auto series = nadc::phase_distribution(s, nadc::default_theta_grid());
        EXPECT_LT(series.norm_residual, 1e-8);
        EXPECT_NEAR(nadc::phase_density(s, -kPi), nadc::phase_density(s, kPi), 1e-10);
        for (double v : series.values) EXPECT_GE(v, 0.0);
    }
}

TEST(Phase, ZeroMeanReducesToVacuumForm) {
    const auto p = CouplerParams::restricted(0.6);
    for (double t : {0.7, 3.0}) {
        for (ModeId m : {ModeId::Signal, ModeId::Linear}) {
            const auto s = nadc::state_at(p, t, m);
            for (double theta : nadc::default_theta_grid(90)) {
                EXPECT_NEAR(nadc::phase_density(s, theta),
                            nadc::vacuum_phase_distribution(s.a_plus + 1.0, s.a_minus + 1.0, theta),
                            1e-12);
            }
        }
    }
}

TEST(Phase, LinearVacuumPeaksAtQuarterTurns) {
    const auto s = nadc::state_at(CouplerParams::restricted(0.6), 2.0, ModeId::Linear);
    const auto grid = nadc::default_theta_grid(721);
    const auto series = nadc::phase_distribution(s, grid);
    const auto peaks = nadc::phase_maxima(grid, series.values);
    ASSERT_EQ(peaks.size(), 2u);
    EXPECT_NEAR(grid[peaks[0]], -kPi / 2.0, 1e-12);
    EXPECT_NEAR(grid[peaks[1]], kPi / 2.0, 1e-12);
    const double height = std::sqrt((s.a_minus + 1.0) / (s.a_plus + 1.0)) / (2.0 * kPi);
    EXPECT_NEAR(series.values[peaks[1]], height, 1e-12);
}

TEST(Phase, LinearModeSplitsIntoTwoPeaks) {
    const auto p = CouplerParams::restricted_uniform(0.6, Complex(1.0));
    const auto grid = nadc::default_theta_grid();
    std::vector<std::size_t> counts;
    for (int i = 0; i <= 60; ++i) {
        const auto series = nadc::phase_distribution(nadc::state_at(p, 0.1 * i, ModeId::Linear), grid);
        counts.push_back(nadc::phase_maxima(grid, series.values).size());
    }
    EXPECT_EQ(counts.front(), 1u);
    EXPECT_EQ(counts.back(), 2u);
    EXPECT_NE(std::find(counts.begin(), counts.end(), 2u), counts.end());
}

TEST(Phase, GridValidation) {
    const auto s = coherent(kWeak);
    EXPECT_THROW(nadc::phase_distribution(s, {}), std::invalid_argument);
    EXPECT_THROW(nadc::phase_distribution(s, {0.5, 0.1}), std::invalid_argument);
    EXPECT_THROW(nadc::phase_distribution(s, {0.0, 3.5}), std::invalid_argument);
    EXPECT_THROW(nadc::phase_distribution(s, {-3.5, 0.0}), std::invalid_argument);
    EXPECT_THROW(nadc::phase_density(s, NAN), std::invalid_argument);
    EXPECT_THROW(nadc::default_theta_grid(1), std::invalid_argument);
}

TEST(Phase, DefaultGridIsClosedHalfDegree) {
    const auto grid = nadc::default_theta_grid();
    ASSERT_EQ(grid.size(), 721u);
    EXPECT_EQ(grid.front(), -kPi);
    EXPECT_EQ(grid.back(), kPi);
    EXPECT_NEAR(grid[180], -kPi / 2.0, 1e-15);
    EXPECT_NEAR(grid[360], 0.0, 1e-15);
    EXPECT_NEAR(grid[540], kPi / 2.0, 1e-15);
    EXPECT_NEAR(grid[1] - grid[0], kPi / 360.0, 1e-15);
    // The closed grid and its open counterpart give the same integral.
    const auto s = nadc::state_at(CouplerParams::restricted_uniform(0.6, Complex(1.0)), 2.0, ModeId::Linear);
    const auto closed = nadc::phase_distribution(s, grid);
    const std::vector<double> open(grid.begin(), grid.end() - 1);
    const auto open_series = nadc::phase_distribution(s, open);
    EXPECT_NEAR(closed.norm_residual, open_series.norm_residual, 1e-15);
}

TEST(PhaseMaxima, ClosedGridReportsWrappedPeakOnce) {
    const std::vector<double> grid{-kPi, -kPi / 2.0, 0.0, kPi / 2.0, kPi};
    EXPECT_EQ(nadc::phase_maxima(grid, {3.0, 1.0, 2.0, 1.0, 3.0}), (std::vector<std::size_t>{0, 2}));
    const std::vector<double> open{-kPi, -kPi / 2.0, 0.0, kPi / 2.0};
    EXPECT_EQ(nadc::phase_maxima(open, {3.0, 1.0, 2.0, 1.0}), (std::vector<std::size_t>{0, 2}));
    EXPECT_THROW(nadc::phase_maxima(grid, {1.0}), std::invalid_argument);
}

TEST(VacuumPhase, Properties) {
    for (double theta : {-3.0, -1.0, 0.0, 2.0}) {
        EXPECT_NEAR(nadc::vacuum_phase_distribution(1.0, 1.0, theta), 1.0 / (2.0 * kPi), 1e-16);
    }
    const double ap = 3.7;
    const double am = 0.4;
    const auto grid = nadc::default_theta_grid(2001);
    std::vector<double> v;
    for (double th : grid) v.push_back(nadc::vacuum_phase_distribution(ap, am, th));
    EXPECT_NEAR(nadc::periodic_trapezoid(grid, v, 2.0 * kPi), 1.0, 1e-10);
    const double peak = std::sqrt(ap / am) / (2.0 * kPi);
    EXPECT_NEAR(nadc::vacuum_phase_distribution(ap, am, 0.0), peak, 1e-15);
    EXPECT_NEAR(nadc::vacuum_phase_distribution(ap, am, -kPi), peak, 1e-15);
    const auto peaks = nadc::phase_maxima(grid, v);
    ASSERT_EQ(peaks.size(), 2u);
    EXPECT_EQ(grid[peaks[0]], -kPi);
    EXPECT_NEAR(grid[peaks[1]], 0.0, 1e-15);
    EXPECT_THROW(nadc::vacuum_phase_distribution(0.0, 1.0, 0.0), std::invalid_argument);
}

TEST(LocalMaxima, Basics) {
    EXPECT_TRUE(nadc::local_maxima({1.0, 1.0, 1.0}, true).empty());
    const std::vector<double> v{0.0, 2.0, 1.0, 3.0, 0.5};
    EXPECT_EQ(nadc::local_maxima(v, false), (std::vector<std::size_t>{1, 3}));
    const std::vector<double> edge{3.0, 1.0, 2.0};
    EXPECT_EQ(nadc::local_maxima(edge, false), (std::vector<std::size_t>{0, 2}));
    EXPECT_EQ(nadc::local_maxima(edge, true), (std::vector<std::size_t>{0}));
}

}  // namespace
