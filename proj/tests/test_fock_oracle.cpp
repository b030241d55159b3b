#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <gtest/gtest.h>

#include "nadc/distributions.hpp"
#include "nadc/fock_oracle.hpp"

namespace {

using nadc::Complex;
using nadc::CouplerParams;
using nadc::ModeId;
namespace oracle = nadc::oracle;

constexpr double kPi = std::numbers::pi;
const Complex kWeak = std::polar(0.5, kPi / 3.0);

TEST(Hamiltonian, PairCreationElement) {
    const auto p = CouplerParams::restricted(0.7);
    const auto h = oracle::interaction_hamiltonian(p, 4);
    oracle::FockStateVector layout;
    layout.cutoff = 4;
    const auto vac = static_cast<Eigen::Index>(layout.index(0, 0, 0));
    const auto pair = static_cast<Eigen::Index>(layout.index(1, 1, 0));
    EXPECT_NEAR(std::abs(h.coeff(vac, pair) - Complex(0.0, 0.7)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(h.coeff(pair, vac) - Complex(0.0, -0.7)), 0.0, 1e-15);
}

TEST(Hamiltonian, ZeroCouplingIsZero) {
    const CouplerParams p{0.0, 0.0, 0.0, {}, {}, {}};
    EXPECT_EQ(oracle::interaction_hamiltonian(p, 3).nonZeros(), 0);
}

TEST(Hamiltonian, Hermitian) {
    const CouplerParams p{0.8, 0.3, 1.1, {}, {}, {}};
    const oracle::SparseOperator h = oracle::interaction_hamiltonian(p, 6);
    const oracle::SparseOperator adj = h.adjoint();
    EXPECT_EQ((h - adj).norm(), 0.0);
}

TEST(Hamiltonian, DimensionBudget) {
    EXPECT_THROW(oracle::interaction_hamiltonian(CouplerParams::restricted(1.0), 80),
                 std::length_error);
}

TEST(Evolve, InitialState) {
    const auto p = CouplerParams::restricted_uniform(1.0, kWeak);
    const auto r = oracle::evolve(p, 0.0, 15);
    for (ModeId m : {ModeId::Signal, ModeId::Idler, ModeId::Linear}) {
        const auto rho = oracle::reduced_density(r.state, m);
        EXPECT_NEAR(oracle::mean_photon_number(rho), 0.25, 1e-6);
        const auto v = oracle::quadrature_variances(rho);
        EXPECT_NEAR(v.vx, 0.25, 1e-6);
        EXPECT_NEAR(v.vy, 0.25, 1e-6);
        EXPECT_NEAR(oracle::purity(rho), 1.0, 1e-10);
    }
}

TEST(Evolve, EhrenfestMatchesClassicalFlow) {
    // d<A1>/dt = -l1 <A2+> - l2 <A3>, by central difference.
    const auto p = CouplerParams::restricted_uniform(1.0, kWeak);
    const double t = 0.4;
    const double h = 1e-3;
    const auto fwd = oracle::evolve(p, t + h, 15).state;
    const auto bwd = oracle::evolve(p, t - h, 15).state;
    const auto mid = oracle::evolve(p, t, 15).state;
    const Complex deriv = (oracle::mode_amplitude(fwd, ModeId::Signal) -
                           oracle::mode_amplitude(bwd, ModeId::Signal)) / (2.0 * h);
    const Complex rhs = -p.lambda1 * std::conj(oracle::mode_amplitude(mid, ModeId::Idler)) -
                        p.lambda2 * oracle::mode_amplitude(mid, ModeId::Linear);
    EXPECT_NEAR(std::abs(deriv - rhs), 0.0, 1e-6);
}

TEST(Evolve, SymmetricVacuumPairs) {
    const auto r = oracle::evolve(CouplerParams::restricted(1.0), 0.5, 15);
    const double n1 = oracle::mean_photon_number(oracle::reduced_density(r.state, ModeId::Signal));
    const double n2 = oracle::mean_photon_number(oracle::reduced_density(r.state, ModeId::Idler));
    EXPECT_GT(n1, 0.0);
    EXPECT_NEAR(n1, n2, 1e-8);
}

TEST(Evolve, ConservesNormAndEnergy) {
    const auto p = CouplerParams::restricted_uniform(1.0, kWeak);
    const auto r = oracle::evolve(p, 0.5, 15);
    EXPECT_LT(r.norm_drift, 1e-10);
    EXPECT_LT(r.energy_drift, 1e-8);
    EXPECT_LT(r.edge_occupancy, 1e-8);
}

TEST(Evolve, StepHalvingConverged) {
    const auto p = CouplerParams::restricted_uniform(1.0, kWeak);
    oracle::EvolveOptions halved;
    halved.step_multiplier = 2;
    const auto a = oracle::evolve(p, 0.5, 15);
    const auto b = oracle::evolve(p, 0.5, 15, halved);
    EXPECT_GT(b.steps, a.steps);
    EXPECT_LT((a.state.amplitudes - b.state.amplitudes).norm(), 1e-8);
}

TEST(Evolve, CutoffConverged) {
    const auto p = CouplerParams::restricted_uniform(1.0, kWeak);
    const auto a = oracle::reduced_density(oracle::evolve(p, 0.5, 15).state, ModeId::Linear);
    const auto b = oracle::reduced_density(oracle::evolve(p, 0.5, 18).state, ModeId::Linear);
    EXPECT_LT((a - b.topLeftCorner(a.rows(), a.cols())).cwiseAbs().maxCoeff(), 1e-5);
}

TEST(Evolve, NegativeTime) {
    const auto p = CouplerParams::restricted_uniform(1.0, kWeak);
    const auto back = oracle::evolve(p, -0.3, 15).state;
    for (ModeId m : {ModeId::Signal, ModeId::Linear}) {
        EXPECT_NEAR(std::abs(oracle::mode_amplitude(back, m) - nadc::state_at(p, -0.3, m).mean), 0.0,
                    1e-6);
    }
}

TEST(Evolve, GuardTripsOnSmallCutoff) {
    const auto p = CouplerParams::restricted_uniform(1.0, kWeak);
    EXPECT_THROW(oracle::evolve(p, 1.0, 15), oracle::CutoffGuardError);
    try {
        oracle::evolve(p, 1.0, 15);
    } catch (const oracle::CutoffGuardError& e) {
        EXPECT_EQ(e.cutoff(), 15);
        EXPECT_GT(e.edge_occupancy(), 1e-8);
    }
    oracle::EvolveOptions lax;
    lax.enforce_guard = false;
    EXPECT_NO_THROW(oracle::evolve(p, 1.0, 15, lax));
}

TEST(Evolve, ConvergedEscalatesCutoff) {
    const auto p = CouplerParams::restricted_uniform(1.0, kWeak);
    const auto r = oracle::evolve_converged(p, 1.0);
    EXPECT_GE(r.state.cutoff, 25);
    EXPECT_LT(r.edge_occupancy, 1e-8);
    for (ModeId m : {ModeId::Signal, ModeId::Linear}) {
        const auto rho = oracle::reduced_density(r.state, m);
        const auto s = nadc::state_at(p, 1.0, m);
        EXPECT_NEAR(std::abs(oracle::mean_amplitude(rho) - s.mean), 0.0, 1e-4);
        EXPECT_NEAR(oracle::mean_photon_number(rho), nadc::mean_photon_number(s), 1e-4);
        EXPECT_NEAR(oracle::photon_number_variance(rho), nadc::photon_number_variance(s), 1e-4);
    }
}

TEST(ReducedDensity, IsAValidState) {
    const auto p = CouplerParams::restricted_uniform(1.0, kWeak);
    const auto r = oracle::evolve(p, 0.5, 15);
    for (ModeId m : {ModeId::Signal, ModeId::Idler, ModeId::Linear}) {
        const auto rho = oracle::reduced_density(r.state, m);
        EXPECT_LT((rho - rho.adjoint()).cwiseAbs().maxCoeff(), 1e-14);
        EXPECT_NEAR(rho.trace().real(), 1.0, 1e-10);
        const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(rho);
        EXPECT_GT(eig.eigenvalues().minCoeff(), -1e-10);
        EXPECT_LT(oracle::purity(rho), 1.0 - 1e-3);
    }
}

TEST(ReducedDensity, DiagonalMatchesLaguerreDistribution) {
    const auto p = CouplerParams::restricted_uniform(1.0, kWeak);
    const auto r = oracle::evolve(p, 0.5, 15);
    for (ModeId m : {ModeId::Signal, ModeId::Linear}) {
        const auto diag = oracle::photon_number_distribution(oracle::reduced_density(r.state, m));
        const auto series = nadc::photon_number_distribution(nadc::state_at(p, 0.5, m), 15);
        for (std::size_t n = 0; n < diag.size(); ++n) EXPECT_NEAR(diag[n], series.values[n], 1e-4) << n;
    }
}

TEST(ReducedDensity, LinearVarianceClosedForm) {
    const auto r = oracle::evolve(CouplerParams::restricted(1.0), 0.5, 15);
    const auto v = oracle::quadrature_variances(oracle::reduced_density(r.state, ModeId::Linear));
    const auto ref = nadc::linear_mode_variances(1.0, 0.5);
    EXPECT_NEAR(v.vx, ref.vx, 1e-4);
    EXPECT_NEAR(v.vy, ref.vy, 1e-4);
}

TEST(ReducedDensity, HusimiMatchesGaussian) {
    const auto p = CouplerParams::restricted_uniform(1.0, kWeak);
    const auto r = oracle::evolve(p, 0.5, 15);
    const auto rho = oracle::reduced_density(r.state, ModeId::Linear);
    const auto s = nadc::state_at(p, 0.5, ModeId::Linear);
    for (int i = 0; i < 11; ++i) {
        for (int j = 0; j < 11; ++j) {
            const Complex beta = s.mean + Complex(-2.0 + 0.4 * i, -2.0 + 0.4 * j);
            EXPECT_NEAR(oracle::husimi_q(rho, beta), nadc::quasiprobability(s, beta, -1.0), 1e-4);
        }
    }
}

TEST(ReducedDensity, VacuumPhasePeaksWithShiftedWidths) {
    const auto p = CouplerParams::restricted(0.6);
    const double t = 1.0;
    const auto r = oracle::evolve(p, t, 25);
    const auto rho = oracle::reduced_density(r.state, ModeId::Linear);
    const auto s = nadc::state_at(p, t, ModeId::Linear);
    const std::vector<double> grid{-kPi / 2.0, 0.0, kPi / 2.0};
    const auto phase = oracle::phase_distribution(rho, grid);
    const double shifted = std::sqrt((s.a_minus + 1.0) / (s.a_plus + 1.0)) / (2.0 * kPi);
    EXPECT_NEAR(phase[0], shifted, 1e-3);
    EXPECT_NEAR(phase[2], shifted, 1e-3);
    EXPECT_GT(phase[2], phase[1]);
    // The unshifted width ratio is a different, measurably wrong height.
    const double unshifted = std::sqrt(s.a_minus / s.a_plus) / (2.0 * kPi);
    EXPECT_GT(std::abs(phase[2] - unshifted), 10.0 * std::abs(phase[2] - shifted));
}

TEST(ReducedDensity, PhaseMatchesClosedForm) {
    const auto p = CouplerParams::restricted_uniform(0.6, Complex(1.0));
    const auto r = oracle::evolve(p, 1.0, 20);
    const auto rho = oracle::reduced_density(r.state, ModeId::Linear);
    const auto s = nadc::state_at(p, 1.0, ModeId::Linear);
    const auto grid = nadc::default_theta_grid(181);
    const auto phase = oracle::phase_distribution(rho, grid);
    for (std::size_t k = 0; k < grid.size(); ++k) {
        EXPECT_NEAR(phase[k], nadc::phase_density(s, grid[k]), 1e-3) << grid[k];
    }
}

TEST(ReducedDensity, SignalModeMoments) {
    const auto p = CouplerParams::restricted_uniform(0.3, kWeak);
    const auto r = oracle::evolve(p, 1.5, 20);
    const auto rho = oracle::reduced_density(r.state, ModeId::Signal);
    const auto s = nadc::state_at(p, 1.5, ModeId::Signal);
    const auto v = oracle::quadrature_variances(rho);
    const auto ref = nadc::quadrature_variances(s);
    EXPECT_NEAR(v.vx, ref.vx, 1e-3);
    EXPECT_NEAR(v.vy, ref.vy, 1e-3);
    EXPECT_NEAR(std::abs(oracle::mean_amplitude(rho) - s.mean), 0.0, 1e-3);
}

TEST(ReducedDensity, SubPoissonianLinearMode) {
    const auto p = CouplerParams::restricted_uniform(1.0, Complex(1.0));
    const auto r = oracle::evolve_converged(p, 1.0);
    const auto rho = oracle::reduced_density(r.state, ModeId::Linear);
    const double fano = oracle::photon_number_variance(rho) / oracle::mean_photon_number(rho);
    EXPECT_NEAR(fano, 0.837052, 1e-5);
    EXPECT_NEAR(fano, nadc::fano_factor(nadc::state_at(p, 1.0, ModeId::Linear)), 1e-5);
}

TEST(Observables, BundleAgreesWithPieces) {
    const auto p = CouplerParams::restricted_uniform(1.0, kWeak);
    const auto r = oracle::evolve(p, 0.5, 15);
    oracle::ObservableGrids grids;
    grids.q_points = {Complex(0.1, 0.2)};
    grids.theta_grid = {0.0};
    const auto obs = oracle::oracle_observables(r.state, ModeId::Signal, grids);
    const auto rho = oracle::reduced_density(r.state, ModeId::Signal);
    EXPECT_EQ(obs.mean_n, oracle::mean_photon_number(rho));
    EXPECT_EQ(obs.q_values.at(0), oracle::husimi_q(rho, Complex(0.1, 0.2)));
    EXPECT_EQ(obs.phase.size(), 1u);
    EXPECT_NEAR(std::abs(obs.mean - oracle::mode_amplitude(r.state, ModeId::Signal)), 0.0, 1e-12);
}

}  // namespace
