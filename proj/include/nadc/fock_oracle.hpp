#pragma once

// Brute-force reference: Schroedinger evolution of the three-mode coherent
// input in a truncated Fock space, independent of the operator solution.

#include <cstddef>
#include <stdexcept>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "nadc/coeffs.hpp"
#include "nadc/gaussian.hpp"

namespace nadc::oracle {

/// Largest Hilbert-space dimension (N+1)^3 the oracle will allocate by default.
inline constexpr std::size_t kDefaultMaxDimension = 250'000;

/// Amplitudes over |n1, n2, n3>, n_j = 0..cutoff, flattened with n1 fastest:
/// index = n1 + (N+1) (n2 + (N+1) n3).
struct FockStateVector {
    int cutoff = 0;
    Eigen::VectorXcd amplitudes;

    [[nodiscard]] std::size_t side() const { return static_cast<std::size_t>(cutoff) + 1; }
    [[nodiscard]] std::size_t dimension() const { return side() * side() * side(); }
    [[nodiscard]] std::size_t index(int n1, int n2, int n3) const {
        return static_cast<std::size_t>(n1) + side() * (static_cast<std::size_t>(n2) +
                                                        side() * static_cast<std::size_t>(n3));
    }
    [[nodiscard]] double norm() const { return amplitudes.norm(); }
    /// Total probability of states with any n_j equal to the cutoff.
    [[nodiscard]] double edge_occupancy() const;
};

/// Raised when the truncation is too small for the requested evolution.
class CutoffGuardError : public std::runtime_error {
public:
    CutoffGuardError(const std::string& what, int cutoff, double edge_occupancy, double time)
        : std::runtime_error(what), cutoff_(cutoff), edge_occupancy_(edge_occupancy), time_(time) {}

    [[nodiscard]] int cutoff() const { return cutoff_; }
    [[nodiscard]] double edge_occupancy() const { return edge_occupancy_; }
    [[nodiscard]] double time() const { return time_; }

private:
    int cutoff_;
    double edge_occupancy_;
    double time_;
};

using SparseOperator = Eigen::SparseMatrix<Complex, Eigen::RowMajor>;

/// H/hbar = i l1 (A1 A2 - A1+ A2+) + i l2 (A1 A3+ - A1+ A3) + i l3 (A2 A3+ - A2+ A3)
/// on the truncated space. Its Heisenberg equations are the coupler's
/// linear equations of motion; Hermitian by construction.
/// Throws std::length_error when (N+1)^3 exceeds max_dimension.
SparseOperator interaction_hamiltonian(const CouplerParams& params, int cutoff,
                                       std::size_t max_dimension = kDefaultMaxDimension);

/// Product of truncated coherent states, renormalized.
FockStateVector coherent_product_state(const CouplerParams& params, int cutoff);

struct EvolveOptions {
    /// Upper bound on ||H||_1 dt for each Taylor step.
    double max_step_norm = 2.0;
    /// Multiplies the number of steps (2 = step halving).
    int step_multiplier = 1;
    /// Final edge occupancy allowed.
    double edge_guard = 1e-8;
    /// Abort mid-run once the edge occupancy passes this value.
    double abort_edge = 1e-4;
    bool enforce_guard = true;
    std::size_t max_dimension = kDefaultMaxDimension;
};

struct EvolutionReport {
    FockStateVector state;
    int steps = 0;
    double norm_drift = 0.0;    // | ||psi(t)|| - 1 |
    double energy_drift = 0.0;  // | <H>(t) - <H>(0) |
    double edge_occupancy = 0.0;
};

/// |psi(t)> = exp(-i H t) |alpha1, alpha2, alpha3>, by fixed steps of a
/// Taylor series summed until the terms fall below 1e-17 of the state norm.
/// Throws CutoffGuardError when the truncation guard fails and
/// options.enforce_guard is set.
EvolutionReport evolve(const CouplerParams& params, double t, int cutoff,
                       const EvolveOptions& options = {});

/// Runs evolve with cutoffs start, start + step, ... until the edge guard
/// passes; throws CutoffGuardError once the dimension budget is exhausted.
EvolutionReport evolve_converged(const CouplerParams& params, double t, int start_cutoff = 15,
                                 int cutoff_step = 10, const EvolveOptions& options = {});

/// Single-mode reduced density matrix (partial trace over the other two modes).
Eigen::MatrixXcd reduced_density(const FockStateVector& state, ModeId mode);

double purity(const Eigen::MatrixXcd& rho);

Complex mean_amplitude(const Eigen::MatrixXcd& rho);
QuadratureVariances quadrature_variances(const Eigen::MatrixXcd& rho);
double mean_photon_number(const Eigen::MatrixXcd& rho);
double photon_number_variance(const Eigen::MatrixXcd& rho);
std::vector<double> photon_number_distribution(const Eigen::MatrixXcd& rho);

/// <beta|rho|beta>/pi with exact (untruncated) coherent coefficients.
double husimi_q(const Eigen::MatrixXcd& rho, Complex beta);

/// Radial trapezoid integral of husimi_q over [0, radial_max].
std::vector<double> phase_distribution(const Eigen::MatrixXcd& rho,
                                       const std::vector<double>& theta_grid,
                                       double radial_max = 10.0, int radial_points = 801);

struct ObservableGrids {
    std::vector<Complex> q_points;
    std::vector<double> theta_grid;
    double radial_max = 10.0;
    int radial_points = 801;
};

struct OracleObservables {
    Complex mean{};
    double vx = 0.0;
    double vy = 0.0;
    double mean_n = 0.0;
    double var_n = 0.0;
    std::vector<double> pnd;
    std::vector<double> q_values;
    std::vector<double> phase;
};

OracleObservables oracle_observables(const FockStateVector& state, ModeId mode,
                                     const ObservableGrids& grids = {});

/// <psi|H|psi>.
Complex expectation(const SparseOperator& op, const FockStateVector& state);

/// <psi|A_j|psi> directly on the three-mode state.
Complex mode_amplitude(const FockStateVector& state, ModeId mode);

}  // namespace nadc::oracle
