#include "nadc/fock_oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

namespace nadc::oracle {

namespace {

constexpr Complex kI{0.0, 1.0};

// Photon numbers of the flattened index.
std::array<int, 3> occupation(std::size_t idx, std::size_t side) {
    const auto n1 = static_cast<int>(idx % side);
    const auto n2 = static_cast<int>((idx / side) % side);
    const auto n3 = static_cast<int>(idx / (side * side));
    return {n1, n2, n3};
}

double one_norm(const SparseOperator& op) {
    // Hermitian: column sums equal row sums.
    double best = 0.0;
    for (Eigen::Index r = 0; r < op.outerSize(); ++r) {
        double sum = 0.0;
        for (SparseOperator::InnerIterator it(op, r); it; ++it) sum += std::abs(it.value());
        best = std::max(best, sum);
    }
    return best;
}

Eigen::VectorXcd coherent_vector(Complex alpha, int cutoff) {
    Eigen::VectorXcd v(cutoff + 1);
    Complex term = std::exp(-0.5 * std::norm(alpha));
    for (int n = 0; n <= cutoff; ++n) {
        if (n > 0) term *= alpha / std::sqrt(static_cast<double>(n));
        v[n] = term;
    }
    return v;
}

// Index of the mode's photon number and the stride layout of the other two.
int mode_axis(ModeId mode) {
    switch (mode) {
        case ModeId::Signal:
            return 0;
        case ModeId::Idler:
            return 1;
        case ModeId::Linear:
            return 2;
    }
    return 0;
}

}  // namespace

double FockStateVector::edge_occupancy() const {
    const std::size_t s = side();
    double total = 0.0;
    for (std::size_t i = 0; i < dimension(); ++i) {
        const auto n = occupation(i, s);
        if (n[0] == cutoff || n[1] == cutoff || n[2] == cutoff) total += std::norm(amplitudes[i]);
    }
    return total;
}

SparseOperator interaction_hamiltonian(const CouplerParams& params, int cutoff,
                                       std::size_t max_dimension) {
    params.validate();
    if (cutoff < 1) {
        throw std::invalid_argument("interaction_hamiltonian: cutoff must be >= 1");
    }
    const std::size_t side = static_cast<std::size_t>(cutoff) + 1;
    const std::size_t dim = side * side * side;
    if (dim > max_dimension) {
        throw std::length_error("Fock dimension " + std::to_string(dim) + " (cutoff " +
                                std::to_string(cutoff) + ") exceeds budget " +
                                std::to_string(max_dimension));
    }

    const double l1 = params.lambda1;
    const double l2 = params.lambda2;
    const double l3 = params.lambda3;
    auto idx = [side](int a, int b, int c) {
        return static_cast<Eigen::Index>(static_cast<std::size_t>(a) +
                                         side * (static_cast<std::size_t>(b) +
                                                 side * static_cast<std::size_t>(c)));
    };
    auto root = [](int a, int b) { return std::sqrt(static_cast<double>(a) * b); };

    std::vector<Eigen::Triplet<Complex>> triplets;
    triplets.reserve(dim * 6);
    for (std::size_t col = 0; col < dim; ++col) {
        const auto [n1, n2, n3] = occupation(col, side);
        const auto c = static_cast<Eigen::Index>(col);
        auto add = [&](int a, int b, int d, Complex v) {
            if (a < 0 || b < 0 || d < 0 || a > cutoff || b > cutoff || d > cutoff) return;
            if (v != Complex{}) triplets.emplace_back(idx(a, b, d), c, v);
        };
        // i l1 (A1 A2 - A1+ A2+)
        add(n1 - 1, n2 - 1, n3, kI * l1 * root(n1, n2));
        add(n1 + 1, n2 + 1, n3, -kI * l1 * root(n1 + 1, n2 + 1));
        // i l2 (A1 A3+ - A1+ A3)
        add(n1 - 1, n2, n3 + 1, kI * l2 * root(n1, n3 + 1));
        add(n1 + 1, n2, n3 - 1, -kI * l2 * root(n1 + 1, n3));
        // i l3 (A2 A3+ - A2+ A3)
        add(n1, n2 - 1, n3 + 1, kI * l3 * root(n2, n3 + 1));
        add(n1, n2 + 1, n3 - 1, -kI * l3 * root(n2 + 1, n3));
    }
    SparseOperator h(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    h.setFromTriplets(triplets.begin(), triplets.end());
    return h;
}

FockStateVector coherent_product_state(const CouplerParams& params, int cutoff) {
    FockStateVector state;
    state.cutoff = cutoff;
    const Eigen::VectorXcd v1 = coherent_vector(params.alpha1, cutoff);
    const Eigen::VectorXcd v2 = coherent_vector(params.alpha2, cutoff);
    const Eigen::VectorXcd v3 = coherent_vector(params.alpha3, cutoff);
    state.amplitudes.resize(static_cast<Eigen::Index>(state.dimension()));
    for (int n3 = 0; n3 <= cutoff; ++n3) {
        for (int n2 = 0; n2 <= cutoff; ++n2) {
            for (int n1 = 0; n1 <= cutoff; ++n1) {
                state.amplitudes[static_cast<Eigen::Index>(state.index(n1, n2, n3))] =
                    v1[n1] * v2[n2] * v3[n3];
            }
        }
    }
    state.amplitudes /= state.amplitudes.norm();
    return state;
}

Complex expectation(const SparseOperator& op, const FockStateVector& state) {
    const Eigen::VectorXcd hv = op * state.amplitudes;
    return state.amplitudes.dot(hv);
}

EvolutionReport evolve(const CouplerParams& params, double t, int cutoff,
                       const EvolveOptions& options) {
    if (!std::isfinite(t)) {
        throw std::invalid_argument("evolve: t must be finite");
    }
    const SparseOperator h = interaction_hamiltonian(params, cutoff, options.max_dimension);
    EvolutionReport report;
    report.state = coherent_product_state(params, cutoff);
    const Complex energy0 = expectation(h, report.state);

    const double h_norm = one_norm(h);
    int steps = 1;
    if (h_norm * std::abs(t) > 0.0) {
        steps = static_cast<int>(std::ceil(h_norm * std::abs(t) / options.max_step_norm));
    }
    steps = std::max(1, steps) * std::max(1, options.step_multiplier);
    const double dt = t / steps;

    Eigen::VectorXcd& psi = report.state.amplitudes;
    Eigen::VectorXcd term(psi.size());
    Eigen::VectorXcd next(psi.size());
    for (int step = 0; step < steps; ++step) {
        next = psi;
        term = psi;
        const double scale = psi.norm();
        for (int k = 1; k <= 200; ++k) {
            term = (h * term).eval() * Complex{0.0, -dt / k};
            next += term;
            if (term.norm() < 1e-17 * scale) break;
        }
        psi.swap(next);

        if (options.enforce_guard && (step % 8 == 7 || step + 1 == steps)) {
            const double edge = report.state.edge_occupancy();
            if (edge > options.abort_edge) {
                throw CutoffGuardError("edge occupancy " + std::to_string(edge) + " at t = " +
                                           std::to_string(dt * (step + 1)) + " with cutoff " +
                                           std::to_string(cutoff),
                                       cutoff, edge, dt * (step + 1));
            }
        }
    }

    report.steps = steps;
    report.norm_drift = std::abs(psi.norm() - 1.0);
    report.energy_drift = std::abs(expectation(h, report.state) - energy0);
    report.edge_occupancy = report.state.edge_occupancy();
    if (options.enforce_guard && report.edge_occupancy > options.edge_guard) {
        throw CutoffGuardError("edge occupancy " + std::to_string(report.edge_occupancy) +
                                   " exceeds guard with cutoff " + std::to_string(cutoff),
                               cutoff, report.edge_occupancy, t);
    }
    return report;
}

EvolutionReport evolve_converged(const CouplerParams& params, double t, int start_cutoff,
                                 int cutoff_step, const EvolveOptions& options) {
    if (start_cutoff < 1 || cutoff_step < 1) {
        throw std::invalid_argument("evolve_converged: cutoffs must be positive");
    }
    double last_edge = 0.0;
    double last_time = 0.0;
    for (int cutoff = start_cutoff;; cutoff += cutoff_step) {
        const auto side = static_cast<std::size_t>(cutoff) + 1;
        if (side * side * side > options.max_dimension) {
            throw CutoffGuardError(
                "no cutoff within the dimension budget of " +
                    std::to_string(options.max_dimension) + " satisfies the edge guard (last: cutoff " +
                    std::to_string(cutoff - cutoff_step) + ", edge occupancy " +
                    std::to_string(last_edge) + " at t = " + std::to_string(last_time) + ")",
                cutoff - cutoff_step, last_edge, last_time);
        }
        try {
            EvolveOptions opts = options;
            opts.enforce_guard = true;
            return evolve(params, t, cutoff, opts);
        } catch (const CutoffGuardError& e) {
            last_edge = e.edge_occupancy();
            last_time = e.time();
        }
    }
}

Eigen::MatrixXcd reduced_density(const FockStateVector& state, ModeId mode) {
    const auto side = static_cast<Eigen::Index>(state.side());
    const int axis = mode_axis(mode);
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(side, side);
    // View the amplitudes as a (side x side^2) matrix whose rows run over the kept mode.
    Eigen::MatrixXcd psi(side, side * side);
    for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(state.dimension()); ++i) {
        const auto n = occupation(static_cast<std::size_t>(i), state.side());
        const int kept = n[static_cast<std::size_t>(axis)];
        const int a = n[static_cast<std::size_t>((axis + 1) % 3)];
        const int b = n[static_cast<std::size_t>((axis + 2) % 3)];
        psi(kept, a + side * b) = state.amplitudes[i];
    }
    rho.noalias() = psi * psi.adjoint();
    return rho;
}

double purity(const Eigen::MatrixXcd& rho) { return (rho * rho).trace().real(); }

Complex mean_amplitude(const Eigen::MatrixXcd& rho) {
    Complex sum{};
    for (Eigen::Index m = 1; m < rho.rows(); ++m) {
        sum += std::sqrt(static_cast<double>(m)) * rho(m, m - 1);
    }
    return sum;
}

namespace {

Complex second_moment(const Eigen::MatrixXcd& rho) {
    Complex sum{};
    for (Eigen::Index m = 2; m < rho.rows(); ++m) {
        sum += std::sqrt(static_cast<double>(m) * static_cast<double>(m - 1)) * rho(m, m - 2);
    }
    return sum;
}

}  // namespace

double mean_photon_number(const Eigen::MatrixXcd& rho) {
    double sum = 0.0;
    for (Eigen::Index m = 0; m < rho.rows(); ++m) sum += static_cast<double>(m) * rho(m, m).real();
    return sum;
}

double photon_number_variance(const Eigen::MatrixXcd& rho) {
    double second = 0.0;
    for (Eigen::Index m = 0; m < rho.rows(); ++m) {
        second += static_cast<double>(m * m) * rho(m, m).real();
    }
    const double mean = mean_photon_number(rho);
    return second - mean * mean;
}

QuadratureVariances quadrature_variances(const Eigen::MatrixXcd& rho) {
    const Complex a = mean_amplitude(rho);
    const Complex a2 = second_moment(rho);
    const double n = mean_photon_number(rho);
    QuadratureVariances v;
    v.vx = (2.0 * a2.real() + 2.0 * n + 1.0) / 4.0 - a.real() * a.real();
    v.vy = (-2.0 * a2.real() + 2.0 * n + 1.0) / 4.0 - a.imag() * a.imag();
    v.x_squeezed = 4.0 * v.vx - 1.0 < 0.0;
    v.y_squeezed = 4.0 * v.vy - 1.0 < 0.0;
    return v;
}

std::vector<double> photon_number_distribution(const Eigen::MatrixXcd& rho) {
    std::vector<double> p(static_cast<std::size_t>(rho.rows()));
    for (Eigen::Index m = 0; m < rho.rows(); ++m) p[static_cast<std::size_t>(m)] = rho(m, m).real();
    return p;
}

double husimi_q(const Eigen::MatrixXcd& rho, Complex beta) {
    const Eigen::VectorXcd v = coherent_vector(beta, static_cast<int>(rho.rows()) - 1);
    return v.dot(rho * v).real() / std::numbers::pi;
}

std::vector<double> phase_distribution(const Eigen::MatrixXcd& rho,
                                       const std::vector<double>& theta_grid, double radial_max,
                                       int radial_points) {
    if (radial_points < 2 || !(radial_max > 0.0)) {
        throw std::invalid_argument("phase_distribution: invalid radial grid");
    }
    const double dr = radial_max / (radial_points - 1);
    std::vector<double> out;
    out.reserve(theta_grid.size());
    for (double theta : theta_grid) {
        const Complex dir = std::polar(1.0, theta);
        double sum = 0.0;
        for (int k = 0; k < radial_points; ++k) {
            const double r = dr * k;
            const double weight = (k == 0 || k + 1 == radial_points) ? 0.5 : 1.0;
            sum += weight * husimi_q(rho, r * dir) * r;
        }
        out.push_back(sum * dr);
    }
    return out;
}

OracleObservables oracle_observables(const FockStateVector& state, ModeId mode,
                                     const ObservableGrids& grids) {
    const Eigen::MatrixXcd rho = reduced_density(state, mode);
    OracleObservables obs;
    obs.mean = mean_amplitude(rho);
    const auto v = quadrature_variances(rho);
    obs.vx = v.vx;
    obs.vy = v.vy;
    obs.mean_n = mean_photon_number(rho);
    obs.var_n = photon_number_variance(rho);
    obs.pnd = photon_number_distribution(rho);
    obs.q_values.reserve(grids.q_points.size());
    for (const Complex& beta : grids.q_points) obs.q_values.push_back(husimi_q(rho, beta));
    if (!grids.theta_grid.empty()) {
        obs.phase = phase_distribution(rho, grids.theta_grid, grids.radial_max, grids.radial_points);
    }
    return obs;
}

Complex mode_amplitude(const FockStateVector& state, ModeId mode) {
    const int axis = mode_axis(mode);
    const std::size_t side = state.side();
    Complex sum{};
    for (std::size_t i = 0; i < state.dimension(); ++i) {
        auto n = occupation(i, side);
        const int k = n[static_cast<std::size_t>(axis)];
        if (k == 0) continue;
        n[static_cast<std::size_t>(axis)] = k - 1;
        const std::size_t j = state.index(n[0], n[1], n[2]);
        sum += std::conj(state.amplitudes[static_cast<Eigen::Index>(j)]) *
               std::sqrt(static_cast<double>(k)) * state.amplitudes[static_cast<Eigen::Index>(i)];
    }
    return sum;
}

}  // namespace nadc::oracle
