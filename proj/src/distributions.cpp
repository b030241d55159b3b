#include "nadc/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace nadc {

namespace {

constexpr double kNegativeTolerance = 1e-12;
constexpr double kNormWarning = 1e-9;

// Neumaier's variant of Kahan summation.
class CompensatedSum {
public:
    void add(long double v) {
        const long double t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v)) {
            comp_ += (sum_ - t) + v;
        } else {
            comp_ += (v - t) + sum_;
        }
        sum_ = t;
    }
    [[nodiscard]] long double value() const { return sum_ + comp_; }

private:
    long double sum_ = 0.0L;
    long double comp_ = 0.0L;
};

void clamp_negative(DistributionSeries& series) {
    double worst = 0.0;
    for (double& v : series.values) {
        worst = std::min(worst, v);
        if (v < 0.0) v = 0.0;
    }
    series.min_unclamped = worst;
    if (worst < -kNegativeTolerance) {
        series.warnings.push_back("negative probability " + std::to_string(worst) +
                                  " clamped to zero");
    }
}

}  // namespace

double mean_photon_number(const GaussianModeState& state) {
    return std::norm(state.mean) + 0.5 * (state.eta1 - 1.0);
}

double photon_number_variance(const GaussianModeState& state) {
    const double n = 0.5 * (state.eta1 - 1.0);
    const double m = state.eta2;
    const double abs2 = std::norm(state.mean);
    const Complex conj_sq = std::conj(state.mean) * std::conj(state.mean);
    return abs2 * (2.0 * n + 1.0) + 2.0 * m * conj_sq.real() + n * n + n + m * m;
}

double fano_factor(const GaussianModeState& state) {
    const double mean = mean_photon_number(state);
    if (!(mean > 1e-300)) {
        throw std::domain_error("Fano factor undefined for vanishing mean photon number");
    }
    return photon_number_variance(state) / mean;
}

int default_n_max(const GaussianModeState& state) {
    const double mean = mean_photon_number(state);
    const double sigma = std::sqrt(std::max(0.0, photon_number_variance(state)));
    double n_max = std::ceil(mean + 10.0 * sigma) + 10.0;

    const double qp = std::abs((state.a_plus - 1.0) / (state.a_plus + 1.0));
    const double qm = std::abs((state.a_minus - 1.0) / (state.a_minus + 1.0));
    const double q = std::max(qp, qm);
    if (q > 1e-3) {
        const double geometric = std::ceil(std::log(1e-12 * (1.0 - q)) / std::log(q));
        n_max = std::max(n_max, geometric + std::ceil(2.0 * mean));
    }
    if (!(n_max < 1e7)) {
        throw std::range_error("photon-number support too large: n_max = " +
                               std::to_string(n_max));
    }
    return static_cast<int>(n_max);
}

DistributionSeries photon_number_distribution(const GaussianModeState& state, int n_max) {
    if (n_max < 0) {
        throw std::invalid_argument("photon_number_distribution: n_max must be >= 0");
    }
    if (n_max > kMaxPhotonNumber) {
        throw std::range_error("photon_number_distribution: n_max = " + std::to_string(n_max) +
                               " exceeds " + std::to_string(kMaxPhotonNumber));
    }
    const double ap = state.a_plus + 1.0;
    const double am = state.a_minus + 1.0;
    const double x = state.mean.real();
    const double y = state.mean.imag();

    const double exponent = -2.0 * x * x / ap - 2.0 * y * y / am;
    const double prefactor = 2.0 / std::sqrt(ap * am) * std::exp(exponent);

    const auto s_plus =
        scaled_laguerre_half_sequence(n_max, (state.a_plus - 1.0) / ap, 4.0 * x * x / (ap * ap));
    const auto s_minus =
        scaled_laguerre_half_sequence(n_max, (state.a_minus - 1.0) / am, 4.0 * y * y / (am * am));

    DistributionSeries out;
    out.kind = SeriesKind::PhotonNumber;
    const auto count = static_cast<std::size_t>(n_max) + 1;
    out.grid.resize(count);
    out.values.resize(count);
    for (std::size_t n = 0; n < count; ++n) {
        CompensatedSum sum;
        for (std::size_t r = 0; r <= n; ++r) {
            sum.add(static_cast<long double>(s_plus[r]) * s_minus[n - r]);
        }
        out.grid[n] = static_cast<double>(n);
        out.values[n] = prefactor * static_cast<double>(sum.value());
        if (!std::isfinite(out.values[n])) {
            throw std::range_error("photon_number_distribution: overflow at n = " +
                                   std::to_string(n));
        }
    }
    clamp_negative(out);

    CompensatedSum total;
    for (double v : out.values) total.add(v);
    out.norm_residual = std::abs(1.0 - static_cast<double>(total.value()));
    if (out.norm_residual > kNormWarning) {
        out.warnings.push_back("truncated: 1 - sum P(n) = " + std::to_string(out.norm_residual) +
                               " at n_max = " + std::to_string(n_max) +
                               " (suggested n_max " + std::to_string(default_n_max(state)) + ")");
    }
    return out;
}

DistributionSeries photon_number_distribution(const GaussianModeState& state) {
    return photon_number_distribution(state, default_n_max(state));
}

DistributionSeries poisson_reference(double mean, int n_max) {
    if (!(mean >= 0.0) || !std::isfinite(mean)) {
        throw std::invalid_argument("poisson_reference: mean must be finite and >= 0");
    }
    if (n_max < 0) {
        throw std::invalid_argument("poisson_reference: n_max must be >= 0");
    }
    DistributionSeries out;
    out.kind = SeriesKind::PhotonNumber;
    const auto count = static_cast<std::size_t>(n_max) + 1;
    out.grid.resize(count);
    out.values.resize(count);
    if (mean <= 50.0) {
        double p = std::exp(-mean);
        for (std::size_t n = 0; n < count; ++n) {
            if (n > 0) p *= mean / static_cast<double>(n);
            out.grid[n] = static_cast<double>(n);
            out.values[n] = p;
        }
    } else {
        const double log_mean = std::log(mean);
        for (std::size_t n = 0; n < count; ++n) {
            const auto nd = static_cast<double>(n);
            out.grid[n] = nd;
            out.values[n] = std::exp(nd * log_mean - mean - std::lgamma(nd + 1.0));
        }
    }
    CompensatedSum total;
    for (double v : out.values) total.add(v);
    out.norm_residual = std::abs(1.0 - static_cast<double>(total.value()));
    return out;
}

double phase_density(const GaussianModeState& state, double theta) {
    if (!std::isfinite(theta)) {
        throw std::invalid_argument("phase_density: theta must be finite");
    }
    const double ap = state.a_plus + 1.0;
    const double am = state.a_minus + 1.0;
    const double x = state.mean.real();
    const double y = state.mean.imag();
    const double s = std::sin(theta);
    const double c = std::cos(theta);

    const double e = -2.0 * x * x / ap - 2.0 * y * y / am;
    const double cc = 2.0 * (ap * s * s + am * c * c) / (ap * am);
    const double b = 4.0 * (am * x * c + ap * y * s) / (ap * am);
    const double z = b / (2.0 * std::sqrt(cc));
    const double norm = 1.0 / (std::numbers::pi * cc * std::sqrt(ap * am));
    const double sqrt_pi = std::sqrt(std::numbers::pi);

    double value = 0.0;
    if (z <= 0.0) {
        value = norm * std::exp(e) * (1.0 + sqrt_pi * z * erfcx(-z));
    } else {
        // erfcx(-z) = 2 e^{z^2} - erfcx(z); the e^{z^2} part joins e^E.
        value = norm * (std::exp(e) * (1.0 - sqrt_pi * z * erfcx(z)) +
                        2.0 * sqrt_pi * z * std::exp(e + z * z));
    }
    if (!std::isfinite(value)) {
        throw std::range_error("phase_density: non-finite intermediate");
    }
    return value;
}

std::vector<double> default_theta_grid(int points) {
    if (points < 2) {
        throw std::invalid_argument("theta grid needs at least 2 points");
    }
    std::vector<double> grid(static_cast<std::size_t>(points));
    const double step = 2.0 * std::numbers::pi / (points - 1);
    for (int i = 0; i + 1 < points; ++i) {
        grid[static_cast<std::size_t>(i)] = -std::numbers::pi + step * i;
    }
    grid.back() = std::numbers::pi;
    return grid;
}

double periodic_trapezoid(const std::vector<double>& grid, const std::vector<double>& values,
                          double period) {
    if (grid.size() != values.size() || grid.empty()) {
        throw std::invalid_argument("periodic_trapezoid: grid/value size mismatch");
    }
    CompensatedSum sum;
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        sum.add(0.5 * (grid[i + 1] - grid[i]) * (values[i] + values[i + 1]));
    }
    const double wrap = grid.front() + period - grid.back();
    sum.add(0.5 * wrap * (values.back() + values.front()));
    return static_cast<double>(sum.value());
}

DistributionSeries phase_distribution(const GaussianModeState& state,
                                      const std::vector<double>& theta_grid) {
    if (theta_grid.empty()) {
        throw std::invalid_argument("phase_distribution: empty theta grid");
    }
    if (!std::is_sorted(theta_grid.begin(), theta_grid.end()) ||
        theta_grid.front() < -std::numbers::pi || theta_grid.back() > std::numbers::pi) {
        throw std::invalid_argument("phase_distribution: grid must be ascending in [-pi, pi]");
    }
    DistributionSeries out;
    out.kind = SeriesKind::Phase;
    out.grid = theta_grid;
    out.values.reserve(theta_grid.size());
    for (double theta : theta_grid) {
        out.values.push_back(phase_density(state, theta));
    }
    clamp_negative(out);
    out.norm_residual =
        std::abs(1.0 - periodic_trapezoid(out.grid, out.values, 2.0 * std::numbers::pi));
    return out;
}

double vacuum_phase_distribution(double a_plus, double a_minus, double theta) {
    if (!(a_plus > 0.0) || !(a_minus > 0.0)) {
        throw std::invalid_argument("vacuum_phase_distribution: a+- must be positive");
    }
    const double s = std::sin(theta);
    const double c = std::cos(theta);
    return std::sqrt(a_plus * a_minus) /
           (2.0 * std::numbers::pi * (a_plus * s * s + a_minus * c * c));
}

std::vector<std::size_t> local_maxima(const std::vector<double>& values, bool periodic,
                                      double rel_flat) {
    std::vector<std::size_t> peaks;
    const std::size_t n = values.size();
    if (n < 2) return peaks;
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    if (*hi - *lo <= rel_flat * std::abs(*hi)) return peaks;

    for (std::size_t i = 0; i < n; ++i) {
        const bool has_left = periodic || i > 0;
        const bool has_right = periodic || i + 1 < n;
        const double left = has_left ? values[(i + n - 1) % n] : -1.0;
        const double right = has_right ? values[(i + 1) % n] : -1.0;
        if ((!has_left || values[i] > left) && (!has_right || values[i] >= right)) {
            peaks.push_back(i);
        }
    }
    return peaks;
}

std::vector<std::size_t> phase_maxima(const std::vector<double>& grid,
                                      const std::vector<double>& values, double rel_flat) {
    if (grid.size() != values.size()) {
        throw std::invalid_argument("phase_maxima: grid/value size mismatch");
    }
    const bool closed = grid.size() > 1 &&
                        std::abs(grid.back() - grid.front() - 2.0 * std::numbers::pi) < 1e-12;
    if (!closed) return local_maxima(values, true, rel_flat);
    return local_maxima(std::vector<double>(values.begin(), values.end() - 1), true, rel_flat);
}

}  // namespace nadc
