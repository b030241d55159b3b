#include "nadc/coeffs.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace nadc {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kInvSqrt3 = 0.57735026918962576451;
constexpr double kSqrt2Over3 = 0.81649658092772603273;
constexpr double kSqrt3Over2 = 0.86602540378443864676;

bool relatively_equal(double a, double b, double rel) {
    return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b));
}

void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) {
        throw std::invalid_argument(std::string(what) + " must be finite");
    }
}

// Commutator form: Omega(i, j) = [b_i, b_j] for b = (a1, a1+, a2, a2+, a3, a3+).
Matrix6 commutator_form() {
    Matrix6 omega = Matrix6::Zero();
    for (int k = 0; k < 3; ++k) {
        omega(2 * k, 2 * k + 1) = 1.0;
        omega(2 * k + 1, 2 * k) = -1.0;
    }
    return omega;
}

}  // namespace

CouplerParams CouplerParams::restricted(double lambda1, Complex alpha1, Complex alpha2,
                                        Complex alpha3) {
    CouplerParams p;
    p.lambda1 = lambda1;
    p.lambda2 = lambda1 * kInvSqrt2;
    p.lambda3 = lambda1 * kInvSqrt2;
    p.alpha1 = alpha1;
    p.alpha2 = alpha2;
    p.alpha3 = alpha3;
    return p;
}

CouplerParams CouplerParams::restricted_uniform(double lambda1, Complex alpha) {
    return restricted(lambda1, alpha, alpha, alpha);
}

bool CouplerParams::is_restricted() const {
    const double target = lambda1 * kInvSqrt2;
    return relatively_equal(lambda2, target, 1e-12) && relatively_equal(lambda3, target, 1e-12);
}

void CouplerParams::validate() const {
    require_finite(lambda1, "lambda1");
    require_finite(lambda2, "lambda2");
    require_finite(lambda3, "lambda3");
    for (const Complex& a : {alpha1, alpha2, alpha3}) {
        require_finite(a.real(), "alpha");
        require_finite(a.imag(), "alpha");
    }
    if (lambda1 < 0.0 || lambda2 < 0.0 || lambda3 < 0.0) {
        throw std::invalid_argument("coupling constants must be non-negative");
    }
}

EvolutionCoefficients EvolutionCoefficients::identity(double t) {
    EvolutionCoefficients c;
    c.t = t;
    c.f[0] = c.g[0] = c.h[0] = 1.0;
    return c;
}

EvolutionCoefficients analytic_coefficients(double lambda1, double t) {
    require_finite(lambda1, "lambda1");
    require_finite(t, "t");
    if (lambda1 <= 0.0) {
        throw std::invalid_argument("lambda1 must be positive");
    }
    const double x = lambda1 * t;
    if (std::abs(x) > kMaxGrowthExponent) {
        throw std::range_error("lambda1*t = " + std::to_string(x) + " overflows cosh");
    }

    const double kt = kSqrt3Over2 * x;
    const double ch = std::cosh(x);
    const double sh = std::sinh(x);
    const double ch2 = std::cosh(0.5 * x);
    const double sh2 = std::sinh(0.5 * x);
    const double c = std::cos(kt);
    const double s = std::sin(kt);

    EvolutionCoefficients out;
    out.t = t;
    auto& f = out.f;
    const double even = ch2 * c + kInvSqrt3 * sh2 * s;
    const double odd = sh2 * c + kInvSqrt3 * ch2 * s;
    f[0] = 0.5 * (ch + even);
    f[2] = 0.5 * (ch - even);
    f[1] = 0.5 * (sh - odd);
    f[3] = 0.5 * (sh + odd);
    f[4] = kSqrt2Over3 * ch2 * s;
    f[5] = -kSqrt2Over3 * sh2 * s;

    out.g = f;

    auto& h = out.h;
    h[0] = ch2 * c - kInvSqrt3 * sh2 * s;
    h[1] = -sh2 * c + kInvSqrt3 * ch2 * s;
    h[2] = h[4] = kSqrt2Over3 * ch2 * s;
    h[3] = h[5] = -kSqrt2Over3 * sh2 * s;
    return out;
}

Matrix6 generator_matrix(const CouplerParams& params) {
    params.validate();
    const double l1 = params.lambda1;
    const double l2 = params.lambda2;
    const double l3 = params.lambda3;
    Matrix6 m = Matrix6::Zero();
    // dA1/dt = -l1 A2+ - l2 A3
    m(0, 3) = -l1;
    m(0, 4) = -l2;
    m(1, 2) = -l1;
    m(1, 5) = -l2;
    // dA2/dt = -l1 A1+ - l3 A3
    m(2, 1) = -l1;
    m(2, 4) = -l3;
    m(3, 0) = -l1;
    m(3, 5) = -l3;
    // dA3/dt = l2 A1 + l3 A2
    m(4, 0) = l2;
    m(4, 2) = l3;
    m(5, 1) = l2;
    m(5, 3) = l3;
    return m;
}

Matrix6 matrix_exponential(const Matrix6& a) {
    const double norm = a.cwiseAbs().colwise().sum().maxCoeff();
    if (!std::isfinite(norm)) {
        throw std::invalid_argument("matrix_exponential: non-finite entries");
    }
    if (norm > kMaxGrowthExponent) {
        throw std::range_error("matrix_exponential: ||A||_1 = " + std::to_string(norm) +
                               " overflows double precision");
    }
    int squarings = 0;
    if (norm > 0.5) {
        squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
    }
    const Matrix6 scaled = a / std::ldexp(1.0, squarings);

    constexpr int kOrder = 18;
    // Horner: I + X(I + X/2 (I + X/3 (...)))
    Matrix6 result = Matrix6::Identity();
    for (int k = kOrder; k >= 1; --k) {
        result = Matrix6::Identity() + (scaled * result) / static_cast<double>(k);
    }
    for (int i = 0; i < squarings; ++i) {
        result = (result * result).eval();
    }
    return result;
}

Matrix6 propagator(const CouplerParams& params, double t) {
    require_finite(t, "t");
    return matrix_exponential(generator_matrix(params) * t);
}

EvolutionCoefficients numeric_coefficients(const CouplerParams& params, double t) {
    const Matrix6 e = propagator(params, t);
    EvolutionCoefficients out;
    out.t = t;
    out.f = {e(0, 0), e(0, 1), -e(0, 2), -e(0, 3), -e(0, 4), -e(0, 5)};
    out.g = {e(2, 2), e(2, 3), -e(2, 0), -e(2, 1), -e(2, 4), -e(2, 5)};
    out.h = {e(4, 4), e(4, 5), e(4, 2), e(4, 3), e(4, 0), e(4, 1)};
    return out;
}

Matrix6 coefficient_matrix(const EvolutionCoefficients& c) {
    const auto& f = c.f;
    const auto& g = c.g;
    const auto& h = c.h;
    Matrix6 s;
    s.row(0) << f[0], f[1], -f[2], -f[3], -f[4], -f[5];
    s.row(2) << -g[2], -g[3], g[0], g[1], -g[4], -g[5];
    s.row(4) << h[4], h[5], h[2], h[3], h[0], h[1];
    // Hermitian conjugate rows: real coefficients, creation/annihilation swapped.
    for (int k = 0; k < 3; ++k) {
        for (int j = 0; j < 3; ++j) {
            s(2 * k + 1, 2 * j) = s(2 * k, 2 * j + 1);
            s(2 * k + 1, 2 * j + 1) = s(2 * k, 2 * j);
        }
    }
    return s;
}

double IdentityResiduals::max() const {
    return std::max({norm_signal, norm_idler, norm_linear, cross_signal_idler, conj_signal_idler,
                     cross_signal_linear, conj_signal_linear, cross_idler_linear,
                     conj_idler_linear, symplectic});
}

IdentityResiduals verify_identities(const EvolutionCoefficients& coeffs) {
    const Matrix6 s = coefficient_matrix(coeffs);
    const Matrix6 omega = commutator_form();
    const Matrix6 brackets = s * omega * s.transpose();

    auto ann = [](int mode) { return 2 * mode; };
    auto cre = [](int mode) { return 2 * mode + 1; };

    IdentityResiduals r;
    r.norm_signal = std::abs(brackets(ann(0), cre(0)) - 1.0);
    r.norm_idler = std::abs(brackets(ann(1), cre(1)) - 1.0);
    r.norm_linear = std::abs(brackets(ann(2), cre(2)) - 1.0);
    r.cross_signal_idler = std::abs(brackets(ann(0), ann(1)));
    r.conj_signal_idler = std::abs(brackets(ann(0), cre(1)));
    r.cross_signal_linear = std::abs(brackets(ann(0), ann(2)));
    r.conj_signal_linear = std::abs(brackets(ann(0), cre(2)));
    r.cross_idler_linear = std::abs(brackets(ann(1), ann(2)));
    r.conj_idler_linear = std::abs(brackets(ann(1), cre(2)));
    r.symplectic = (brackets - omega).cwiseAbs().maxCoeff();
    return r;
}

}  // namespace nadc
