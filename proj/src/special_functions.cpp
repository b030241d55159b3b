#include "nadc/special_functions.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace nadc {

double laguerre(int n, double k, double x) {
    if (n < 0) {
        throw std::invalid_argument("laguerre: degree must be non-negative");
    }
    if (!std::isfinite(x) || !std::isfinite(k)) {
        throw std::invalid_argument("laguerre: arguments must be finite");
    }
    double prev = 1.0;
    if (n == 0) return prev;
    double curr = 1.0 + k - x;
    for (int m = 1; m < n; ++m) {
        const double next = ((2.0 * m + 1.0 + k - x) * curr - (m + k) * prev) / (m + 1.0);
        prev = curr;
        curr = next;
    }
    return curr;
}

double laguerre_half(int n, double x) { return laguerre(n, -0.5, x); }

bool laguerre_half_in_validated_range(int n, double x) {
    return n >= 0 && n <= 200 && std::abs(x) <= 100.0;
}

std::vector<double> scaled_laguerre_half_sequence(int n_max, double q, double w) {
    if (n_max < 0) {
        throw std::invalid_argument("scaled_laguerre_half_sequence: n_max must be >= 0");
    }
    if (!std::isfinite(q) || !std::isfinite(w)) {
        throw std::invalid_argument("scaled_laguerre_half_sequence: arguments must be finite");
    }
    std::vector<double> s(static_cast<std::size_t>(n_max) + 1);
    s[0] = 1.0;
    if (n_max == 0) return s;
    s[1] = 0.5 * q + w;
    const double q2 = q * q;
    for (int r = 1; r < n_max; ++r) {
        const auto i = static_cast<std::size_t>(r);
        s[i + 1] = (((2.0 * r + 0.5) * q + w) * s[i] - (r - 0.5) * q2 * s[i - 1]) / (r + 1.0);
    }
    return s;
}

namespace {

enum class ErfKind { Erf, Erfc, Erfcx };

constexpr double kA[5] = {3.16112374387056560e00, 1.13864154151050156e02,
                          3.77485237685302021e02, 3.20937758913846947e03,
                          1.85777706184603153e-1};
constexpr double kB[4] = {2.36012909523441209e01, 2.44024637934444173e02,
                          1.28261652607737228e03, 2.84423683343917062e03};
constexpr double kC[9] = {5.64188496988670089e-1, 8.88314979438837594e00,
                          6.61191906371416295e01, 2.98635138197400131e02,
                          8.81952221241769090e02, 1.71204761263407058e03,
                          2.05107837782607147e03, 1.23033935479799725e03,
                          2.15311535474403846e-8};
constexpr double kD[8] = {1.57449261107098347e01, 1.17693950891312499e02,
                          5.37181101862009858e02, 1.62138957456669019e03,
                          3.29079923573345963e03, 4.36261909014324716e03,
                          3.43936767414372164e03, 1.23033935480374942e03};
constexpr double kP[6] = {3.05326634961232344e-1, 3.60344899949804439e-1,
                          1.25781726111229246e-1, 1.60837851487422766e-2,
                          6.58749161529837803e-4, 1.63153871373020978e-2};
constexpr double kQ[5] = {2.56852019228982242e00, 1.87295284992346047e00,
                          5.27905102951428412e-1, 6.05183413124413191e-2,
                          2.33520497626869185e-3};

constexpr double kInvSqrtPi = 0.56418958354775628695;
constexpr double kThresh = 0.46875;
constexpr double kXsmall = 1.11e-16;
constexpr double kXbig = 26.543;
constexpr double kXhuge = 6.71e7;
constexpr double kXmax = 2.53e307;
constexpr double kXneg = -26.628;

// exp(-y^2) with y^2 split so the rounding of y*y does not leak into the exponent.
double exp_neg_square(double y) {
    const double ysq = std::trunc(y * 16.0) / 16.0;
    const double del = (y - ysq) * (y + ysq);
    return std::exp(-ysq * ysq) * std::exp(-del);
}

double calerf(double x, ErfKind kind) {
    const double y = std::abs(x);
    double result = 0.0;

    if (y <= kThresh) {
        const double ysq = y > kXsmall ? y * y : 0.0;
        double num = kA[4] * ysq;
        double den = ysq;
        for (int i = 0; i < 3; ++i) {
            num = (num + kA[i]) * ysq;
            den = (den + kB[i]) * ysq;
        }
        result = x * (num + kA[3]) / (den + kB[3]);
        if (kind != ErfKind::Erf) result = 1.0 - result;
        if (kind == ErfKind::Erfcx) result = std::exp(ysq) * result;
        return result;
    }

    if (y <= 4.0) {
        double num = kC[8] * y;
        double den = y;
        for (int i = 0; i < 7; ++i) {
            num = (num + kC[i]) * y;
            den = (den + kD[i]) * y;
        }
        result = (num + kC[7]) / (den + kD[7]);
        if (kind != ErfKind::Erfcx) result *= exp_neg_square(y);
    } else {
        bool done = false;
        if (y >= kXbig) {
            if (kind != ErfKind::Erfcx || y >= kXmax) {
                done = true;  // erfc underflows to 0
            } else if (y >= kXhuge) {
                result = kInvSqrtPi / y;
                done = true;
            }
        }
        if (!done) {
            const double ysq = 1.0 / (y * y);
            double num = kP[5] * ysq;
            double den = ysq;
            for (int i = 0; i < 4; ++i) {
                num = (num + kP[i]) * ysq;
                den = (den + kQ[i]) * ysq;
            }
            result = ysq * (num + kP[4]) / (den + kQ[4]);
            result = (kInvSqrtPi - result) / y;
            if (kind != ErfKind::Erfcx) result *= exp_neg_square(y);
        }
    }

    // result now holds erfc(|x|) or erfcx(|x|); fix up sign and kind.
    switch (kind) {
        case ErfKind::Erf:
            result = (0.5 - result) + 0.5;
            return x < 0.0 ? -result : result;
        case ErfKind::Erfc:
            return x < 0.0 ? 2.0 - result : result;
        case ErfKind::Erfcx:
            if (x < 0.0) {
                if (x < kXneg) return std::numeric_limits<double>::infinity();
                const double ysq = std::trunc(x * 16.0) / 16.0;
                const double del = (x - ysq) * (x + ysq);
                const double e = std::exp(ysq * ysq) * std::exp(del);
                result = (e + e) - result;
            }
            return result;
    }
    return result;
}

}  // namespace

double erf(double x) {
    if (std::isnan(x)) return x;
    return calerf(x, ErfKind::Erf);
}

double erfc(double x) {
    if (std::isnan(x)) return x;
    return calerf(x, ErfKind::Erfc);
}

double erfcx(double x) {
    if (std::isnan(x)) return x;
    return calerf(x, ErfKind::Erfcx);
}

}  // namespace nadc
