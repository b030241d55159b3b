#pragma once

#include <vector>

namespace nadc {

/// Generalized Laguerre polynomial L_n^k(x) by the upward degree recurrence
///   (m+1) L_{m+1} = (2m + 1 + k - x) L_m - (m + k) L_{m-1}.
/// Throws std::invalid_argument for n < 0 or non-finite arguments.
double laguerre(int n, double k, double x);

/// L_n^{-1/2}(x). Relative accuracy 1e-10 is validated for n <= 200 and
/// |x| <= 100; see laguerre_half_in_validated_range.
double laguerre_half(int n, double x);

bool laguerre_half_in_validated_range(int n, double x);

/// The sequence S_r = q^r L_r^{-1/2}(-w/q) for r = 0..n_max.
///
/// Satisfies (r+1) S_{r+1} = ((2r + 1/2) q + w) S_r - (r - 1/2) q^2 S_{r-1}
/// with S_0 = 1, S_1 = q/2 + w, which stays finite as q -> 0 (where
/// S_r -> w^r / r!). This is the form in which Laguerre factors appear in
/// the photon-number distribution of a Gaussian state.
std::vector<double> scaled_laguerre_half_sequence(int n_max, double q, double w);

/// Error function family after W. J. Cody's rational Chebyshev
/// approximations (Math. Comp. 23, 1969): three intervals |x| <= 0.46875,
/// <= 4 and > 4, each a ratio of polynomials good to ~1e-18 in exact
/// arithmetic. erf(-x) = -erf(x) holds bitwise.
double erf(double x);
double erfc(double x);
/// Scaled complement exp(x^2) erfc(x), finite for large positive x.
double erfcx(double x);

}  // namespace nadc
