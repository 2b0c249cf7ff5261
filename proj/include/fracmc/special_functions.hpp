#pragma once

#include <cstddef>

namespace fracmc {

/// Gamma function for real arguments.
///
/// Lanczos approximation (g = 7, nine terms) with the reflection formula
/// below 0.5. Relative accuracy is better than 1e-13 on [-20, 50].
/// Throws DomainError at the poles 0, -1, -2, ... and for non-finite input,
/// OverflowError once the result leaves the double range (x > ~171.6).
double gamma(double x);

/// 1/Gamma(x). Total on finite input: exactly 0 at the poles of Gamma and
/// 0 when Gamma overflows.
double reciprocal_gamma(double x);

/// ln Gamma(x) for x > 0.
double log_gamma(double x);

/// ln Gamma(x + a) - ln Gamma(x) for x > 0 and x + a > 0.
///
/// For large x this is evaluated from the difference of Stirling series so
/// that the leading (x ln x) parts cancel analytically instead of in
/// floating point.
double log_gamma_ratio(double x, double a);

/// sin(pi x) with exact zeros at the integers.
double sin_pi(double x);

struct MLParams {
    double delta = 1.0;
    double beta = 1.0;
    double tolerance = 1e-15;
    std::size_t max_terms = 10'000;
};

/// Largest |z| accepted by mittag_leffler.
inline constexpr double kMittagLefflerZCap = 50.0;

/// mittag_leffler refuses a result when its largest series term exceeds
/// (1 + |sum|) by more than this factor: fewer than ~9 digits would be left.
inline constexpr double kMittagLefflerCancellationLimit = 1e6;

/// Two-parameter Mittag-Leffler function E_{delta,beta}(z) by its power
/// series sum z^k / Gamma(delta k + beta).
///
/// Terms at Gamma poles are exactly zero, which is what makes beta <= 0
/// usable. Summation stops after three consecutive terms with
/// |term| < tolerance * (1 + |sum|).
///
/// Throws DomainError for |z| > kMittagLefflerZCap or invalid parameters and
/// ConvergenceError if max_terms is exhausted first or cancellation has
/// eaten the result (E_{1,1}(-40), say).
double mittag_leffler(const MLParams& params, double z);

/// Shorthand for mittag_leffler({delta, beta}, z) with default tolerance.
double mittag_leffler(double delta, double beta, double z);

}  // namespace fracmc
