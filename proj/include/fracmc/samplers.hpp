#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "fracmc/errors.hpp"
#include "fracmc/gl_weights.hpp"
#include "fracmc/uniform_source.hpp"

namespace fracmc {

/// Discrete draws are reported as unsigned integers saturated at 2^53.
///
/// The Sibuya law has P(Y > k) ~ k^-alpha / Gamma(1 - alpha): at alpha = 0.1
/// roughly one draw in a hundred lies beyond 2^62, so some ceiling is
/// unavoidable. 2^53 keeps every value exactly representable as a double.
/// Saturation is applied identically by all methods, so they all return
/// min(Y, ceiling) with the same law.
inline constexpr std::uint64_t kIndexCeiling = std::uint64_t{1} << 53;

/// Method 2 runs this many literal Bernoulli trials before resolving the
/// remaining trials in one jump.
inline constexpr std::uint64_t kBernoulliTrialLimit = 1024;

/// Iteration cap for the rejection step of the beta sampler.
inline constexpr std::uint64_t kRejectionCap = 1'000'000;

enum class SibuyaMethod { inverse_cdf = 1, bernoulli = 2, beta_geometric = 3 };

std::string_view to_string(SibuyaMethod method);

/// Parses "1", "2", "3" or the method names.
SibuyaMethod parse_sibuya_method(std::string_view text);

struct SibuyaSpec {
    double alpha;
    SibuyaMethod method;
};

void validate_sibuya_alpha(double alpha);

// ---------------------------------------------------------------------------
// Deterministic transforms of uniforms. The samplers below are thin loops
// around these.

/// Smallest k with u < F_k for the Sibuya law (Method 1).
///
/// F_k = 1 - S_k with S_k = prod_{j<=k} (1 - alpha/j); S_k is updated
/// multiplicatively for k <= 64 and taken from the Gamma-ratio closed form
/// beyond that, searched by doubling and bisection.
std::uint64_t sibuya_quantile(double alpha, double u);

/// Same law conditioned on Y > after.
std::uint64_t sibuya_conditional_quantile(double alpha, std::uint64_t after, double u);

/// ceil(ln u / ln(1 - p)); p = 1 gives 1.
std::uint64_t geometric_quantile(double p, double u);

/// Inverse CDF of the sieved law w_k / W over one branch of the partition.
std::uint64_t sieved_quantile(const WeightPartition& part, Sign sign, double u);

/// 1 - v^(1/alpha), the inverse of G(u) = 1 - (1 - u)^alpha applied to 1 - v.
double continuous_sibuya_quantile(double alpha, double v);

/// sin^2(pi u / 2): a Beta(1/2, 1/2) (arcsine) variate.
double arcsine_from_uniform(double u);

namespace detail {

/// Smallest k >= k_start with ln |S_k| < log_threshold, saturated at
/// kIndexCeiling. Requires k_start >= ceil(alpha), where |S_k| decreases.
std::uint64_t first_index_below(double alpha, std::uint64_t k_start, double log_threshold);

}  // namespace detail

// ---------------------------------------------------------------------------
// Samplers.

template <UniformRandomSource Source>
std::uint64_t sample_sibuya_inverse_cdf(double alpha, Source& src) {
    validate_sibuya_alpha(alpha);
    return sibuya_quantile(alpha, src.next());
}

/// First success in independent trials with success probability alpha/k at
/// trial k. After kBernoulliTrialLimit failures the rest of the trial
/// sequence is resolved with one uniform through its conditional survival
/// function, which has the same law as continuing trial by trial.
template <UniformRandomSource Source>
std::uint64_t sample_sibuya_bernoulli(double alpha, Source& src) {
    validate_sibuya_alpha(alpha);
    for (std::uint64_t k = 1; k <= kBernoulliTrialLimit; ++k) {
        if (src.next() < alpha / static_cast<double>(k)) return k;
    }
    return sibuya_conditional_quantile(alpha, kBernoulliTrialLimit, src.next());
}

template <UniformRandomSource Source>
std::uint64_t sample_geometric(double p, Source& src) {
    if (!(p > 0.0 && p <= 1.0)) throw DomainError("geometric: p must lie in (0, 1]");
    if (p == 1.0) return 1;
    return geometric_quantile(p, src.next());
}

/// Beta(alpha, 1 - alpha) variate.
///
/// alpha = 1/2 uses the arcsine map. Otherwise Johnk's method: with
/// X = U^(1/alpha), Y = V^(1/(1-alpha)), accept X / (X + Y) when
/// X + Y <= 1. Worked in logarithms because X underflows for small alpha.
template <UniformRandomSource Source>
double sample_beta_sibuya(double alpha, Source& src) {
    validate_sibuya_alpha(alpha);
    if (alpha == 0.5) return arcsine_from_uniform(src.next());
    for (std::uint64_t i = 0; i < kRejectionCap; ++i) {
        const double lx = std::log(src.next()) / alpha;
        const double ly = std::log(src.next()) / (1.0 - alpha);
        const double hi = std::max(lx, ly);
        const double log_sum = hi + std::log1p(std::exp(std::min(lx, ly) - hi));
        if (log_sum <= 0.0) return std::exp(lx - log_sum);
    }
    throw SamplerCapError("beta sampler: rejection cap reached");
}

/// Method 3: geometric with a Beta(alpha, 1 - alpha) success probability.
template <UniformRandomSource Source>
std::uint64_t sample_sibuya_beta_geometric(double alpha, Source& src) {
    const double p = sample_beta_sibuya(alpha, src);
    if (p <= 0.0) return kIndexCeiling;
    return sample_geometric(p, src);
}

template <UniformRandomSource Source>
std::uint64_t sample_sibuya(const SibuyaSpec& spec, Source& src) {
    switch (spec.method) {
        case SibuyaMethod::inverse_cdf: return sample_sibuya_inverse_cdf(spec.alpha, src);
        case SibuyaMethod::bernoulli: return sample_sibuya_bernoulli(spec.alpha, src);
        case SibuyaMethod::beta_geometric: return sample_sibuya_beta_geometric(spec.alpha, src);
    }
    throw DomainError("unknown Sibuya method");
}

template <UniformRandomSource Source>
std::uint64_t sample_sieved(const WeightPartition& part, Sign sign, Source& src) {
    return sieved_quantile(part, sign, src.next());
}

template <UniformRandomSource Source>
double sample_continuous_sibuya(double alpha, Source& src) {
    return continuous_sibuya_quantile(alpha, src.next());
}

struct SortedProfile {
    std::vector<double> mean;       // element-wise mean of the sorted draws
    std::vector<double> std_error;  // sample std / sqrt(draws); 0 when draws == 1
};

/// Sorts each of `draws` samples of size n and averages them position by
/// position.
template <UniformRandomSource Source>
SortedProfile sorted_average_profile(const SibuyaSpec& spec, std::size_t n, std::size_t draws,
                                     Source& src) {
    if (n < 1 || draws < 1) throw DomainError("sorted_average_profile: n and draws must be >= 1");
    validate_sibuya_alpha(spec.alpha);
    // Plain sums keep the means monotone (rounding is monotone); Welford
    // updates carry the spread, since squared draws reach 1e30.
    std::vector<double> sum(n, 0.0), running(n, 0.0), m2(n, 0.0);
    std::vector<std::uint64_t> sample(n);
    for (std::size_t d = 0; d < draws; ++d) {
        for (auto& y : sample) y = sample_sibuya(spec, src);
        std::sort(sample.begin(), sample.end());
        const double count = static_cast<double>(d + 1);
        for (std::size_t i = 0; i < n; ++i) {
            const double v = static_cast<double>(sample[i]);
            sum[i] += v;
            const double delta = v - running[i];
            running[i] += delta / count;
            m2[i] += delta * (v - running[i]);
        }
    }
    SortedProfile profile{std::vector<double>(n), std::vector<double>(n, 0.0)};
    const double dn = static_cast<double>(draws);
    for (std::size_t i = 0; i < n; ++i) {
        profile.mean[i] = sum[i] / dn;
        if (draws > 1) profile.std_error[i] = std::sqrt(m2[i] / (dn - 1.0) / dn);
    }
    return profile;
}

}  // namespace fracmc
