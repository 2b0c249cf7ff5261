#include "fracmc/samplers.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <string>

namespace fracmc {
namespace {

constexpr std::uint64_t kSequentialLimit = 64;

}  // namespace

std::string_view to_string(SibuyaMethod method) {
    switch (method) {
        case SibuyaMethod::inverse_cdf: return "inverse_cdf";
        case SibuyaMethod::bernoulli: return "bernoulli";
        case SibuyaMethod::beta_geometric: return "beta_geometric";
    }
    return "unknown";
}

SibuyaMethod parse_sibuya_method(std::string_view text) {
    if (text == "1" || text == "inverse_cdf") return SibuyaMethod::inverse_cdf;
    if (text == "2" || text == "bernoulli") return SibuyaMethod::bernoulli;
    if (text == "3" || text == "beta_geometric") return SibuyaMethod::beta_geometric;
    throw DomainError("unknown Sibuya method '" + std::string(text) +
                      "' (expected 1, 2, 3, inverse_cdf, bernoulli or beta_geometric)");
}

void validate_sibuya_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw DomainError("Sibuya parameter must satisfy 0 < alpha < 1, got " +
                          std::to_string(alpha));
    }
}

namespace detail {

std::uint64_t first_index_below(double alpha, std::uint64_t k_start, double log_threshold) {
    std::uint64_t k = k_start;
    if (k <= kSequentialLimit) {
        const double bound = std::exp(log_threshold);
        double s = std::abs(gl_partial_sum(alpha, k));
        for (;;) {
            if (s < bound) return k;
            if (k == kSequentialLimit) break;
            ++k;
            const double kd = static_cast<double>(k);
            s *= std::abs(kd - alpha) / kd;
        }
    } else if (log_abs_gl_partial_sum(alpha, k) < log_threshold) {
        return k;
    }

    // Invariant: ln|S_lo| >= threshold. Gallop until ln|S_hi| < threshold.
    std::uint64_t lo = k;
    std::uint64_t step = 1;
    std::uint64_t hi = lo + step;
    while (!(log_abs_gl_partial_sum(alpha, hi) < log_threshold)) {
        if (hi >= kIndexCeiling) return kIndexCeiling;
        lo = hi;
        step *= 2;
        hi = std::min(lo + step, kIndexCeiling);
    }
    while (hi - lo > 1) {
        const std::uint64_t mid = lo + (hi - lo) / 2;
        if (log_abs_gl_partial_sum(alpha, mid) < log_threshold) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return hi;
}

}  // namespace detail

std::uint64_t sibuya_quantile(double alpha, double u) {
    validate_sibuya_alpha(alpha);
    // u < F_k = 1 - S_k  <=>  S_k < 1 - u.
    return detail::first_index_below(alpha, 1, std::log1p(-u));
}

std::uint64_t sibuya_conditional_quantile(double alpha, std::uint64_t after, double u) {
    validate_sibuya_alpha(alpha);
    // P(Y > k | Y > after) = S_k / S_after.
    const double threshold = std::log1p(-u) + log_abs_gl_partial_sum(alpha, after);
    return detail::first_index_below(alpha, after + 1, threshold);
}

std::uint64_t geometric_quantile(double p, double u) {
    if (!(p > 0.0 && p <= 1.0)) throw DomainError("geometric: p must lie in (0, 1]");
    if (p == 1.0) return 1;
    const double x = std::ceil(std::log(u) / std::log1p(-p));
    if (!(x < static_cast<double>(kIndexCeiling))) return kIndexCeiling;
    return x < 1.0 ? 1 : static_cast<std::uint64_t>(x);
}

std::uint64_t sieved_quantile(const WeightPartition& part, Sign sign, double u) {
    const IndexSet& set = part.set(sign);
    if (set.empty()) {
        throw DomainError("sieved sampler: the " + std::string(to_string(sign)) +
                          " branch is empty");
    }
    const double alpha = part.order.value();
    const double mass = part.mass(sign);

    double cumulative = 0.0;
    for (const auto k : set.head()) {
        cumulative += weight_at(alpha, k) / mass;
        if (u < cumulative) return k;
    }
    if (!set.is_infinite()) return set.head().back();

    // From ceil(alpha) - 1 on, P(Y > k) = -S_k / W, since the weights beyond
    // k sum to -S_k and all belong to this branch.
    const double threshold = std::log1p(-u) + std::log(std::abs(mass));
    return detail::first_index_below(alpha, *set.tail_from(), threshold);
}

double continuous_sibuya_quantile(double alpha, double v) {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) {
        throw DomainError("continuous Sibuya: alpha must be positive");
    }
    return -std::expm1(std::log(v) / alpha);
}

double arcsine_from_uniform(double u) {
    const double s = std::sin(0.5 * std::numbers::pi * u);
    return s * s;
}

}  // namespace fracmc
