#include "fracmc/gl_weights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "fracmc/errors.hpp"
#include "fracmc/special_functions.hpp"

namespace fracmc {
namespace {

#if defined(__SIZEOF_FLOAT128__)
using Extended = __float128;
#else
using Extended = long double;
#endif

// Up to this index partial sums are plain products; beyond it they come from
// the Gamma-ratio form.
constexpr std::uint64_t kDirectProductLimit = 64;

double direct_partial_sum(double alpha, std::uint64_t n) {
    double s = 1.0;
    for (std::uint64_t j = 1; j <= n; ++j) {
        const double jd = static_cast<double>(j);
        s *= (jd - alpha) / jd;
    }
    return s;
}

bool is_integer_order(double alpha) { return alpha == std::floor(alpha); }

// Number of factors (j - alpha) with j <= n that are negative.
std::uint64_t negative_factor_count(double alpha, std::uint64_t n) {
    const double below = std::ceil(alpha) - 1.0;  // j < alpha  <=>  j <= ceil(alpha) - 1
    return std::min<std::uint64_t>(n, static_cast<std::uint64_t>(std::max(below, 0.0)));
}

}  // namespace

FractionalOrder::FractionalOrder(double alpha) : alpha_(alpha) {
    if (!std::isfinite(alpha) || !(alpha > 0.0) || !(alpha < 5.0)) {
        throw DomainError("fractional order must satisfy 0 < alpha < 5, got " +
                          std::to_string(alpha));
    }
    is_integer_ = is_integer_order(alpha);
    regime_ = static_cast<int>(std::ceil(alpha));
}

WeightSequence weights(FractionalOrder order, std::size_t k_max) {
    if (k_max < 1) throw DomainError("weights: k_max must be >= 1");
    const double alpha = order.value();
    WeightSequence seq{order, {}, {}};
    seq.w.resize(k_max + 1);
    seq.partial.resize(k_max + 1);

    seq.w[0] = 1.0;
    seq.partial[0] = 1.0;
    const Extended alpha_x = alpha;
    Extended wx = 1;
    Extended sx = 1;
    for (std::size_t k = 1; k <= k_max; ++k) {
        const double kd = static_cast<double>(k);
        seq.w[k] = seq.w[k - 1] * (kd - 1.0 - alpha) / kd;
        const Extended kx = static_cast<Extended>(k);
        wx = wx * (kx - 1 - alpha_x) / kx;
        sx += wx;
        seq.partial[k] = static_cast<double>(sx);
    }
    return seq;
}

double log_abs_gl_partial_sum(double alpha, std::uint64_t n) {
    if (is_integer_order(alpha) && static_cast<double>(n) >= alpha) {
        return -std::numeric_limits<double>::infinity();
    }
    if (n <= kDirectProductLimit) return std::log(std::abs(direct_partial_sum(alpha, n)));
    const double base = std::log(std::abs(direct_partial_sum(alpha, kDirectProductLimit)));
    const double x0 = static_cast<double>(kDirectProductLimit + 1);
    const double x1 = static_cast<double>(n) + 1.0;
    // prod_{j=n0+1..n} (j - alpha)/j = Gamma(n+1-alpha) Gamma(n0+1) / (Gamma(n+1) Gamma(n0+1-alpha))
    return base + log_gamma_ratio(x1, -alpha) - log_gamma_ratio(x0, -alpha);
}

double gl_partial_sum(double alpha, std::uint64_t n) {
    if (n <= kDirectProductLimit) return direct_partial_sum(alpha, n);
    const double magnitude = std::exp(log_abs_gl_partial_sum(alpha, n));
    return negative_factor_count(alpha, n) % 2 == 0 ? magnitude : -magnitude;
}

double weight_at(double alpha, std::uint64_t k) {
    if (k == 0) return 1.0;
    return -alpha / static_cast<double>(k) * gl_partial_sum(alpha, k - 1);
}

std::string_view to_string(Sign sign) {
    return sign == Sign::positive ? "positive" : "negative";
}

IndexSet::IndexSet(std::vector<std::uint64_t> head, std::optional<std::uint64_t> tail_from)
    : head_(std::move(head)), tail_from_(tail_from) {
    std::sort(head_.begin(), head_.end());
}

bool IndexSet::contains(std::uint64_t k) const {
    if (tail_from_ && k >= *tail_from_) return true;
    return std::binary_search(head_.begin(), head_.end(), k);
}

WeightPartition partition(FractionalOrder order) {
    if (order.is_integer()) {
        throw DomainError("partition: order must be non-integer, got " +
                          std::to_string(order.value()));
    }
    const double alpha = order.value();
    const auto m = static_cast<std::uint64_t>(order.regime());

    // Exact head weights w_1..w_{m-1}; they alternate in sign.
    std::vector<double> head_w(m, 0.0);
    double w = 1.0;
    double head_total = 0.0;
    std::vector<std::uint64_t> pos_head, neg_head;
    for (std::uint64_t k = 1; k < m; ++k) {
        const double kd = static_cast<double>(k);
        w = w * (kd - 1.0 - alpha) / kd;
        head_w[k] = w;
        head_total += w;
        (w > 0.0 ? pos_head : neg_head).push_back(k);
    }

    const bool tail_positive = (m % 2) == 0;
    WeightPartition part{order, {}, {}, std::nullopt, std::nullopt, 0.0, 0.0};

    auto finite_mass = [&](const std::vector<std::uint64_t>& idx) {
        double s = 0.0;
        for (auto k : idx) s += head_w[k];
        return s;
    };

    auto build = [&](std::vector<std::uint64_t> head, bool holds_tail, IndexSet& set,
                     std::optional<Singleton>& singleton, double& mass) {
        if (!holds_tail && head.size() == 1) {
            singleton = Singleton{head.front(), head_w[head.front()]};
            return;
        }
        if (holds_tail) {
            // Everything not in the finite head of the other class.
            mass = -1.0 - head_total + finite_mass(head);
            set = IndexSet(std::move(head), m);
        } else {
            mass = finite_mass(head);
            set = IndexSet(std::move(head), std::nullopt);
        }
    };

    build(pos_head, tail_positive, part.positive, part.singleton_pos, part.w_plus);
    build(neg_head, !tail_positive, part.negative, part.singleton_neg, part.w_minus);
    return part;
}

double sieved_pmf(const WeightPartition& part, Sign sign, std::uint64_t k) {
    const IndexSet& set = part.set(sign);
    if (set.empty()) {
        throw DomainError("sieved_pmf: the " + std::string(to_string(sign)) +
                          " branch is empty");
    }
    if (!set.contains(k)) {
        throw DomainError("sieved_pmf: index " + std::to_string(k) + " is not in the " +
                          std::string(to_string(sign)) + " branch");
    }
    return weight_at(part.order.value(), k) / part.mass(sign);
}

Membership membership(const WeightPartition& part, std::uint64_t k) {
    if (part.singleton_pos && part.singleton_pos->index == k) return Membership::singleton_positive;
    if (part.singleton_neg && part.singleton_neg->index == k) return Membership::singleton_negative;
    if (part.positive.contains(k)) return Membership::positive;
    if (part.negative.contains(k)) return Membership::negative;
    return Membership::none;
}

std::string_view to_string(Membership m) {
    switch (m) {
        case Membership::positive: return "pos";
        case Membership::negative: return "neg";
        case Membership::singleton_positive: return "singleton_pos";
        case Membership::singleton_negative: return "singleton_neg";
        case Membership::none: break;
    }
    return "none";
}

}  // namespace fracmc
