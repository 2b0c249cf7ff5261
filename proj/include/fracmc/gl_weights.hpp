#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace fracmc {

/// Order of a Grunwald-Letnikov derivative: 0 < alpha < 5, either
/// non-integer or one of 1, 2, 3, 4.
class FractionalOrder {
public:
    explicit FractionalOrder(double alpha);

    double value() const { return alpha_; }
    /// ceil(alpha); for integer orders this is alpha itself.
    int regime() const { return regime_; }
    bool is_integer() const { return is_integer_; }

private:
    double alpha_;
    int regime_;
    bool is_integer_;
};

/// w_0..w_kmax of (1 - s)^alpha = sum w_k s^k.
struct WeightSequence {
    FractionalOrder order;
    /// w[k] = w[k-1] * (k - 1 - alpha) / k, evaluated in double.
    std::vector<double> w;
    /// partial[n] = w_0 + ... + w_n. Accumulated in extended precision: the
    /// alternating head cancels down to O(n^-alpha), far below the rounding
    /// error of summing the double weights.
    std::vector<double> partial;
};

WeightSequence weights(FractionalOrder order, std::size_t k_max);

/// S_n = w_0 + ... + w_n = prod_{j=1..n} (j - alpha) / j, in O(1) for large n.
double gl_partial_sum(double alpha, std::uint64_t n);

/// ln |S_n|; -inf when S_n is exactly zero (integer alpha, n >= alpha).
double log_abs_gl_partial_sum(double alpha, std::uint64_t n);

/// w_k in O(1) for large k, via w_k = -alpha S_{k-1} / k.
double weight_at(double alpha, std::uint64_t k);

enum class Sign { positive, negative };

std::string_view to_string(Sign sign);

/// A set of positive indices: a finite sorted head, optionally followed by
/// every index from tail_from on.
class IndexSet {
public:
    IndexSet() = default;
    IndexSet(std::vector<std::uint64_t> head, std::optional<std::uint64_t> tail_from);

    bool empty() const { return head_.empty() && !tail_from_; }
    bool is_infinite() const { return tail_from_.has_value(); }
    bool contains(std::uint64_t k) const;

    std::span<const std::uint64_t> head() const { return head_; }
    std::optional<std::uint64_t> tail_from() const { return tail_from_; }

private:
    std::vector<std::uint64_t> head_;
    std::optional<std::uint64_t> tail_from_;
};

struct Singleton {
    std::uint64_t index;
    double weight;
};

/// Sign split of w_1, w_2, ... for a non-integer order.
///
/// Indices with a positive weight form I+ and those with a negative weight
/// I-. A sign class with exactly one member is kept apart as a singleton
/// (k* for positive, k_* for negative) and its set is left empty, so each
/// non-empty set has at least two members.
struct WeightPartition {
    FractionalOrder order;
    IndexSet positive;
    IndexSet negative;
    std::optional<Singleton> singleton_pos;
    std::optional<Singleton> singleton_neg;
    double w_plus = 0.0;   // sum of w_k over I+
    double w_minus = 0.0;  // sum of w_k over I-

    const IndexSet& set(Sign sign) const {
        return sign == Sign::positive ? positive : negative;
    }
    double mass(Sign sign) const { return sign == Sign::positive ? w_plus : w_minus; }
};

/// Builds the partition for 0 < alpha < 5, alpha non-integer.
///
/// For k < ceil(alpha) the weights alternate in sign starting negative; from
/// ceil(alpha) on they all carry the sign (-1)^ceil(alpha). The mass of the
/// finite set is its exact finite sum; the mass of the set holding the tail
/// follows from sum_{k>=1} w_k = -1. Throws DomainError for integer orders.
WeightPartition partition(FractionalOrder order);

/// w_k / W for k in the chosen set. DomainError if the set is empty or does
/// not contain k.
double sieved_pmf(const WeightPartition& part, Sign sign, std::uint64_t k);

/// Membership tag used by the weights table.
enum class Membership { positive, negative, singleton_positive, singleton_negative, none };

Membership membership(const WeightPartition& part, std::uint64_t k);

std::string_view to_string(Membership m);

}  // namespace fracmc
