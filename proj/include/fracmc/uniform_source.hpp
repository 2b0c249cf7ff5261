#pragma once

#include <concepts>
#include <cstdint>
#include <random>
#include <vector>

namespace fracmc {

/// Anything that hands out uniform variates in the open interval (0, 1).
template <class S>
concept UniformRandomSource = requires(S& s) {
    { s.next() } -> std::convertible_to<double>;
};

/// Seeded uniform stream on (0, 1).
///
/// A stream is identified by a key path: the seed, the stream index, and any
/// lanes added with fork(). The key is fed through std::seed_seq into a
/// 64-bit Mersenne twister, so every path gives its own deterministic
/// sequence and sibling streams never overlap by construction. A source is
/// single-owner; give each worker its own.
class UniformSource {
public:
    explicit UniformSource(std::uint64_t seed, std::uint64_t stream = 0);

    /// Next variate, strictly inside (0, 1): (m + 1/2) 2^-53 for a 53-bit m.
    double next() {
        const std::uint64_t bits = engine_() >> 11;
        return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
    }

    /// Child stream keyed by this stream's path plus `lane`. Does not
    /// consume anything from this stream.
    UniformSource fork(std::uint64_t lane) const;

    std::uint64_t seed() const { return seed_; }

private:
    UniformSource(std::uint64_t seed, std::vector<std::uint32_t> key);

    std::uint64_t seed_;
    std::vector<std::uint32_t> key_;
    std::mt19937_64 engine_;
};

}  // namespace fracmc
