#pragma once

// Shared test helpers: a scripted uniform source and reference values
// computed independently of the library (long double, std::lgammal, plain
// products).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>

namespace testing_support {

/// Replays a fixed list of uniforms; running out is a test bug.
struct ScriptedSource {
    std::vector<double> values;
    std::size_t used = 0;

    double next() {
        if (used >= values.size()) throw std::out_of_range("scripted source exhausted");
        return values[used++];
    }
};

/// prod_{j=1..n} (j - alpha) / j via log-gamma in long double, for
/// non-integer alpha.
/// Far out (n > 1e6) the lgammal difference loses digits, so Boost's
/// Gamma(z) / Gamma(z + delta) takes over.
inline long double partial_sum_oracle(double alpha, std::uint64_t n) {
    const long double a = alpha;
    const long double nn = static_cast<long double>(n);
    long double magnitude;
    if (n <= 1'000'000) {
        magnitude = std::exp(std::lgammal(nn + 1.0L - a) - std::lgammal(1.0L - a) -
                             std::lgammal(nn + 1.0L));
    } else {
        magnitude = boost::math::tgamma_delta_ratio(nn + 1.0L - a, a) /
                    std::fabs(boost::math::tgamma(1.0L - a));
    }
    const std::uint64_t negatives = std::min<std::uint64_t>(n, static_cast<std::uint64_t>(alpha));
    return (negatives % 2 == 0 ? 1.0L : -1.0L) * magnitude;
}

/// Sibuya pmf p_1..p_kmax by p_{k+1} = p_k (k - alpha) / (k + 1).
inline std::vector<double> sibuya_pmf(double alpha, std::size_t kmax) {
    std::vector<double> p(kmax + 1, 0.0);
    long double pk = alpha;
    for (std::size_t k = 1; k <= kmax; ++k) {
        p[k] = static_cast<double>(pk);
        pk = pk * (static_cast<long double>(k) - alpha) / static_cast<long double>(k + 1);
    }
    return p;
}

/// P(Y > k) = Gamma(k + 1 - alpha) / (Gamma(k + 1) Gamma(1 - alpha)).
inline double sibuya_tail(double alpha, std::uint64_t k) {
    const long double kk = static_cast<long double>(k);
    return static_cast<double>(
        std::exp(std::lgammal(kk + 1.0L - alpha) - std::lgammal(kk + 1.0L) -
                 std::lgammal(1.0L - static_cast<long double>(alpha))));
}

/// E_{delta,beta}(z) summed in long double with std::tgammal; for moderate |z|.
inline double ml_oracle(double delta, double beta, double z) {
    long double sum = 0.0L;
    long double zk = 1.0L;
    for (int k = 0; k < 400; ++k) {
        const long double arg = static_cast<long double>(delta) * k + beta;
        const bool pole = arg <= 0.0L && arg == std::floor(arg);
        if (!pole) sum += zk / std::tgammal(arg);
        zk *= z;
        if (std::fabs(zk) < 1e-300L && k > 10) break;
    }
    return static_cast<double>(sum);
}

inline bool close_rel(double a, double b, double rel) {
    return std::fabs(a - b) <= rel * std::fabs(b);
}

}  // namespace testing_support
