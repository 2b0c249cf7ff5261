#include "fracmc/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <thread>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "fracmc/errors.hpp"
#include "fracmc/samplers.hpp"
#include "fracmc/special_functions.hpp"

namespace fracmc {
namespace {

constexpr std::uint64_t kPlusLane = 1;
constexpr std::uint64_t kMinusLane = 2;

void require_positive(double value, const char* what) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw DomainError(std::string(what) + " must be positive and finite");
    }
}

// Grid nodes t - k h with k < this many are memoized per estimate.
constexpr double kNodeCacheLimit = 1 << 20;

double mean_shifted(const Evaluand& f, const WeightPartition& part, Sign sign, double t,
                    double h, double ft, std::size_t n, UniformSource& src) {
    // Only nodes with t - k h >= 0 carry non-trivial values, and there are
    // few of them compared with n; evaluate each at most once.
    std::vector<double> nodes;
    if (t / h < kNodeCacheLimit) {
        nodes.assign(static_cast<std::size_t>(t / h) + 1, std::numeric_limits<double>::quiet_NaN());
    }
    long double sum = 0.0L;
    for (std::size_t i = 0; i < n; ++i) {
        const auto y = sample_sieved(part, sign, src);
        const double x = t - static_cast<double>(y) * h;
        double fx;
        if (y < nodes.size()) {
            if (std::isnan(nodes[y])) nodes[y] = f(x);
            fx = nodes[y];
        } else {
            fx = f(x);
        }
        sum += fx - ft;
    }
    return static_cast<double>(sum / static_cast<long double>(n));
}

}  // namespace

Evaluand::Evaluand(std::string name, std::function<double(double)> fn, Extension extension)
    : name_(std::move(name)), fn_(std::move(fn)), extension_(extension) {}

void EstimatorConfig::validate() const {
    require_positive(h, "h");
    if (n_samples < 1) throw DomainError("n_samples must be >= 1");
    if (n_trials < 1) throw DomainError("n_trials must be >= 1");
}

TrialSummary summarize(std::vector<double> values) {
    if (values.size() < 2) {
        throw DomainError("summarize: at least two trials are needed for a standard error");
    }
    TrialSummary s;
    const double k = static_cast<double>(values.size());
    long double total = 0.0L;
    for (double v : values) total += v;
    s.mean = static_cast<double>(total / values.size());

    long double m2 = 0.0L, m4 = 0.0L;
    for (double v : values) {
        const long double d = v - s.mean;
        m2 += d * d;
        m4 += d * d * d * d;
    }
    s.std_error = std::sqrt(static_cast<double>(m2) / (k - 1.0) / k);
    s.ci_low = s.mean - 1.96 * s.std_error;
    s.ci_high = s.mean + 1.96 * s.std_error;
    if (m2 > 0.0L) s.kurtosis = static_cast<double>(k * m4 / (m2 * m2));
    s.heavy_tailed = s.kurtosis > kKurtosisLimit;

    std::vector<double> sorted = values;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t mid = sorted.size() / 2;
    s.median = sorted.size() % 2 == 1 ? sorted[mid] : 0.5 * (sorted[mid - 1] + sorted[mid]);
    s.trial_values = std::move(values);
    return s;
}

double gl_deterministic(const Evaluand& f, double alpha, double t, double h) {
    require_positive(alpha, "alpha");
    require_positive(t, "t");
    require_positive(h, "h");
    if (!f.zero_extended()) {
        throw DomainError("gl_deterministic: the evaluand must be zero-extended");
    }
    long double w = 1.0L;
    long double sum = 0.0L;
    for (std::uint64_t k = 0;; ++k) {
        const double x = t - static_cast<double>(k) * h;
        if (x < 0.0) break;
        if (k > 0) {
            const long double kd = static_cast<long double>(k);
            w = w * (kd - 1.0L - alpha) / kd;
        }
        sum += w * static_cast<long double>(f(x));
    }
    return static_cast<double>(sum) * std::pow(h, -alpha);
}

double gl_mc_estimate(const Evaluand& f, const WeightPartition& part, double t, double h,
                      std::size_t n_samples, UniformSource& src) {
    require_positive(h, "h");
    if (n_samples < 1) throw DomainError("n_samples must be >= 1");
    const double ft = f(t);
    double acc = 0.0;
    if (part.singleton_pos) {
        acc += part.singleton_pos->weight *
               (f(t - static_cast<double>(part.singleton_pos->index) * h) - ft);
    }
    if (part.singleton_neg) {
        acc += part.singleton_neg->weight *
               (f(t - static_cast<double>(part.singleton_neg->index) * h) - ft);
    }
    if (!part.positive.empty()) {
        auto plus = src.fork(kPlusLane);
        acc += part.w_plus * mean_shifted(f, part, Sign::positive, t, h, ft, n_samples, plus);
    }
    if (!part.negative.empty()) {
        auto minus = src.fork(kMinusLane);
        acc += part.w_minus * mean_shifted(f, part, Sign::negative, t, h, ft, n_samples, minus);
    }
    return acc * std::pow(h, -part.order.value());
}

double gl_mc_estimate(const Evaluand& f, double alpha, double t, const EstimatorConfig& cfg,
                      UniformSource& src) {
    cfg.validate();
    const FractionalOrder order(alpha);
    if (order.is_integer()) {
        throw DomainError("gl_mc_estimate: integer order; use gl_deterministic");
    }
    return gl_mc_estimate(f, partition(order), t, cfg.h, cfg.n_samples, src);
}

double rl_integral_mc_estimate(const Evaluand& f, double alpha, double t, std::size_t n_samples,
                               UniformSource& src) {
    require_positive(alpha, "alpha");
    require_positive(t, "t");
    if (n_samples < 1) throw DomainError("n_samples must be >= 1");
    long double sum = 0.0L;
    for (std::size_t i = 0; i < n_samples; ++i) {
        const double x = t * sample_continuous_sibuya(alpha, src);
        const double v = f(x);
        if (!std::isfinite(v)) {
            throw NonFiniteError("rl_integral_mc_estimate: " + f.name() +
                                 " is not finite at " + std::to_string(x));
        }
        sum += v;
    }
    const double mean = static_cast<double>(sum / static_cast<long double>(n_samples));
    return std::pow(t, alpha) * reciprocal_gamma(alpha + 1.0) * mean;
}

double rl_integral_mc_estimate(const Evaluand& f, double alpha, double t,
                               const EstimatorConfig& cfg, UniformSource& src) {
    cfg.validate();
    return rl_integral_mc_estimate(f, alpha, t, cfg.n_samples, src);
}

double rl_integral_quadrature(const Evaluand& f, double alpha, double t, double tolerance) {
    require_positive(alpha, "alpha");
    require_positive(t, "t");
    require_positive(tolerance, "tolerance");
    // The second argument is the signed distance to the nearer endpoint:
    // negative near 0, positive (and exactly t - s) near t.
    auto integrand = [&](double s, double complement) {
        const double gap = complement > 0.0 ? complement : t - s;
        return f(s) * std::pow(gap, alpha - 1.0);
    };
    boost::math::quadrature::tanh_sinh<double> integrator;
    double error = 0.0;
    double l1 = 0.0;
    double value = 0.0;
    try {
        value = integrator.integrate(integrand, 0.0, t, tolerance, &error, &l1);
    } catch (const std::exception& e) {
        throw ConvergenceError(std::string("rl_integral_quadrature: ") + e.what());
    }
    if (!std::isfinite(value) || error > tolerance * l1) {
        throw ConvergenceError("rl_integral_quadrature: tolerance not reached for " + f.name());
    }
    return value * reciprocal_gamma(alpha);
}

TrialSummary run_trials(const TrialFunction& one_trial, std::size_t n_trials, std::uint64_t seed,
                        unsigned threads) {
    if (n_trials < 2) throw DomainError("run_trials: at least two trials are required");
    std::vector<double> values(n_trials);
    auto run_one = [&](std::size_t i) {
        UniformSource src(seed, i);
        values[i] = one_trial(src);
    };

    unsigned workers = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, n_trials));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n_trials; ++i) run_one(i);
        return summarize(std::move(values));
    }

    // Each worker takes a strided slice; the first failing trial index wins
    // so errors are reported the same way as in a serial run.
    std::vector<std::exception_ptr> errors(n_trials);
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (std::size_t i = w; i < n_trials; i += workers) {
                    try {
                        run_one(i);
                    } catch (...) {
                        errors[i] = std::current_exception();
                        return;
                    }
                }
            });
        }
    }
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return summarize(std::move(values));
}

TrialSummary gl_mc_trials(const Evaluand& f, double alpha, double t, const EstimatorConfig& cfg) {
    cfg.validate();
    const FractionalOrder order(alpha);
    if (order.is_integer()) {
        throw DomainError("gl_mc_trials: integer order; use gl_deterministic");
    }
    const WeightPartition part = partition(order);
    return run_trials(
        [&](UniformSource& src) { return gl_mc_estimate(f, part, t, cfg.h, cfg.n_samples, src); },
        cfg.n_trials, cfg.seed, cfg.threads);
}

TrialSummary rl_integral_mc_trials(const Evaluand& f, double alpha, double t,
                                   const EstimatorConfig& cfg) {
    cfg.validate();
    return run_trials(
        [&](UniformSource& src) { return rl_integral_mc_estimate(f, alpha, t, cfg.n_samples, src); },
        cfg.n_trials, cfg.seed, cfg.threads);
}

}  // namespace fracmc
