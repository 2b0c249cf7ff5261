#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "fracmc/gl_weights.hpp"
#include "fracmc/uniform_source.hpp"

namespace fracmc {

/// A real function handed to the estimators.
///
/// By default the function is extended by zero to negative arguments, which
/// puts the lower terminal of the operators at 0 and makes the GL sums
/// finite. `whole_line` evaluands are used as given everywhere (a truly
/// constant function, for instance).
class Evaluand {
public:
    enum class Extension { zero_for_negative, whole_line };

    Evaluand(std::string name, std::function<double(double)> fn,
             Extension extension = Extension::zero_for_negative);

    double operator()(double t) const {
        if (extension_ == Extension::zero_for_negative && t < 0.0) return 0.0;
        return fn_(t);
    }

    const std::string& name() const { return name_; }
    bool zero_extended() const { return extension_ == Extension::zero_for_negative; }

private:
    std::string name_;
    std::function<double(double)> fn_;
    Extension extension_;
};

inline constexpr std::uint64_t kDefaultSeed = 20240611;

struct EstimatorConfig {
    double h = 0.01;               // GL step
    std::size_t n_samples = 10'000;  // N, draws inside one trial
    std::size_t n_trials = 100;      // K
    std::uint64_t seed = kDefaultSeed;
    unsigned threads = 1;          // 0 = hardware concurrency

    void validate() const;
};

/// Trials whose raw sample kurtosis m4/m2^2 exceeds this are flagged as
/// showing no sign of a finite variance. The sample kurtosis of K values
/// cannot exceed about K - 2, so the check only bites for K > 102.
inline constexpr double kKurtosisLimit = 100.0;

struct TrialSummary {
    std::vector<double> trial_values;
    double mean = 0.0;
    double std_error = 0.0;  // sample std / sqrt(K)
    double ci_low = 0.0;     // mean -/+ 1.96 std_error
    double ci_high = 0.0;
    double median = 0.0;
    double kurtosis = 0.0;
    bool heavy_tailed = false;
};

/// Mean, standard error, normal 95% interval, median and kurtosis of the
/// values. Needs at least two values.
TrialSummary summarize(std::vector<double> values);

/// h^-alpha sum_{k >= 0} w_k f(t - k h), summed while t - k h >= 0.
///
/// Any alpha > 0 is accepted; for integer alpha this is the ordinary
/// backward difference quotient. Needs a zero-extended evaluand.
double gl_deterministic(const Evaluand& f, double alpha, double t, double h);

/// One trial of the signed-mixture GL estimator, N draws per branch:
///
///   h^-alpha [ f(t) + w_k* f(t - k* h) + w_k_* f(t - k_* h)
///              + W+ mean f(t - Y+ h) + W- mean f(t - Y- h) ].
///
/// Because 1 + W+ + W- + w_k* + w_k_* = 0 it is evaluated with every
/// f(.) replaced by f(.) - f(t), which leaves the value unchanged and makes
/// it vanish exactly for constant f. Y+ is drawn from src.fork(1), Y- from
/// src.fork(2).
double gl_mc_estimate(const Evaluand& f, const WeightPartition& part, double t, double h,
                      std::size_t n_samples, UniformSource& src);

/// As above, building the partition for alpha. DomainError for integer alpha.
double gl_mc_estimate(const Evaluand& f, double alpha, double t, const EstimatorConfig& cfg,
                      UniformSource& src);

/// One trial of t^alpha / Gamma(alpha + 1) * mean f(t X), X continuous
/// Sibuya. NonFiniteError if f is non-finite at a sampled point.
double rl_integral_mc_estimate(const Evaluand& f, double alpha, double t, std::size_t n_samples,
                               UniformSource& src);

double rl_integral_mc_estimate(const Evaluand& f, double alpha, double t,
                               const EstimatorConfig& cfg, UniformSource& src);

/// (1/Gamma(alpha)) int_0^t f(s) (t - s)^(alpha-1) ds by tanh-sinh
/// quadrature, whose double-exponential change of variables absorbs the
/// endpoint singularities. Throws ConvergenceError if the error estimate
/// stays above tolerance times the L1 norm.
double rl_integral_quadrature(const Evaluand& f, double alpha, double t,
                              double tolerance = 1e-10);

using TrialFunction = std::function<double(UniformSource&)>;

/// Runs K trials, trial i on UniformSource(seed, i), and summarizes them in
/// trial order. With threads != 1 trials are spread over worker threads;
/// the result is identical to the serial run.
TrialSummary run_trials(const TrialFunction& one_trial, std::size_t n_trials, std::uint64_t seed,
                        unsigned threads = 1);

TrialSummary gl_mc_trials(const Evaluand& f, double alpha, double t, const EstimatorConfig& cfg);

TrialSummary rl_integral_mc_trials(const Evaluand& f, double alpha, double t,
                                   const EstimatorConfig& cfg);

}  // namespace fracmc
