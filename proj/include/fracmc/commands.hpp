#pragma once

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "fracmc/estimators.hpp"
#include "fracmc/samplers.hpp"

namespace fracmc::cli {

/// Round-trip formatting used for every real in CSV output (%.17g).
std::string format_real(double value);

/// t_start, t_start + t_step, ... up to t_end (inclusive, with a relative
/// slack of 1e-12 for the accumulated step).
struct GridSpec {
    double t_start = 1.0;
    double t_end = 1.0;
    double t_step = 1.0;

    std::vector<double> points() const;
};

struct SampleOptions {
    double alpha = 0.5;
    SibuyaMethod method = SibuyaMethod::inverse_cdf;
    std::size_t n = 1000;
    std::size_t draws = 100;
    std::uint64_t seed = kDefaultSeed;
};

struct CompareOptions {
    double alpha = 0.5;
    std::size_t n = 1000;
    std::size_t draws = 100;
    std::uint64_t seed = kDefaultSeed;
};

struct WeightsOptions {
    double alpha = 0.5;
    std::size_t kmax = 20;
};

struct EstimateOptions {
    double alpha = 0.5;
    std::string func = "example2";
    GridSpec grid;
    EstimatorConfig cfg;
};

/// Each command writes CSV (header first) to `out`. Invalid options raise
/// DomainError, numerical failures NumericalError.

/// `draw,index,value`; draw d (1-based) uses stream d - 1 of the seed.
void cmd_sample(const SampleOptions& opt, std::ostream& out);

/// `index,method1,method2,method3`: sorted-average profiles, method m on
/// stream m of the seed.
void cmd_compare(const CompareOptions& opt, std::ostream& out);

/// `k,w_k,set` for k = 1..kmax.
void cmd_weights(const WeightsOptions& opt, std::ostream& out);

/// `t,estimate,ci_low,ci_high,exact`, one row per grid point; integer
/// orders use the exact finite difference. Optional per-trial rows
/// `t,trial,estimate` go to `trials`. Every grid point reuses the same trial
/// streams. Warnings (heavy-tailed trials) go to `diagnostics`.
void cmd_deriv(const EstimateOptions& opt, std::ostream& out, std::ostream* trials,
               std::ostream& diagnostics);

/// Same shape for the Riemann-Liouville integral.
void cmd_integ(const EstimateOptions& opt, std::ostream& out, std::ostream* trials,
               std::ostream& diagnostics);

}  // namespace fracmc::cli
