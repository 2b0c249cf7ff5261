#include "fracmc/commands.hpp"

#include <cmath>
#include <cstdio>

#include "fracmc/errors.hpp"
#include "fracmc/functions.hpp"
#include "fracmc/gl_weights.hpp"

namespace fracmc::cli {
namespace {

void require_count(std::size_t value, const char* flag) {
    if (value < 1) throw DomainError(std::string(flag) + " must be >= 1");
}

TestFunction checked_function(const EstimateOptions& opt) {
    TestFunction f = lookup(opt.func);
    if (!f.valid_order.contains(opt.alpha)) {
        throw DomainError("--alpha " + format_real(opt.alpha) + " is outside the range where " +
                          opt.func + " is defined");
    }
    return f;
}

std::string exact_field(const TestFunction::OrderMap& exact, double alpha, double t) {
    return exact ? format_real(exact(alpha, t)) : std::string();
}

void write_trials(std::ostream* trials, double t, const TrialSummary& s) {
    if (!trials) return;
    for (std::size_t i = 0; i < s.trial_values.size(); ++i) {
        *trials << format_real(t) << ',' << i << ',' << format_real(s.trial_values[i]) << '\n';
    }
}

void write_row(std::ostream& out, double t, double estimate, double lo, double hi,
               const std::string& exact) {
    out << format_real(t) << ',' << format_real(estimate) << ',' << format_real(lo) << ','
        << format_real(hi) << ',' << exact << '\n';
}

}  // namespace

std::string format_real(double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

std::vector<double> GridSpec::points() const {
    if (!(t_start > 0.0) || !std::isfinite(t_start)) throw DomainError("--t-start must be positive");
    if (!(t_end >= t_start) || !std::isfinite(t_end)) {
        throw DomainError("--t-end must be >= --t-start");
    }
    if (!(t_step > 0.0)) throw DomainError("--t-step must be positive");
    std::vector<double> grid;
    const double limit = t_end * (1.0 + 1e-12);
    for (std::size_t i = 0;; ++i) {
        const double t = t_start + static_cast<double>(i) * t_step;
        if (t > limit) break;
        grid.push_back(std::min(t, t_end));
    }
    return grid;
}

void cmd_sample(const SampleOptions& opt, std::ostream& out) {
    validate_sibuya_alpha(opt.alpha);
    require_count(opt.n, "--n");
    require_count(opt.draws, "--draws");
    const SibuyaSpec spec{opt.alpha, opt.method};
    out << "draw,index,value\n";
    std::string row;
    for (std::size_t d = 0; d < opt.draws; ++d) {
        UniformSource src(opt.seed, d);
        for (std::size_t i = 0; i < opt.n; ++i) {
            row = std::to_string(d + 1) + ',' + std::to_string(i + 1) + ',' +
                  std::to_string(sample_sibuya(spec, src)) + '\n';
            out << row;
        }
    }
}

void cmd_compare(const CompareOptions& opt, std::ostream& out) {
    validate_sibuya_alpha(opt.alpha);
    require_count(opt.n, "--n");
    require_count(opt.draws, "--draws");
    std::vector<std::vector<double>> columns;
    for (auto method : {SibuyaMethod::inverse_cdf, SibuyaMethod::bernoulli,
                        SibuyaMethod::beta_geometric}) {
        UniformSource src(opt.seed, static_cast<std::uint64_t>(method));
        columns.push_back(
            sorted_average_profile(SibuyaSpec{opt.alpha, method}, opt.n, opt.draws, src).mean);
    }
    out << "index,method1,method2,method3\n";
    for (std::size_t i = 0; i < opt.n; ++i) {
        out << (i + 1) << ',' << format_real(columns[0][i]) << ',' << format_real(columns[1][i])
            << ',' << format_real(columns[2][i]) << '\n';
    }
}

void cmd_weights(const WeightsOptions& opt, std::ostream& out) {
    require_count(opt.kmax, "--kmax");
    const FractionalOrder order(opt.alpha);
    const WeightPartition part = partition(order);
    const WeightSequence seq = weights(order, opt.kmax);
    out << "k,w_k,set\n";
    for (std::size_t k = 1; k <= opt.kmax; ++k) {
        out << k << ',' << format_real(seq.w[k]) << ',' << to_string(membership(part, k)) << '\n';
    }
}

void cmd_deriv(const EstimateOptions& opt, std::ostream& out, std::ostream* trials,
               std::ostream& diagnostics) {
    const TestFunction f = checked_function(opt);
    const FractionalOrder order(opt.alpha);
    opt.cfg.validate();
    const Evaluand g = f.evaluand(opt.alpha);
    const auto grid = opt.grid.points();

    out << "t,estimate,ci_low,ci_high,exact\n";
    if (trials) *trials << "t,trial,estimate\n";
    for (double t : grid) {
        const std::string exact = exact_field(f.exact_derivative, opt.alpha, t);
        if (order.is_integer()) {
            const double value = gl_deterministic(g, opt.alpha, t, opt.cfg.h);
            write_row(out, t, value, value, value, exact);
            continue;
        }
        const TrialSummary s = gl_mc_trials(g, opt.alpha, t, opt.cfg);
        write_row(out, t, s.mean, s.ci_low, s.ci_high, exact);
        write_trials(trials, t, s);
        if (s.heavy_tailed) {
            diagnostics << "warning: t=" << format_real(t) << ": trial kurtosis "
                        << format_real(s.kurtosis) << " suggests infinite variance; median "
                        << format_real(s.median) << '\n';
        }
    }
}

void cmd_integ(const EstimateOptions& opt, std::ostream& out, std::ostream* trials,
               std::ostream& diagnostics) {
    if (!(opt.alpha > 0.0) || !std::isfinite(opt.alpha)) throw DomainError("--alpha must be positive");
    const TestFunction f = checked_function(opt);
    opt.cfg.validate();
    const Evaluand g = f.evaluand(opt.alpha);
    const auto grid = opt.grid.points();
    const bool analytic_flag = f.infinite_variance_integrand(opt.alpha);

    out << "t,estimate,ci_low,ci_high,exact\n";
    if (trials) *trials << "t,trial,estimate\n";
    for (double t : grid) {
        const TrialSummary s = rl_integral_mc_trials(g, opt.alpha, t, opt.cfg);
        write_row(out, t, s.mean, s.ci_low, s.ci_high, exact_field(f.exact_integral, opt.alpha, t));
        write_trials(trials, t, s);
        if (s.heavy_tailed || analytic_flag) {
            diagnostics << "warning: t=" << format_real(t) << ": " << f.name
                        << " has an infinite-variance integrand at this order (kurtosis "
                        << format_real(s.kurtosis) << "); median of trials "
                        << format_real(s.median) << '\n';
        }
    }
}

}  // namespace fracmc::cli
