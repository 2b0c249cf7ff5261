// fracmc: Sibuya sampling and Monte Carlo fractional calculus from the
// command line. Every command writes CSV to stdout or --out.

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "fracmc/commands.hpp"
#include "fracmc/errors.hpp"

namespace {

constexpr int kUsageExit = 2;
constexpr int kNumericalExit = 3;

struct Outputs {
    std::string out_path;
    std::string trials_path;
};

std::ofstream open_file(const std::string& path) {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw fracmc::DomainError("cannot open '" + path + "' for writing");
    return file;
}

void add_output(CLI::App* cmd, Outputs& io) {
    cmd->add_option("--out", io.out_path, "Write CSV here instead of stdout");
}

void add_estimate_options(CLI::App* cmd, fracmc::cli::EstimateOptions& opt,
                          std::optional<double>& t_end, std::optional<double>& t_step,
                          Outputs& io) {
    cmd->add_option("--alpha", opt.alpha, "Order")->required();
    cmd->add_option("--func", opt.func, "Registry function, e.g. example2 or power(1.5)")
        ->required();
    cmd->add_option("--t-start", opt.grid.t_start, "First grid point")->required();
    cmd->add_option("--t-end", t_end, "Last grid point (default: t-start)");
    cmd->add_option("--t-step", t_step, "Grid spacing (default: 1)");
    cmd->add_option("--n-samples", opt.cfg.n_samples, "Samples per trial")
        ->capture_default_str();
    cmd->add_option("--trials", opt.cfg.n_trials, "Independent trials")->capture_default_str();
    cmd->add_option("--seed", opt.cfg.seed, "Seed")->capture_default_str();
    cmd->add_option("--threads", opt.cfg.threads, "Worker threads (0: all cores)")
        ->capture_default_str();
    cmd->add_option("--emit-trials", io.trials_path, "Also write per-trial CSV here");
    add_output(cmd, io);
}

void finish_grid(fracmc::cli::EstimateOptions& opt, const std::optional<double>& t_end,
                 const std::optional<double>& t_step) {
    opt.grid.t_end = t_end.value_or(opt.grid.t_start);
    opt.grid.t_step = t_step.value_or(1.0);
}

}  // namespace

int main(int argc, char** argv) {
    namespace fc = fracmc::cli;

    CLI::App app{"Sibuya sampling and Monte Carlo fractional derivatives and integrals"};
    app.require_subcommand(1);

    Outputs io;
    std::string method_text = "1";

    fc::SampleOptions sample_opt;
    auto* sample = app.add_subcommand("sample", "Draw Sibuya variates: draw,index,value");
    sample->add_option("--alpha", sample_opt.alpha, "Sibuya parameter in (0,1)")->required();
    sample->add_option("--method", method_text, "1 inverse-cdf, 2 bernoulli, 3 beta-geometric")
        ->capture_default_str();
    sample->add_option("--n", sample_opt.n, "Numbers per draw")->capture_default_str();
    sample->add_option("--draws", sample_opt.draws, "Number of draws")->capture_default_str();
    sample->add_option("--seed", sample_opt.seed, "Seed")->capture_default_str();
    add_output(sample, io);

    fc::CompareOptions compare_opt;
    auto* compare =
        app.add_subcommand("compare", "Sorted-average profiles: index,method1,method2,method3");
    compare->add_option("--alpha", compare_opt.alpha, "Sibuya parameter in (0,1)")->required();
    compare->add_option("--n", compare_opt.n, "Numbers per draw")->capture_default_str();
    compare->add_option("--draws", compare_opt.draws, "Number of draws")->capture_default_str();
    compare->add_option("--seed", compare_opt.seed, "Seed")->capture_default_str();
    add_output(compare, io);

    fc::WeightsOptions weights_opt;
    auto* weights = app.add_subcommand("weights", "Grunwald-Letnikov weights: k,w_k,set");
    weights->add_option("--alpha", weights_opt.alpha, "Non-integer order in (0,5)")->required();
    weights->add_option("--kmax", weights_opt.kmax, "Largest index")->capture_default_str();
    add_output(weights, io);

    fc::EstimateOptions deriv_opt;
    std::optional<double> deriv_end, deriv_step;
    auto* deriv = app.add_subcommand("deriv", "Fractional derivative: t,estimate,ci_low,ci_high,exact");
    // --h is the step size, so help is long-form only here.
    deriv->set_help_flag("--help", "Print this help message and exit");
    add_estimate_options(deriv, deriv_opt, deriv_end, deriv_step, io);
    deriv->add_option("--h", deriv_opt.cfg.h, "Step size")->capture_default_str();

    fc::EstimateOptions integ_opt;
    std::optional<double> integ_end, integ_step;
    auto* integ = app.add_subcommand("integ", "Fractional integral: t,estimate,ci_low,ci_high,exact");
    add_estimate_options(integ, integ_opt, integ_end, integ_step, io);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kUsageExit;
    }

    try {
        std::ofstream out_file;
        std::ostream* out = &std::cout;
        if (!io.out_path.empty()) {
            out_file = open_file(io.out_path);
            out = &out_file;
        }
        std::ofstream trials_file;
        std::ostream* trials = nullptr;
        if (!io.trials_path.empty()) {
            trials_file = open_file(io.trials_path);
            trials = &trials_file;
        }

        if (sample->parsed()) {
            sample_opt.method = fracmc::parse_sibuya_method(method_text);
            fc::cmd_sample(sample_opt, *out);
        } else if (compare->parsed()) {
            fc::cmd_compare(compare_opt, *out);
        } else if (weights->parsed()) {
            fc::cmd_weights(weights_opt, *out);
        } else if (deriv->parsed()) {
            finish_grid(deriv_opt, deriv_end, deriv_step);
            fc::cmd_deriv(deriv_opt, *out, trials, std::cerr);
        } else if (integ->parsed()) {
            finish_grid(integ_opt, integ_end, integ_step);
            fc::cmd_integ(integ_opt, *out, trials, std::cerr);
        }
        out->flush();
        if (!*out) {
            std::cerr << "error: failed writing output\n";
            return kUsageExit;
        }
    } catch (const fracmc::DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsageExit;
    } catch (const fracmc::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kNumericalExit;
    }
    return 0;
}
