// fraccal - experiment driver for contour-quadrature operator calculus.
//
// Each subcommand runs one experiment family and writes a CSV
// (scheme,n_q,k,param,value) plus, optionally, a companion plot script.
// Exit status is 0 whenever the experiment completes (rows marked
// `diverged` are completed results), 1 on validation or I/O errors.

#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fraccal.hpp"

namespace {

struct CliOptions {
    std::string preset;
    std::string config_file;
    std::string schemes;
    int nq_max = 0;
    int nq_min = 0;
    int nq_stride = 0;
    double beta = 0.0;
    double alpha = 0.0;
    double mu = 0.0;
    double theta = 0.0;
    double sigma = 0.0;
    double kappa = 0.0;
    double t = 0.0;
    double omega = 0.0;
    int modes = 0;
    std::string lambdas;
    std::string output;
    std::string name;
    bool emit_plot = false;
};

void add_common_options(CLI::App* cmd, CliOptions& opts, bool preset_required) {
    auto* preset = cmd->add_option("--preset", opts.preset,
                                   "named experiment preset (see --list-presets)");
    if (preset_required) preset->required();
    cmd->add_option("--config", opts.config_file,
                    "key = value configuration file");
    cmd->add_option("--schemes", opts.schemes,
                    "comma list from DE1,DE2,DE3,sinc,balakrishnan");
    cmd->add_option("--nq-max", opts.nq_max, "largest node count");
    cmd->add_option("--nq-min", opts.nq_min, "smallest node count");
    cmd->add_option("--nq-stride", opts.nq_stride, "node count stride");
    cmd->add_option("--beta", opts.beta, "spectral exponent beta in (0, 1]");
    cmd->add_option("--alpha", opts.alpha, "time-fractional order alpha in (0, 2)");
    cmd->add_option("--mu", opts.mu, "second Mittag-Leffler parameter");
    cmd->add_option("--theta", opts.theta, "contour slope theta >= 1 (override)");
    cmd->add_option("--sigma", opts.sigma, "contour sigma, 0.5 or 1 (override)");
    cmd->add_option("--kappa", opts.kappa, "contour scale kappa > 0 (override)");
    cmd->add_option("--t", opts.t, "evaluation time");
    cmd->add_option("--omega", opts.omega, "Gaussian data width");
    cmd->add_option("--modes", opts.modes, "modes per direction for 2d problems");
    cmd->add_option("--lambdas", opts.lambdas, "comma list of spectral points");
    cmd->add_option("--output", opts.output, "CSV output path");
    cmd->add_option("--name", opts.name, "experiment name (default output stem)");
    cmd->add_flag("--emit-plot", opts.emit_plot,
                  "also write a python plot script next to the CSV");
}

fraccal::ExperimentConfig build_config(const CLI::App* cmd, const CliOptions& opts,
                                       const std::string& default_preset,
                                       bool fix_kind,
                                       fraccal::ExperimentKind kind) {
    fraccal::ExperimentConfig config = fraccal::make_preset(
        opts.preset.empty() ? default_preset : opts.preset);
    if (fix_kind) config.kind = kind;
    if (!opts.config_file.empty())
        fraccal::load_config_file(config, opts.config_file);
    const auto flag = [&](const std::string& n) { return cmd->count(n) > 0; };
    if (flag("--schemes")) fraccal::apply_config_entry(config, "schemes", opts.schemes);
    if (flag("--nq-max")) config.n_q_max = opts.nq_max;
    if (flag("--nq-min")) config.n_q_min = opts.nq_min;
    if (flag("--nq-stride")) config.n_q_stride = opts.nq_stride;
    if (flag("--beta")) config.beta = opts.beta;
    if (flag("--alpha")) config.alpha = opts.alpha;
    if (flag("--mu")) config.mu = opts.mu;
    if (flag("--theta")) config.theta_override = opts.theta;
    if (flag("--sigma")) config.sigma_override = opts.sigma;
    if (flag("--kappa")) config.kappa_override = opts.kappa;
    if (flag("--t")) config.t = opts.t;
    if (flag("--omega")) config.omega = opts.omega;
    if (flag("--modes")) config.modes = opts.modes;
    if (flag("--lambdas")) fraccal::apply_config_entry(config, "lambdas", opts.lambdas);
    if (flag("--name")) config.name = opts.name;
    if (flag("--output")) config.output = opts.output;
    if (opts.emit_plot) config.emit_plot = true;
    return config;
}

int run_and_emit(const fraccal::ExperimentConfig& config) {
    const fraccal::ExperimentResult result = fraccal::run_experiment(config);
    fraccal::emit_outputs(result, config.output_path(), config.emit_plot);
    std::cout << "wrote " << config.output_path() << " (" << result.rows.size()
              << " rows)\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "fraccal: double-exponential contour quadrature for fractional powers "
        "and Mittag-Leffler evolutions of elliptic operators"};
    app.require_subcommand(0, 1);

    bool list_presets = false;
    app.add_flag("--list-presets", list_presets, "print preset names and exit");

    struct SubSpec {
        const char* name;
        const char* help;
        const char* default_preset;
        fraccal::ExperimentKind kind;
        bool fix_kind;
        bool preset_required;
    };
    const SubSpec subs[] = {
        {"scalar-power", "max-over-lambda error for g(z) = z^{-beta}",
         "scalar-power-0p6", fraccal::ExperimentKind::ScalarPower, true, false},
        {"scalar-ml", "max-over-lambda error for the Mittag-Leffler symbol",
         "scalar-ml-sub", fraccal::ExperimentKind::ScalarML, true, false},
        {"lambda-sweep", "relative error at fixed spectral points",
         "lambda-sweep-0p6", fraccal::ExperimentKind::LambdaSweep, true, false},
        {"elliptic2d", "fractional elliptic problem on the unit square",
         "elliptic2d-0p4", fraccal::ExperimentKind::Elliptic, true, false},
        {"parabolic2d", "time-fractional evolution on the unit square",
         "parabolic2d-rough", fraccal::ExperimentKind::Parabolic, true, false},
        {"pole-map", "contour pole preimages at sample spectral points",
         "pole-map", fraccal::ExperimentKind::PoleMap, true, false},
        {"run", "run a preset by name", "", fraccal::ExperimentKind::ScalarPower,
         false, true},
    };

    std::vector<CliOptions> opt_store(std::size(subs));
    std::vector<CLI::App*> cmd_store(std::size(subs));
    for (std::size_t i = 0; i < std::size(subs); ++i) {
        cmd_store[i] = app.add_subcommand(subs[i].name, subs[i].help);
        add_common_options(cmd_store[i], opt_store[i], subs[i].preset_required);
    }

    CLI11_PARSE(app, argc, argv);

    if (list_presets) {
        for (const std::string& p : fraccal::preset_names()) std::cout << p << "\n";
        return 0;
    }
    if (app.get_subcommands().empty()) {
        std::cerr << app.help();
        return 1;
    }

    try {
        for (std::size_t i = 0; i < std::size(subs); ++i) {
            if (cmd_store[i]->parsed()) {
                const fraccal::ExperimentConfig config =
                    build_config(cmd_store[i], opt_store[i], subs[i].default_preset,
                                 subs[i].fix_kind, subs[i].kind);
                return run_and_emit(config);
            }
        }
        std::cerr << "no subcommand selected\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
