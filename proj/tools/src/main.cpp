#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "commands.hpp"
#include "hivsde/errors.hpp"

namespace {

void add_common(CLI::App* cmd, hivsde::cli::CommonOptions& opts) {
    cmd->add_option("--scenario", opts.scenario, "scenario file")->required()->check(CLI::ExistingFile);
    cmd->add_option("--out", opts.out, "output directory")->capture_default_str();
    cmd->add_option("--seed", opts.seed, "seed override (step seed and ensemble base seed)");
    cmd->add_option("--workers", opts.workers, "worker threads, 0 = available parallelism")->capture_default_str();
    cmd->add_option("--scheme", opts.scheme, "scheme override: rk4, em, nptem, pptem");
    cmd->add_option("--dt", opts.dt, "step size override");
    cmd->add_option("--t-end", opts.t_end, "horizon override");
    cmd->add_option("--sigma", opts.sigma, "set every noise intensity to this value");
    cmd->add_option("--paths", opts.paths, "ensemble path count override");
    cmd->add_option("--burn-in", opts.burn_in, "ensemble burn-in override");
}

}  // namespace

int main(int argc, char** argv) {
    using namespace hivsde;
    CLI::App app{"Stochastic HIV/AIDS model toolkit"};
    app.require_subcommand(1);

    cli::CommonOptions opts;
    std::size_t thin = 1;
    std::size_t bins = 50;
    std::string param;
    std::vector<double> values;
    cli::FitOptions fit;

    auto* report = app.add_subcommand("report", "threshold indices and equilibria as JSON");
    add_common(report, opts);

    auto* simulate = app.add_subcommand("simulate", "write one trajectory as CSV");
    add_common(simulate, opts);

    auto* ensemble = app.add_subcommand("ensemble", "cross-path mean and quantiles as CSV");
    add_common(ensemble, opts);
    ensemble->add_option("--thin", thin, "keep every n-th grid point")->capture_default_str();

    auto* histogram = app.add_subcommand("histogram", "post-burn-in histograms of every compartment");
    add_common(histogram, opts);
    histogram->add_option("--bins", bins, "bins per histogram")->capture_default_str()->check(CLI::PositiveNumber);

    auto* sweep = app.add_subcommand("sweep", "one ensemble summary per parameter value");
    add_common(sweep, opts);
    sweep->add_option("--param", param, "parameter name")->required();
    sweep->add_option("--values", values, "comma-separated values")->required()->delimiter(',');
    sweep->add_option("--thin", thin, "keep every n-th grid point")->capture_default_str();

    auto* fitcmd = app.add_subcommand("fit", "least-squares fit of the deterministic model");
    add_common(fitcmd, opts);
    fitcmd->add_option("--data", fit.data, "CSV with columns time,observed")->required()->check(CLI::ExistingFile);
    fitcmd->add_option("--free", fit.free, "free parameter as name:lower:upper (repeatable)")->required();
    fitcmd->add_option("--target", fit.target, "observed quantity: S_u, S_a, I, C, A or I+C+A")->capture_default_str();
    fitcmd->add_option("--max-iterations", fit.max_iterations, "iteration budget")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*report) return cli::cmd_report(opts);
        if (*simulate) return cli::cmd_simulate(opts);
        if (*ensemble) return cli::cmd_ensemble(opts, thin);
        if (*histogram) return cli::cmd_histogram(opts, bins);
        if (*sweep) return cli::cmd_sweep(opts, param, values, thin);
        if (*fitcmd) return cli::cmd_fit(opts, fit);
    } catch (const StepOverflow& e) {
        std::cerr << "hivsde: error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "hivsde: error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
