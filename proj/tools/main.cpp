// Command-line front end: exponent and schedule reports, Monte Carlo
// simulation, and CSV parameter sweeps.
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "gmdet/cli.hpp"
#include "gmdet/exponent.hpp"

namespace {

using gmdet::cli::Params;

struct CommonOpts {
    Params params;
    std::string out;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--a", o.params.correlation,
                    "correlation coefficient in [0, 1]");
    cmd->add_option("--gamma", o.params.gamma, "SNR, linear");
    cmd->add_option("--snr-db", o.params.snr_db, "SNR in dB");
    cmd->add_option("--pi0", o.params.signal_var, "signal variance");
    cmd->add_option("--sigma2", o.params.noise_var,
                    "noise variance (default 1)");
    cmd->add_option("--drift-A", o.params.drift, "field drift rate");
    cmd->add_option("--delta", o.params.delta, "sensor spacing");
    cmd->add_option("--alpha", o.params.alpha,
                    "false-alarm size (default 0.001)");
    cmd->add_option("--n", o.params.n, "samples per path");
    cmd->add_option("--trials", o.params.trials,
                    "Monte Carlo trials (default 100000)");
    cmd->add_option("--seed", o.params.seed, "random seed (default 0)");
    cmd->add_option("--quadrature-points", o.params.quadrature_points,
                    "Simpson subintervals for the spectral exponent");
    cmd->add_option("--out", o.out, "output file (default stdout)");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Error exponents and sensor spacing for detecting a sampled "
        "Gauss-Markov field in white Gaussian noise"};
    app.require_subcommand(1);

    CommonOpts point_opts, schedule_opts, simulate_opts, sweep_opts;
    std::string quantity;
    gmdet::cli::GridSpec grid;

    auto* exponent_cmd = app.add_subcommand(
        "exponent", "error exponent and filter quantities for one model");
    add_common(exponent_cmd, point_opts);

    auto* schedule_cmd = app.add_subcommand(
        "schedule", "SNR regime and optimal correlation/spacing");
    add_common(schedule_cmd, schedule_opts);

    auto* simulate_cmd = app.add_subcommand(
        "simulate", "Monte Carlo miss probability at fixed size");
    add_common(simulate_cmd, simulate_opts);

    auto* sweep_cmd =
        app.add_subcommand("sweep", "CSV table over a parameter grid");
    add_common(sweep_cmd, sweep_opts);
    sweep_cmd
        ->add_option("--quantity", quantity,
                     "one of exponent_vs_a, exponent_vs_snr, am_vs_snr, "
                     "delta_star_vs_snr, pm_vs_n")
        ->required();
    sweep_cmd->add_option("--grid-start", grid.start, "sweep start")
        ->required();
    sweep_cmd->add_option("--grid-stop", grid.stop, "sweep stop")->required();
    sweep_cmd->add_option("--grid-count", grid.count, "grid points (>= 2)")
        ->required();

    try {
        app.parse(argc, argv);

        if (exponent_cmd->parsed()) {
            if (!point_opts.params.correlation &&
                !(point_opts.params.drift && point_opts.params.delta))
                throw gmdet::cli::UsageError(
                    "exponent needs --a or --drift-A with --delta");
            gmdet::cli::write_output(point_opts.out, [&](std::ostream& os) {
                gmdet::cli::run_point(point_opts.params, os);
            });
        } else if (schedule_cmd->parsed()) {
            gmdet::cli::write_output(schedule_opts.out, [&](std::ostream& os) {
                gmdet::cli::run_point(schedule_opts.params, os);
            });
        } else if (simulate_cmd->parsed()) {
            gmdet::cli::write_output(simulate_opts.out, [&](std::ostream& os) {
                gmdet::cli::run_simulate(simulate_opts.params, os);
            });
        } else if (sweep_cmd->parsed()) {
            auto q = gmdet::cli::parse_quantity(quantity);
            if (!q)
                throw gmdet::cli::UsageError("unknown sweep quantity: " +
                                             quantity);
            gmdet::cli::SweepSpec spec{*q, grid, sweep_opts.params,
                                       sweep_opts.out};
            gmdet::cli::write_output(
                spec.out,
                [&](std::ostream& os) { gmdet::cli::run_sweep(spec, os); });
        }
        return 0;
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const gmdet::cli::IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    } catch (const gmdet::ConvergenceError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
}
