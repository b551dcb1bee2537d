#include <CLI11.hpp>

#include <iostream>

#include "fside/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Spectral collocation solver for fractional stochastic "
                 "integro-differential equations"};
    app.require_subcommand(1);

    fside::cli::RunManifest manifest;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--alpha", manifest.alpha, "Caputo order in (0,1]")
            ->check(CLI::Range(1e-12, 1.0));
        cmd->add_option("--sigma", manifest.sigma, "noise scale")->check(CLI::NonNegativeNumber);
        cmd->add_option("--m", manifest.m, "truncation degree")->check(CLI::Range(2, 64));
        cmd->add_option("--seed", manifest.seed, "RNG seed");
        cmd->add_option("-o,--output", manifest.output_path, "CSV output file (default stdout)");
    };

    CLI::App* example = app.add_subcommand("example", "solve a built-in example");
    example->add_option("--id", manifest.example_id, "example id")->check(CLI::Range(1, 2));
    add_common(example);

    CLI::App* converge = app.add_subcommand("converge", "convergence sweep over m");
    converge->add_option("--id", manifest.example_id, "example id")->check(CLI::Range(1, 2));
    converge->add_option("--degrees", manifest.degrees, "degrees to sweep")
        ->delimiter(',')
        ->check(CLI::Range(2, 64));
    add_common(converge);

    CLI::App* ensemble = app.add_subcommand("ensemble", "Monte Carlo ensemble statistics");
    ensemble->add_option("--id", manifest.example_id, "example id")->check(CLI::Range(1, 2));
    ensemble->add_option("--n-paths", manifest.n_paths, "number of Brownian paths")
        ->check(CLI::PositiveNumber);
    add_common(ensemble);

    CLI::App* paths = app.add_subcommand("paths", "sample Brownian / fBm / GBM paths");
    paths->add_option("--process", manifest.process, "bm, fbm, or gbm");
    paths->add_option("--hurst", manifest.hurst, "Hurst parameter in (0,1)")
        ->check(CLI::Range(1e-9, 1.0));
    paths->add_option("--x0", manifest.gbm_x0, "GBM start value")->check(CLI::PositiveNumber);
    paths->add_option("--mu", manifest.gbm_mu, "GBM drift");
    add_common(paths);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (example->parsed()) manifest.command = fside::cli::Command::example;
    if (converge->parsed()) manifest.command = fside::cli::Command::converge;
    if (ensemble->parsed()) manifest.command = fside::cli::Command::ensemble;
    if (paths->parsed()) manifest.command = fside::cli::Command::paths;

    return fside::cli::run(manifest, std::cout, std::cerr);
}
