#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "fside/solver.hpp"

namespace fside::cli {

enum class Command { example, converge, ensemble, paths };

struct RunManifest {
    Command command = Command::example;
    int example_id = 1;
    double alpha = 0.75;
    double sigma = 0.0;
    std::size_t m = 7;
    std::uint64_t seed = 42;
    std::size_t n_paths = 100;
    double hurst = 0.5;
    std::string process = "bm";  // paths subcommand: bm | fbm | gbm
    double gbm_x0 = 1.0;
    double gbm_mu = 0.1;
    std::vector<std::size_t> degrees = {3, 5, 7, 9};  // converge sweep
    std::string output_path;  // empty -> CSV to stdout
};

void write_csv_value(std::ostream& os, double v);

/// Solve the named example; CSV to `csv`, human-readable report to `table`.
int run_example(const RunManifest& manifest, std::ostream& csv, std::ostream& table);

/// Sweep m over manifest.degrees, reporting measured error or residual
/// next to the theoretical bound.
int run_converge(const RunManifest& manifest, std::ostream& csv, std::ostream& table);

int run_ensemble(const RunManifest& manifest, std::ostream& csv, std::ostream& table);

int run_paths(const RunManifest& manifest, std::ostream& csv, std::ostream& table);

/// Dispatch on manifest.command, writing CSV to manifest.output_path when
/// set (stdout otherwise). Returns the process exit code: 0 success,
/// 2 usage error, 3 numeric failure.
int run(const RunManifest& manifest, std::ostream& out, std::ostream& err);

}  // namespace fside::cli
