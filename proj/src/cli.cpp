#include "fside/cli.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace fside::cli {

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

int with_csv_sink(const RunManifest& manifest, std::ostream& out, std::ostream& err,
                  int (*body)(const RunManifest&, std::ostream&, std::ostream&)) {
    if (manifest.output_path.empty()) {
        // CSV is the stdout contract; the report goes to stderr so the
        // data stream stays machine-readable.
        return body(manifest, out, err);
    }
    std::ofstream file(manifest.output_path, std::ios::binary);  // LF line endings
    if (!file) {
        err << "error: cannot open output file " << manifest.output_path << "\n";
        return 2;
    }
    return body(manifest, file, out);
}

}  // namespace

void write_csv_value(std::ostream& os, double v) { os << fmt(v); }

int run_example(const RunManifest& manifest, std::ostream& csv, std::ostream& table) {
    const FsideProblem problem = make_example(manifest.example_id, manifest.alpha, manifest.sigma);
    const SolverConfig config{manifest.m, manifest.seed};
    const SpectralSolution sol = fside::solve(problem, config);

    table << "example " << manifest.example_id << ": alpha=" << manifest.alpha
          << " sigma=" << manifest.sigma << " m=" << manifest.m << " seed=" << manifest.seed
          << "\n";
    table << "  residual_max      = " << sol.residual_max << "\n";
    table << "  condition (1-norm)= " << sol.system_condition_estimate << "\n";
    if (problem.exact) {
        const ErrorReport report = error_function(sol, *problem.exact);
        table << "  max grid error    = " << report.sup_error << "\n";
        table << "  L2 error          = " << report.l2 << "\n";
    }

    const bool with_exact = problem.exact.has_value();
    csv << (with_exact ? "t,f_approx,f_exact,abs_error" : "t,f_approx") << "\n";
    for (int i = 0; i <= 100; ++i) {
        const double t = i / 100.0;
        const double fa = sol.eval(t);
        csv << fmt(t) << "," << fmt(fa);
        if (with_exact) {
            const double fe = (*problem.exact)(t);
            csv << "," << fmt(fe) << "," << fmt(std::abs(fa - fe));
        }
        csv << "\n";
    }
    return 0;
}

int run_converge(const RunManifest& manifest, std::ostream& csv, std::ostream& table) {
    const FsideProblem problem = make_example(manifest.example_id, manifest.alpha, manifest.sigma);
    const bool with_exact = problem.exact.has_value();

    table << "convergence sweep, example " << manifest.example_id << " (alpha="
          << manifest.alpha << ", sigma=" << manifest.sigma << ")\n";
    table << "  m  " << (with_exact ? "max_error      " : "residual_max   ")
          << "theoretical_bound\n";
    csv << "m," << (with_exact ? "max_error" : "residual_max") << ",theoretical_bound\n";
    for (std::size_t m : manifest.degrees) {
        const SolverConfig config{m, manifest.seed};
        const SpectralSolution sol = fside::solve(problem, config);
        const double measured =
            with_exact ? error_function(sol, *problem.exact).sup_error : sol.residual_max;
        const double bound = theoretical_bound(problem, m);
        table << "  " << std::setw(2) << m << " " << std::scientific << std::setprecision(6)
              << measured << "   " << bound << std::defaultfloat << "\n";
        csv << m << "," << fmt(measured) << "," << fmt(bound) << "\n";
    }
    return 0;
}

int run_ensemble(const RunManifest& manifest, std::ostream& csv, std::ostream& table) {
    const FsideProblem problem = make_example(manifest.example_id, manifest.alpha, manifest.sigma);
    const SolverConfig config{manifest.m, manifest.seed};
    const EnsembleStats stats = solve_ensemble(problem, config, manifest.n_paths);
    table << "ensemble: example " << manifest.example_id << ", " << stats.n_paths
          << " paths, master seed " << stats.master_seed << ", failures " << stats.failures
          << "\n";
    csv << "t,mean,std,q05,q95\n";
    for (std::size_t i = 0; i < stats.grid.size(); ++i) {
        csv << fmt(stats.grid[i]) << "," << fmt(stats.mean[i]) << "," << fmt(stats.stddev[i])
            << "," << fmt(stats.q05[i]) << "," << fmt(stats.q95[i]) << "\n";
    }
    return 0;
}

int run_paths(const RunManifest& manifest, std::ostream& csv, std::ostream& table) {
    const std::vector<double> partition = uniform_partition(0.0, 1.0, 256);
    if (manifest.process == "gbm") {
        const auto traj = gbm_path(manifest.gbm_x0, manifest.gbm_mu, manifest.sigma,
                                   manifest.hurst, partition, manifest.seed);
        csv << "t,X\n";
        for (const auto& [t, x] : traj) csv << fmt(t) << "," << fmt(x) << "\n";
    } else if (manifest.process == "bm" || manifest.process == "fbm") {
        const BrownianPath path = manifest.process == "bm"
                                      ? sample_brownian(partition, manifest.seed)
                                      : sample_fbm(partition, manifest.seed, manifest.hurst);
        csv << "t,B\n";
        for (std::size_t i = 0; i < path.partition.size(); ++i) {
            csv << fmt(path.partition[i]) << "," << fmt(path.values[i]) << "\n";
        }
    } else {
        throw std::invalid_argument("process must be bm, fbm, or gbm");
    }
    return 0;
}

int run(const RunManifest& manifest, std::ostream& out, std::ostream& err) {
    try {
        switch (manifest.command) {
            case Command::example:
                return with_csv_sink(manifest, out, err, run_example);
            case Command::converge:
                return with_csv_sink(manifest, out, err, run_converge);
            case Command::ensemble:
                return with_csv_sink(manifest, out, err, run_ensemble);
            case Command::paths:
                return with_csv_sink(manifest, out, err, run_paths);
        }
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}

}  // namespace fside::cli
