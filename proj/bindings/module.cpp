#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>

#include "fside/legendre.hpp"
#include "fside/opmatrix.hpp"
#include "fside/solver.hpp"
#include "fside/special.hpp"
#include "fside/stochastic.hpp"

namespace py = pybind11;
using namespace fside;

namespace {

std::vector<std::vector<double>> as_rows(const Matrix& m) {
    std::vector<std::vector<double>> out(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        out[i].resize(m.cols());
        for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = m(i, j);
    }
    return out;
}

py::dict solution_dict(const FsideProblem& problem, const SpectralSolution& sol) {
    py::dict d;
    d["coeffs"] = sol.fbar;
    d["residual_max"] = sol.residual_max;
    d["condition"] = sol.system_condition_estimate;
    std::vector<double> grid(101), values(101);
    for (int i = 0; i <= 100; ++i) {
        grid[i] = i / 100.0;
        values[i] = sol.eval(grid[i]);
    }
    d["t"] = grid;
    d["f"] = values;
    if (problem.exact) {
        const ErrorReport rep = error_function(sol, *problem.exact);
        d["max_error"] = rep.sup_error;
        d["l2_error"] = rep.l2;
    }
    return d;
}

py::dict path_dict(const BrownianPath& path) {
    py::dict d;
    d["t"] = path.partition;
    d["B"] = path.values;
    return d;
}

}  // namespace

PYBIND11_MODULE(_fside, m) {
    m.doc() = "spectral solver for fractional stochastic integro-differential equations";

    m.def("gamma", &gamma_fn, py::arg("x"));

    m.def(
        "legendre",
        [](std::size_t i, double x, double a, double b) {
            return eval_basis(BasisSpec(a, b, std::max<std::size_t>(i, 1)), i, x);
        },
        py::arg("i"), py::arg("x"), py::arg("a") = 0.0, py::arg("b") = 1.0,
        "Shifted Legendre polynomial P_i on [a, b]");

    m.def(
        "legendre_roots",
        [](std::size_t k) { return basis_roots(BasisSpec(0.0, 1.0, k), k); },
        py::arg("k"));

    m.def(
        "caputo_matrix",
        [](std::size_t m_, double alpha) {
            return as_rows(caputo_matrix(BasisSpec(0.0, 1.0, m_), alpha));
        },
        py::arg("m"), py::arg("alpha"));

    m.def(
        "derivative_matrix",
        [](std::size_t m_) { return as_rows(derivative_matrix(BasisSpec(0.0, 1.0, m_))); },
        py::arg("m"));

    m.def(
        "integration_matrix",
        [](std::size_t m_) {
            return as_rows(integration_matrix_1d(BasisSpec(0.0, 1.0, m_)));
        },
        py::arg("m"));

    m.def(
        "brownian_path",
        [](std::size_t cells, std::uint64_t seed) {
            return path_dict(sample_brownian(uniform_partition(0.0, 1.0, cells), seed));
        },
        py::arg("cells"), py::arg("seed"));

    m.def(
        "fbm_path",
        [](std::size_t cells, std::uint64_t seed, double hurst) {
            return path_dict(sample_fbm(uniform_partition(0.0, 1.0, cells), seed, hurst));
        },
        py::arg("cells"), py::arg("seed"), py::arg("hurst"));

    m.def(
        "gbm_path",
        [](double x0, double mu, double sigma, double hurst, std::size_t cells,
           std::uint64_t seed) {
            return gbm_path(x0, mu, sigma, hurst, uniform_partition(0.0, 1.0, cells), seed);
        },
        py::arg("x0"), py::arg("mu"), py::arg("sigma"), py::arg("hurst") = 0.5,
        py::arg("cells") = 256, py::arg("seed") = 42);

    m.def(
        "solve",
        [](double alpha, const std::function<double(double)>& g,
           const std::function<double(double, double)>& k1,
           const std::function<double(double, double)>& k2, double sigma,
           double initial_value, std::size_t m_, std::uint64_t seed) {
            FsideProblem problem;
            problem.alpha = alpha;
            problem.g = g;
            problem.k1 = k1;
            problem.k2 = k2;
            problem.sigma = sigma;
            problem.initial_value = initial_value;
            SolverConfig config;
            config.m = m_;
            config.seed = seed;
            return solution_dict(problem, fside::solve(problem, config));
        },
        py::arg("alpha"), py::arg("g"), py::arg("k1"), py::arg("k2"),
        py::arg("sigma") = 0.0, py::arg("initial_value") = 0.0, py::arg("m") = 7,
        py::arg("seed") = 42,
        "Solve D^alpha f = g + int k1 f ds + sigma int k2 f dB on [0, 1]");

    m.def(
        "solve_example",
        [](int id, double alpha, double sigma, std::size_t m_, std::uint64_t seed) {
            const FsideProblem problem = make_example(id, alpha, sigma);
            SolverConfig config;
            config.m = m_;
            config.seed = seed;
            return solution_dict(problem, fside::solve(problem, config));
        },
        py::arg("id"), py::arg("alpha") = 0.75, py::arg("sigma") = 0.0, py::arg("m") = 7,
        py::arg("seed") = 42);

    m.def(
        "solve_ensemble",
        [](int id, double alpha, double sigma, std::size_t m_, std::uint64_t seed,
           std::size_t n_paths) {
            const FsideProblem problem = make_example(id, alpha, sigma);
            SolverConfig config;
            config.m = m_;
            config.seed = seed;
            const EnsembleStats stats = fside::solve_ensemble(problem, config, n_paths);
            py::dict d;
            d["t"] = stats.grid;
            d["mean"] = stats.mean;
            d["std"] = stats.stddev;
            d["q05"] = stats.q05;
            d["q95"] = stats.q95;
            d["failures"] = stats.failures;
            return d;
        },
        py::arg("id"), py::arg("alpha") = 0.75, py::arg("sigma") = 1.0, py::arg("m") = 7,
        py::arg("seed") = 42, py::arg("n_paths") = 100);

    m.def(
        "theoretical_bound",
        [](int id, double alpha, double sigma, std::size_t m_) {
            return theoretical_bound(make_example(id, alpha, sigma), m_);
        },
        py::arg("id"), py::arg("alpha") = 0.75, py::arg("sigma") = 0.0, py::arg("m") = 7);
}
