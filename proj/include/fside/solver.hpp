#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "fside/legendre.hpp"
#include "fside/linalg.hpp"
#include "fside/stochastic.hpp"

namespace fside {

/// The equation data for
///   D^alpha f(t) = g(t) + int_0^t k1(s,t) f(s) ds
///                + sigma * int_0^t k2(s,t) f(s) dB(s),   t in [0,1].
struct FsideProblem {
    double alpha = 0.75;                         // Caputo order, 0 < alpha <= 1
    std::function<double(double)> g;
    std::function<double(double, double)> k1;    // deterministic kernel k1(s,t)
    std::function<double(double, double)> k2;    // stochastic kernel k2(s,t)
    double sigma = 0.0;                          // noise scale on the k2 term
    double initial_value = 0.0;                  // f(0)
    std::optional<std::function<double(double)>> exact;

    void validate() const;
};

struct SolverConfig {
    std::size_t m = 7;            // truncation degree, >= 2
    std::uint64_t seed = 42;
    std::size_t quadrature_order = 0;  // 0 -> m+8
};

struct SpectralSolution {
    BasisSpec spec;
    Vector fbar;                  // Legendre coefficients, length m+1
    BrownianPath path;
    double system_condition_estimate = 0.0;
    double residual_max = 0.0;    // defect of the equation on a 101-point grid

    double eval(double t) const;
};

struct EnsembleStats {
    std::vector<double> grid;
    std::vector<double> mean;
    std::vector<double> stddev;
    std::vector<double> q05;
    std::vector<double> q95;
    std::size_t n_paths = 0;
    std::uint64_t master_seed = 0;
    std::size_t failures = 0;
};

struct ExpandedInputs {
    Expansion gbar;
    Expansion2D k1bar;
    Expansion2D k2bar;
};

struct ErrorReport {
    std::vector<double> grid;
    std::vector<double> error;    // f(t) - f_m(t)
    double sup_error = 0.0;
    double l2_squared = 0.0;      // integral of |e|^2 (Gauss quadrature)
    double l2 = 0.0;              // its square root
};

ExpandedInputs expand_inputs(const FsideProblem& problem, const SolverConfig& config);

/// The (m+1)x(m+1) collocation system in fbar. Row 0 enforces the
/// initial condition at t = 0; rows 1..m collocate the equation at the
/// roots of P_m. Requires the path to have m+1 cells on [0,1].
std::pair<Matrix, Vector> assemble_system(const FsideProblem& problem,
                                          const SolverConfig& config,
                                          const BrownianPath& path);

/// Assemble and solve on a caller-supplied path.
SpectralSolution solve_on_path(const FsideProblem& problem, const SolverConfig& config,
                               const BrownianPath& path);

/// Samples a Brownian path from config.seed on the uniform m+1-cell
/// partition, then assembles and solves.
SpectralSolution solve(const FsideProblem& problem, const SolverConfig& config);

/// Independent per-path seeds derived from config.seed; failed paths are
/// excluded and counted, more than 10% failures is an error.
EnsembleStats solve_ensemble(const FsideProblem& problem, const SolverConfig& config,
                             std::size_t n_paths, std::size_t grid_points = 101);

/// Pointwise error against a supplied exact solution on a uniform grid.
ErrorReport error_function(const SpectralSolution& solution,
                           const std::function<double(double)>& exact,
                           std::size_t grid_points = 101);

/// Relative convergence indicator from the error bound:
/// (1/Gamma(alpha)) * max(|k1| + sigma |k2|) / ((m+1)! 2^(2m+1)),
/// kernel maximum found on a 201x201 grid scan of the unit square.
double theoretical_bound(const FsideProblem& problem, std::size_t m);

/// Analytic Caputo derivative of a basis expansion, via its monomial form.
double caputo_of_expansion(const Expansion& f, double alpha, double t);

/// Right side of the equation for a frozen coefficient vector, evaluated
/// through the operational-matrix route (expanded kernels, integration
/// stencil, increment contraction). Used by the oracle-equivalence tests
/// and the collocation rows.
double rhs_operational(const FsideProblem& problem, const SolverConfig& config,
                       const BrownianPath& path, const Vector& fbar, double t);

/// Same quantity by direct Gauss quadrature and Ito sums on the path.
double rhs_direct(const FsideProblem& problem, const BrownianPath& path,
                  const Expansion& f, double t);

/// Built-in problems from the worked examples.
FsideProblem make_example1(double alpha = 0.75, double sigma = 0.0);
FsideProblem make_example2(double alpha = 0.75, double sigma = 1.0);
FsideProblem make_example(int id, double alpha, double sigma);

}  // namespace fside
