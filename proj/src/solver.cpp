#include "fside/solver.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <stdexcept>

#include "fside/opmatrix.hpp"
#include "fside/special.hpp"

namespace fside {

namespace {

Matrix as_matrix(const Expansion2D& e) {
    const std::size_t rows = e.spec_x.m + 1;
    const std::size_t cols = e.spec_t.m + 1;
    return Matrix(rows, cols, e.coeffs);
}

// Everything the collocation rows need for one (problem, config, path)
// triple. The deterministic term at row r is psi(t)^T C_r psi(t) with
// C_r = P^T Pi_r K1 (integration stencil after multiplication by P_r);
// the stochastic term contracts the increments through left-endpoint
// Ito sums of the basis, sigma_p(t) = S[P_p](t):
//   b_r(t) = sigma(t)^T (Pi_r K2) psi(t).
class CollocationOperator {
public:
    CollocationOperator(const FsideProblem& problem, const SolverConfig& config,
                        const BrownianPath& path)
        : problem_(problem),
          spec_(0.0, 1.0, config.m),
          path_(path),
          inputs_(expand_inputs(problem, config)),
          dmat_(caputo_matrix(spec_, problem.alpha)) {
        const Matrix k1 = as_matrix(inputs_.k1bar);
        const Matrix k2 = as_matrix(inputs_.k2bar);
        const Matrix pint_t = transpose(integration_matrix_1d(spec_));
        det_.reserve(spec_.size());
        sto_.reserve(spec_.size());
        for (std::size_t r = 0; r < spec_.size(); ++r) {
            const Matrix pi_r = multiplication_matrix(spec_, r);
            det_.push_back(matmul(pint_t, matmul(pi_r, k1)));
            sto_.push_back(matmul(pi_r, k2));
        }
    }

    const BasisSpec& spec() const { return spec_; }
    const Expansion& gbar() const { return inputs_.gbar; }

    // Coefficients of the linear functional fbar -> RHS integral terms at t.
    Vector integral_row(double t) const {
        const Vector psi = eval_basis_vector(spec_, t);
        Vector sig(spec_.size());
        for (std::size_t p = 0; p < spec_.size(); ++p) {
            sig[p] = ito_sum_to([&](double s) { return eval_basis(spec_, p, s); }, path_, t);
        }
        Vector row(spec_.size(), 0.0);
        for (std::size_t r = 0; r < spec_.size(); ++r) {
            double det_term = 0.0;
            double sto_term = 0.0;
            for (std::size_t p = 0; p < spec_.size(); ++p)
                for (std::size_t q = 0; q < spec_.size(); ++q) {
                    det_term += psi[p] * det_[r](p, q) * psi[q];
                    sto_term += sig[p] * sto_[r](p, q) * psi[q];
                }
            row[r] = det_term + problem_.sigma * sto_term;
        }
        return row;
    }

    // Coefficients of fbar -> D^alpha f_m(t) through the Caputo matrix.
    Vector caputo_row(double t) const {
        return matvec(dmat_, eval_basis_vector(spec_, t));
    }

private:
    const FsideProblem& problem_;
    BasisSpec spec_;
    const BrownianPath& path_;
    ExpandedInputs inputs_;
    Matrix dmat_;
    std::vector<Matrix> det_;
    std::vector<Matrix> sto_;
};

// Analytic Caputo derivative of the polynomial f_m, independent of the
// operational matrix; this anchors the residual diagnostics.
double caputo_poly(const Vector& fbar, const BasisSpec& spec, double alpha, double t) {
    std::vector<double> mono(spec.size(), 0.0);
    for (std::size_t i = 0; i < spec.size(); ++i) {
        const std::vector<double> ci = monomial_coefficients_01(i);
        for (std::size_t k = 0; k < ci.size(); ++k) mono[k] += fbar[i] * ci[k];
    }
    double out = 0.0;
    for (std::size_t k = 0; k < mono.size(); ++k) {
        if (mono[k] == 0.0) continue;
        const CaputoTerm term = caputo_monomial(static_cast<double>(k), alpha);
        if (term.coefficient == 0.0) continue;
        out += mono[k] * term.coefficient * std::pow(t, term.exponent);
    }
    return out;
}

double residual_on_grid(const FsideProblem& problem, const SpectralSolution& sol,
                        std::size_t grid_points) {
    const Expansion fm{sol.spec, sol.fbar};
    double worst = 0.0;
    for (std::size_t i = 0; i < grid_points; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(grid_points - 1);
        const double lhs = caputo_poly(sol.fbar, sol.spec, problem.alpha, t);
        const double rhs = rhs_direct(problem, sol.path, fm, t);
        worst = std::max(worst, std::abs(lhs - rhs));
    }
    return worst;
}

}  // namespace

void FsideProblem::validate() const {
    if (!(alpha > 0.0 && alpha <= 1.0)) {
        throw std::domain_error("FsideProblem: requires 0 < alpha <= 1");
    }
    if (sigma < 0.0) throw std::domain_error("FsideProblem: requires sigma >= 0");
    if (!g || !k1 || !k2) throw std::invalid_argument("FsideProblem: missing function handle");
}

double SpectralSolution::eval(double t) const {
    return Expansion{spec, fbar}.eval(t);
}

ExpandedInputs expand_inputs(const FsideProblem& problem, const SolverConfig& config) {
    problem.validate();
    const BasisSpec spec(0.0, 1.0, config.m);
    const std::size_t nq = config.quadrature_order == 0 ? config.m + 8 : config.quadrature_order;
    return ExpandedInputs{
        project(spec, problem.g, nq),
        project_2d(spec, spec, problem.k1, nq),
        project_2d(spec, spec, problem.k2, nq),
    };
}

std::pair<Matrix, Vector> assemble_system(const FsideProblem& problem,
                                          const SolverConfig& config,
                                          const BrownianPath& path) {
    problem.validate();
    if (config.m < 2) throw std::invalid_argument("SolverConfig: requires m >= 2");
    if (path.cells() != config.m + 1) {
        throw std::invalid_argument("assemble_system: path must have m+1 cells");
    }
    const CollocationOperator op(problem, config, path);
    const BasisSpec& spec = op.spec();
    const std::size_t n = spec.size();

    Matrix a(n, n);
    Vector b(n, 0.0);

    // Row 0: f_m(0) = f(0).
    const Vector psi0 = eval_basis_vector(spec, 0.0);
    for (std::size_t j = 0; j < n; ++j) a(0, j) = psi0[j];
    b[0] = problem.initial_value;

    const std::vector<double> points = basis_roots(spec, config.m);
    for (std::size_t d = 0; d < points.size(); ++d) {
        const double t = points[d];
        const Vector lhs = op.caputo_row(t);
        const Vector integ = op.integral_row(t);
        for (std::size_t j = 0; j < n; ++j) a(d + 1, j) = lhs[j] - integ[j];
        b[d + 1] = op.gbar().eval(t);
    }
    a.check_finite("collocation system");
    return {std::move(a), std::move(b)};
}

SpectralSolution solve_on_path(const FsideProblem& problem, const SolverConfig& config,
                               const BrownianPath& path) {
    auto [a, b] = assemble_system(problem, config, path);
    SpectralSolution sol;
    sol.spec = BasisSpec(0.0, 1.0, config.m);
    sol.path = path;
    try {
        sol.fbar = solve(a, b);
    } catch (const SingularMatrixError& e) {
        throw std::runtime_error("solver: singular collocation system (m=" +
                                 std::to_string(config.m) + ", seed=" +
                                 std::to_string(path.seed) + "): " + e.what());
    }
    sol.system_condition_estimate = condition_estimate_1(a);
    if (sol.system_condition_estimate > 1e10) {
        std::cerr << "warning: collocation system condition estimate "
                  << sol.system_condition_estimate << " exceeds 1e10 (m=" << config.m
                  << ")\n";
    }
    sol.residual_max = residual_on_grid(problem, sol, 101);
    if (sol.residual_max > 1.0) {
        std::cerr << "warning: residual_max " << sol.residual_max
                  << " > 1; m=" << config.m << " may be ill-conditioned\n";
    }
    return sol;
}

SpectralSolution solve(const FsideProblem& problem, const SolverConfig& config) {
    const BrownianPath path =
        sample_brownian(uniform_partition(0.0, 1.0, config.m + 1), config.seed);
    return solve_on_path(problem, config, path);
}

EnsembleStats solve_ensemble(const FsideProblem& problem, const SolverConfig& config,
                             std::size_t n_paths, std::size_t grid_points) {
    if (n_paths < 1) throw std::invalid_argument("solve_ensemble: need n_paths >= 1");
    EnsembleStats stats;
    stats.n_paths = n_paths;
    stats.master_seed = config.seed;
    stats.grid.resize(grid_points);
    for (std::size_t i = 0; i < grid_points; ++i) {
        stats.grid[i] = static_cast<double>(i) / static_cast<double>(grid_points - 1);
    }

    std::vector<std::vector<double>> samples(grid_points);
    for (std::size_t p = 0; p < n_paths; ++p) {
        SolverConfig per_path = config;
        per_path.seed = derive_seed(config.seed, p);
        try {
            const SpectralSolution sol = solve(problem, per_path);
            for (std::size_t i = 0; i < grid_points; ++i) {
                samples[i].push_back(sol.eval(stats.grid[i]));
            }
        } catch (const std::exception&) {
            ++stats.failures;
        }
    }
    if (stats.failures * 10 > n_paths) {
        throw std::runtime_error("solve_ensemble: more than 10% of paths failed (" +
                                 std::to_string(stats.failures) + "/" +
                                 std::to_string(n_paths) + ")");
    }

    stats.mean.resize(grid_points);
    stats.stddev.resize(grid_points);
    stats.q05.resize(grid_points);
    stats.q95.resize(grid_points);
    for (std::size_t i = 0; i < grid_points; ++i) {
        std::vector<double>& v = samples[i];
        const double n = static_cast<double>(v.size());
        std::sort(v.begin(), v.end());
        double mean, var;
        if (v.front() == v.back()) {
            // Identical samples (e.g. sigma = 0): exact, no rounding noise.
            mean = v.front();
            var = 0.0;
        } else {
            mean = 0.0;
            for (double x : v) mean += x;
            mean /= n;
            var = 0.0;
            for (double x : v) var += (x - mean) * (x - mean);
            var = v.size() > 1 ? var / (n - 1.0) : 0.0;
        }
        auto quantile = [&](double q) {
            const double pos = q * (n - 1.0);
            const std::size_t lo = static_cast<std::size_t>(pos);
            const std::size_t hi = std::min(lo + 1, v.size() - 1);
            const double w = pos - static_cast<double>(lo);
            return v[lo] + w * (v[hi] - v[lo]);
        };
        stats.mean[i] = mean;
        stats.stddev[i] = std::sqrt(var);
        stats.q05[i] = quantile(0.05);
        stats.q95[i] = quantile(0.95);
    }
    return stats;
}

ErrorReport error_function(const SpectralSolution& solution,
                           const std::function<double(double)>& exact,
                           std::size_t grid_points) {
    ErrorReport report;
    report.grid.resize(grid_points);
    report.error.resize(grid_points);
    for (std::size_t i = 0; i < grid_points; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(grid_points - 1);
        report.grid[i] = t;
        report.error[i] = exact(t) - solution.eval(t);
        report.sup_error = std::max(report.sup_error, std::abs(report.error[i]));
    }
    const QuadratureRule rule = gauss_quadrature(solution.spec, solution.spec.m + 16);
    double l2sq = 0.0;
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
        const double e = exact(rule.nodes[q]) - solution.eval(rule.nodes[q]);
        l2sq += rule.weights[q] * e * e;
    }
    report.l2_squared = l2sq;
    report.l2 = std::sqrt(l2sq);
    return report;
}

double theoretical_bound(const FsideProblem& problem, std::size_t m) {
    problem.validate();
    double kernel_max = 0.0;
    for (int i = 0; i <= 200; ++i) {
        for (int j = 0; j <= 200; ++j) {
            const double s = i / 200.0;
            const double t = j / 200.0;
            kernel_max = std::max(kernel_max, std::abs(problem.k1(s, t)) +
                                                  problem.sigma * std::abs(problem.k2(s, t)));
        }
    }
    const double log_decay = std::lgamma(static_cast<double>(m) + 2.0) +
                             (2.0 * static_cast<double>(m) + 1.0) * std::log(2.0);
    return kernel_max / (gamma_fn(problem.alpha) * std::exp(log_decay));
}

double caputo_of_expansion(const Expansion& f, double alpha, double t) {
    return caputo_poly(f.coeffs, f.spec, alpha, t);
}

double rhs_operational(const FsideProblem& problem, const SolverConfig& config,
                       const BrownianPath& path, const Vector& fbar, double t) {
    const CollocationOperator op(problem, config, path);
    const Vector row = op.integral_row(t);
    double out = op.gbar().eval(t);
    for (std::size_t r = 0; r < row.size(); ++r) out += fbar[r] * row[r];
    return out;
}

double rhs_direct(const FsideProblem& problem, const BrownianPath& path,
                  const Expansion& f, double t) {
    double out = problem.g(t);
    if (t > 0.0) {
        const QuadratureRule rule =
            gauss_quadrature(BasisSpec(0.0, t, f.spec.m), f.spec.m + 8);
        for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
            const double s = rule.nodes[q];
            out += rule.weights[q] * problem.k1(s, t) * f.eval(s);
        }
    }
    if (problem.sigma != 0.0) {
        out += problem.sigma *
               ito_sum_to([&](double s) { return problem.k2(s, t) * f.eval(s); }, path, t);
    }
    return out;
}

FsideProblem make_example1(double alpha, double sigma) {
    const double c = 6.0 / gamma_fn(3.25);
    FsideProblem p;
    p.alpha = alpha;
    p.sigma = sigma;
    p.initial_value = 0.0;
    p.g = [c](double t) { return -std::pow(t, 5) * std::exp(t) / 5.0 + c * std::pow(t, 2.25); };
    p.k1 = [](double s, double t) { return std::exp(t) * s; };
    p.k2 = [](double s, double t) { return std::exp(t) * s; };
    if (sigma == 0.0) {
        p.exact = [](double t) { return t * t * t; };
    }
    return p;
}

FsideProblem make_example2(double alpha, double sigma) {
    FsideProblem p;
    p.alpha = alpha;
    p.sigma = sigma;
    p.initial_value = 0.0;
    const double c = gamma_fn(2.0) / gamma_fn(3.0 - alpha);
    p.g = [c, alpha](double t) { return c * std::pow(t, 1.0 - alpha) + t * t * t / 3.0; };
    p.k1 = [](double s, double) { return s; };
    p.k2 = [](double, double) { return 1.0; };
    return p;
}

FsideProblem make_example(int id, double alpha, double sigma) {
    if (id == 1) return make_example1(alpha, sigma);
    if (id == 2) return make_example2(alpha, sigma);
    throw std::invalid_argument("example id must be 1 or 2");
}

}  // namespace fside
