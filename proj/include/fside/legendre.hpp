#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "fside/linalg.hpp"

namespace fside {

/// Shifted Legendre basis on [a, b], polynomials P_0 .. P_m.
struct BasisSpec {
    double a = 0.0;
    double b = 1.0;
    std::size_t m = 1;

    BasisSpec() = default;
    BasisSpec(double a_, double b_, std::size_t m_);

    std::size_t size() const noexcept { return m + 1; }
};

struct Expansion {
    BasisSpec spec;
    Vector coeffs;  // length m+1

    double eval(double x) const;
};

/// Coefficients of a bivariate expansion sum_{r,s} c_{r,s} P_r(x) P_s(t),
/// flattened row-major in (r, s).
struct Expansion2D {
    BasisSpec spec_x;
    BasisSpec spec_t;
    Vector coeffs;  // length (m_x+1)*(m_t+1)

    double eval(double x, double t) const;
};

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// P_i(x) via the three-term recurrence. Throws std::domain_error for x
/// outside [a, b] or i > m.
double eval_basis(const BasisSpec& spec, std::size_t i, double x);

/// psi(x) = [P_0(x), ..., P_m(x)].
Vector eval_basis_vector(const BasisSpec& spec, double x);

/// d/dx of every basis polynomial at x (used by root finding and tests).
Vector eval_basis_derivative_vector(const BasisSpec& spec, double x);

/// The k real roots of P_k on (a, b), strictly increasing. Newton from
/// Chebyshev-angle seeds with bisection fallback.
std::vector<double> basis_roots(const BasisSpec& spec, std::size_t k);

/// Gauss-Legendre rule with n nodes on [a, b]; exact through degree 2n-1.
QuadratureRule gauss_quadrature(const BasisSpec& spec, std::size_t n);

/// Orthogonal projection of u onto the basis: coeffs[j] =
/// (2j+1)/(b-a) * integral of u*P_j, with Gauss quadrature at m+8 nodes
/// (exact for polynomial u of degree <= m).
Expansion project(const BasisSpec& spec, const std::function<double(double)>& u,
                  std::size_t quad_nodes = 0);

/// Tensor-product projection of a bivariate function; ordering matches
/// Expansion2D.
Expansion2D project_2d(const BasisSpec& spec_x, const BasisSpec& spec_t,
                       const std::function<double(double, double)>& u,
                       std::size_t quad_nodes = 0);

/// The (m+1) x (m+1)^2 block matrix Phi(t): row r carries psi(t)^T in
/// columns r*(m+1) .. r*(m+1)+m. psi(x)^T Phi(t) cbar evaluates the
/// flattened bivariate expansion at (x, t).
Matrix phi_block_matrix(const BasisSpec& spec, double t);

/// Multiplication operational matrix of P_r: column q of the result holds
/// the degree-m truncated coefficients of P_r * P_q, so coefficients of
/// P_r * v are M * vbar.
Matrix multiplication_matrix(const BasisSpec& spec, std::size_t r);

/// Monomial coefficients of P_i on [0,1] (closed form), c[k] multiplying x^k.
std::vector<double> monomial_coefficients_01(std::size_t i);

}  // namespace fside
