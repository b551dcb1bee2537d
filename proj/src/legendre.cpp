#include "fside/legendre.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fside {

namespace {

// Map x in [a,b] to the canonical Legendre variable in [-1,1].
double to_canonical(const BasisSpec& spec, double x) {
    return (2.0 * x - (spec.a + spec.b)) / (spec.b - spec.a);
}

// Legendre values L_0..L_n at u via the three-term recurrence.
std::vector<double> legendre_values(double u, std::size_t n) {
    std::vector<double> l(n + 1);
    l[0] = 1.0;
    if (n >= 1) l[1] = u;
    for (std::size_t i = 1; i < n; ++i) {
        l[i + 1] = ((2.0 * i + 1.0) * u * l[i] - static_cast<double>(i) * l[i - 1]) /
                   (static_cast<double>(i) + 1.0);
    }
    return l;
}

// L_n(u) and L_n'(u) for a single degree.
std::pair<double, double> legendre_value_derivative(double u, std::size_t n) {
    double p0 = 1.0, p1 = u, d0 = 0.0, d1 = 1.0;
    if (n == 0) return {1.0, 0.0};
    for (std::size_t i = 1; i < n; ++i) {
        const double p2 = ((2.0 * i + 1.0) * u * p1 - static_cast<double>(i) * p0) /
                          (static_cast<double>(i) + 1.0);
        const double d2 = d0 + (2.0 * i + 1.0) * p1;  // L'_{i+1} = L'_{i-1} + (2i+1) L_i
        p0 = p1; p1 = p2; d0 = d1; d1 = d2;
    }
    return {p1, d1};
}

void check_domain(const BasisSpec& spec, double x) {
    const double slack = 1e-12 * (spec.b - spec.a);
    if (x < spec.a - slack || x > spec.b + slack) {
        throw std::domain_error("evaluation point outside basis interval");
    }
}

}  // namespace

BasisSpec::BasisSpec(double a_, double b_, std::size_t m_) : a(a_), b(b_), m(m_) {
    if (!(b > a)) throw std::invalid_argument("BasisSpec: requires b > a");
    if (m < 1) throw std::invalid_argument("BasisSpec: requires m >= 1");
}

double Expansion::eval(double x) const {
    const Vector psi = eval_basis_vector(spec, x);
    double s = 0.0;
    for (std::size_t j = 0; j < psi.size(); ++j) s += coeffs[j] * psi[j];
    return s;
}

double Expansion2D::eval(double x, double t) const {
    const Vector px = eval_basis_vector(spec_x, x);
    const Vector pt = eval_basis_vector(spec_t, t);
    double s = 0.0;
    for (std::size_t r = 0; r < px.size(); ++r)
        for (std::size_t q = 0; q < pt.size(); ++q)
            s += coeffs[r * pt.size() + q] * px[r] * pt[q];
    return s;
}

double eval_basis(const BasisSpec& spec, std::size_t i, double x) {
    if (i > spec.m) throw std::domain_error("basis index exceeds truncation degree");
    check_domain(spec, x);
    return legendre_values(to_canonical(spec, x), i)[i];
}

Vector eval_basis_vector(const BasisSpec& spec, double x) {
    check_domain(spec, x);
    return legendre_values(to_canonical(spec, x), spec.m);
}

Vector eval_basis_derivative_vector(const BasisSpec& spec, double x) {
    check_domain(spec, x);
    const double u = to_canonical(spec, x);
    const double scale = 2.0 / (spec.b - spec.a);
    const std::vector<double> l = legendre_values(u, spec.m);
    Vector d(spec.m + 1, 0.0);
    if (spec.m >= 1) d[1] = 1.0;
    for (std::size_t i = 1; i < spec.m; ++i) d[i + 1] = d[i - 1] + (2.0 * i + 1.0) * l[i];
    for (double& v : d) v *= scale;
    return d;
}

std::vector<double> basis_roots(const BasisSpec& spec, std::size_t k) {
    if (k < 1 || k > spec.m + 1) throw std::invalid_argument("basis_roots: need 1 <= k <= m+1");
    constexpr double kPi = 3.141592653589793238462643383279502884;
    std::vector<double> roots(k);
    for (std::size_t i = 0; i < k; ++i) {
        // Chebyshev-angle seed, then Newton; the roots of L_k interlace
        // tightly with these seeds for all k of interest.
        double z = std::cos(kPi * (static_cast<double>(i) + 0.75) /
                            (static_cast<double>(k) + 0.5));
        bool converged = false;
        for (int it = 0; it < 100; ++it) {
            const auto [p, dp] = legendre_value_derivative(z, k);
            const double z1 = z - p / dp;
            if (std::abs(z1 - z) < 1e-15) {
                z = z1;
                converged = true;
                break;
            }
            z = z1;
        }
        if (!converged || !(z > -1.0 && z < 1.0)) {
            // Bisection fallback over a bracket around the seed.
            double lo = std::cos(kPi * (static_cast<double>(i) + 1.0) /
                                 (static_cast<double>(k) + 0.5));
            double hi = std::cos(kPi * (static_cast<double>(i) + 0.5) /
                                 (static_cast<double>(k) + 0.5));
            lo = std::max(lo, -1.0);
            hi = std::min(hi, 1.0);
            double flo = legendre_value_derivative(lo, k).first;
            if (flo * legendre_value_derivative(hi, k).first > 0.0) {
                throw std::runtime_error("basis_roots: failed to bracket root");
            }
            for (int it = 0; it < 200; ++it) {
                const double mid = 0.5 * (lo + hi);
                const double fm = legendre_value_derivative(mid, k).first;
                if (flo * fm <= 0.0) hi = mid; else { lo = mid; flo = fm; }
            }
            z = 0.5 * (lo + hi);
        }
        roots[i] = spec.a + 0.5 * (spec.b - spec.a) * (z + 1.0);
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

QuadratureRule gauss_quadrature(const BasisSpec& spec, std::size_t n) {
    if (n < 1) throw std::invalid_argument("gauss_quadrature: need n >= 1");
    constexpr double kPi = 3.141592653589793238462643383279502884;
    QuadratureRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const double xm = 0.5 * (spec.a + spec.b);
    const double xl = 0.5 * (spec.b - spec.a);
    const std::size_t half = (n + 1) / 2;
    for (std::size_t i = 0; i < half; ++i) {
        double z = std::cos(kPi * (static_cast<double>(i) + 0.75) /
                            (static_cast<double>(n) + 0.5));
        double dp = 1.0;
        for (int it = 0; it < 100; ++it) {
            const auto [p, d] = legendre_value_derivative(z, n);
            dp = d;
            const double z1 = z - p / d;
            if (std::abs(z1 - z) < 1e-15) { z = z1; break; }
            z = z1;
        }
        dp = legendre_value_derivative(z, n).second;
        const double w = 2.0 / ((1.0 - z * z) * dp * dp);
        rule.nodes[i] = xm - xl * z;
        rule.nodes[n - 1 - i] = xm + xl * z;
        rule.weights[i] = xl * w;
        rule.weights[n - 1 - i] = xl * w;
    }
    std::sort(rule.nodes.begin(), rule.nodes.end());
    return rule;
}

Expansion project(const BasisSpec& spec, const std::function<double(double)>& u,
                  std::size_t quad_nodes) {
    const std::size_t n = quad_nodes == 0 ? spec.m + 8 : quad_nodes;
    const QuadratureRule rule = gauss_quadrature(spec, n);
    Expansion e{spec, Vector(spec.m + 1, 0.0)};
    for (std::size_t q = 0; q < n; ++q) {
        const double uv = u(rule.nodes[q]) * rule.weights[q];
        const Vector psi = eval_basis_vector(spec, rule.nodes[q]);
        for (std::size_t j = 0; j <= spec.m; ++j) e.coeffs[j] += uv * psi[j];
    }
    for (std::size_t j = 0; j <= spec.m; ++j) {
        e.coeffs[j] *= (2.0 * static_cast<double>(j) + 1.0) / (spec.b - spec.a);
    }
    return e;
}

Expansion2D project_2d(const BasisSpec& spec_x, const BasisSpec& spec_t,
                       const std::function<double(double, double)>& u,
                       std::size_t quad_nodes) {
    const std::size_t nx = quad_nodes == 0 ? spec_x.m + 8 : quad_nodes;
    const std::size_t nt = quad_nodes == 0 ? spec_t.m + 8 : quad_nodes;
    const QuadratureRule rx = gauss_quadrature(spec_x, nx);
    const QuadratureRule rt = gauss_quadrature(spec_t, nt);
    const std::size_t szt = spec_t.m + 1;
    Expansion2D e{spec_x, spec_t, Vector((spec_x.m + 1) * szt, 0.0)};
    for (std::size_t qx = 0; qx < nx; ++qx) {
        const Vector px = eval_basis_vector(spec_x, rx.nodes[qx]);
        for (std::size_t qt = 0; qt < nt; ++qt) {
            const Vector pt = eval_basis_vector(spec_t, rt.nodes[qt]);
            const double uv = u(rx.nodes[qx], rt.nodes[qt]) * rx.weights[qx] * rt.weights[qt];
            for (std::size_t r = 0; r <= spec_x.m; ++r)
                for (std::size_t s = 0; s <= spec_t.m; ++s)
                    e.coeffs[r * szt + s] += uv * px[r] * pt[s];
        }
    }
    for (std::size_t r = 0; r <= spec_x.m; ++r)
        for (std::size_t s = 0; s <= spec_t.m; ++s)
            e.coeffs[r * szt + s] *= (2.0 * r + 1.0) * (2.0 * s + 1.0) /
                                     ((spec_x.b - spec_x.a) * (spec_t.b - spec_t.a));
    return e;
}

Matrix phi_block_matrix(const BasisSpec& spec, double t) {
    check_domain(spec, t);
    const Vector psi = eval_basis_vector(spec, t);
    const std::size_t sz = spec.m + 1;
    Matrix phi(sz, sz * sz);
    for (std::size_t r = 0; r < sz; ++r)
        for (std::size_t s = 0; s < sz; ++s) phi(r, r * sz + s) = psi[s];
    return phi;
}

Matrix multiplication_matrix(const BasisSpec& spec, std::size_t r) {
    if (r > spec.m) throw std::invalid_argument("multiplication_matrix: index out of range");
    const std::size_t sz = spec.m + 1;
    // Triple-product integrals; integrand degree <= 3m.
    const QuadratureRule rule = gauss_quadrature(spec, 2 * spec.m + 2);
    Matrix mat(sz, sz);
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
        const Vector psi = eval_basis_vector(spec, rule.nodes[q]);
        const double pr = psi[r] * rule.weights[q];
        for (std::size_t p = 0; p < sz; ++p)
            for (std::size_t j = 0; j < sz; ++j) mat(p, j) += pr * psi[p] * psi[j];
    }
    for (std::size_t p = 0; p < sz; ++p)
        for (std::size_t j = 0; j < sz; ++j)
            mat(p, j) *= (2.0 * p + 1.0) / (spec.b - spec.a);
    return mat;
}

std::vector<double> monomial_coefficients_01(std::size_t i) {
    // c_k = (-1)^(i+k) (i+k)! / ((i-k)! (k!)^2), built multiplicatively.
    std::vector<double> c(i + 1);
    double v = (i % 2 == 0) ? 1.0 : -1.0;
    c[0] = v;
    for (std::size_t k = 0; k < i; ++k) {
        // Multiply before dividing: the intermediate and the quotient are
        // exact integers, while pre-rounding the ratio loses the last bits.
        v = -v * static_cast<double>((i + k + 1) * (i - k)) /
            (static_cast<double>(k + 1) * static_cast<double>(k + 1));
        c[k + 1] = v;
    }
    return c;
}

}  // namespace fside
