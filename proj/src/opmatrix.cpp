#include "fside/opmatrix.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

#include "fside/special.hpp"

namespace fside {

Matrix derivative_matrix(const BasisSpec& spec) {
    const std::size_t sz = spec.size();
    const double scale = 2.0 / (spec.b - spec.a);
    Matrix lambda(sz, sz);
    for (std::size_t i = 1; i < sz; ++i) {
        // Parity stencil: dP_i is a combination of P_{i-1}, P_{i-3}, ...
        for (std::size_t j = i - 1;; j -= 2) {
            lambda(i, j) = scale * (2.0 * static_cast<double>(j) + 1.0);
            if (j < 2) break;
        }
    }
    return lambda;
}

namespace {

double caputo_theta(std::size_t i, std::size_t j, std::size_t k, double alpha) {
    // theta_{i,j,k} = (2j+1) sum_l (-1)^{i+j+k+l} (i+k)! (l+j)! /
    //   [(i-k)! k! Gamma(k-alpha+1) (j-l)! (l!)^2 (k+l-alpha+1)]
    // Factorials through log-Gamma; (i+k)! reaches 21! already at m = 10.
    // The alternating sum cancels heavily, so accumulate in long double.
    long double sum = 0.0L;
    const long double a = static_cast<long double>(alpha);
    for (std::size_t l = 0; l <= j; ++l) {
        const long double log_num = lgammal(static_cast<long double>(i + k) + 1.0L) +
                                    lgammal(static_cast<long double>(l + j) + 1.0L);
        const long double log_den = lgammal(static_cast<long double>(i - k) + 1.0L) +
                                    lgammal(static_cast<long double>(k) + 1.0L) +
                                    lgammal(static_cast<long double>(k) - a + 1.0L) +
                                    lgammal(static_cast<long double>(j - l) + 1.0L) +
                                    2.0L * lgammal(static_cast<long double>(l) + 1.0L);
        const long double term = expl(log_num - log_den) /
                                 (static_cast<long double>(k + l) - a + 1.0L);
        sum += ((i + j + k + l) % 2 == 0) ? term : -term;
    }
    return static_cast<double>((2.0L * static_cast<long double>(j) + 1.0L) * sum);
}

Matrix caputo_matrix_build(std::size_t m, double alpha) {
    const std::size_t sz = m + 1;
    const int n = ceil_guarded(alpha);
    Matrix d(sz, sz);
    for (std::size_t i = static_cast<std::size_t>(n); i < sz; ++i)
        for (std::size_t j = 0; j < sz; ++j) {
            double s = 0.0;
            for (std::size_t k = static_cast<std::size_t>(n); k <= i; ++k)
                s += caputo_theta(i, j, k, alpha);
            d(i, j) = s;
        }
    d.check_finite("caputo_matrix");
    return d;
}

std::mutex g_caputo_mutex;
std::map<std::pair<std::size_t, double>, Matrix> g_caputo_cache;

}  // namespace

Matrix caputo_matrix(const BasisSpec& spec, double alpha) {
    if (alpha <= 0.0) throw std::domain_error("caputo_matrix: alpha must be > 0");
    if (std::abs(spec.a) > 1e-12 || std::abs(spec.b - 1.0) > 1e-12) {
        throw std::domain_error("caputo_matrix: basis must live on [0,1]");
    }
    const auto key = std::make_pair(spec.m, alpha);
    std::lock_guard<std::mutex> lock(g_caputo_mutex);
    auto it = g_caputo_cache.find(key);
    if (it == g_caputo_cache.end()) {
        it = g_caputo_cache.emplace(key, caputo_matrix_build(spec.m, alpha)).first;
    }
    return it->second;
}

Matrix integration_matrix_1d(const BasisSpec& spec) {
    const std::size_t sz = spec.size();
    const double h = 0.5 * (spec.b - spec.a);
    Matrix p(sz, sz);
    p(0, 0) = h;
    if (sz > 1) p(0, 1) = h;
    for (std::size_t i = 1; i < sz; ++i) {
        const double c = h / (2.0 * static_cast<double>(i) + 1.0);
        p(i, i - 1) = -c;
        if (i + 1 < sz) p(i, i + 1) = c;  // P_{m+1} term truncated on the last row
    }
    return p;
}

Matrix q3_matrix(const BasisSpec& spec_x, const BasisSpec& spec_t) {
    if (spec_x.m != spec_t.m) throw std::invalid_argument("q3_matrix: degrees must match");
    return kron(integration_matrix_1d(spec_x), Matrix::identity(spec_t.size()));
}

Matrix q4_matrix(const BasisSpec& spec_x, const BasisSpec& spec_t) {
    if (spec_x.m != spec_t.m) throw std::invalid_argument("q4_matrix: degrees must match");
    return kron(Matrix::identity(spec_x.size()), integration_matrix_1d(spec_t));
}

Matrix w_matrix(const BasisSpec& spec_x, const BasisSpec& spec_t) {
    if (spec_x.m != spec_t.m) throw std::invalid_argument("w_matrix: degrees must match");
    return kron(integration_matrix_1d(spec_x), integration_matrix_1d(spec_t));
}

}  // namespace fside
