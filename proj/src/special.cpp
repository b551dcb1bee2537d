#include "fside/special.hpp"

#include <cmath>
#include <stdexcept>

namespace fside {

namespace {

// Lanczos g = 7, 9 coefficients.
constexpr double kLanczos[9] = {
    0.99999999999980993,      676.5203681218851,     -1259.1392167224028,
    771.32342877765313,       -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,     9.9843695780195716e-6, 1.5056327351493116e-7};

constexpr double kPi = 3.141592653589793238462643383279502884;

bool is_nonpositive_integer(double x) {
    return x <= 0.0 && x == std::floor(x);
}

double gamma_lanczos(double x) {
    // Valid for x >= 0.5.
    const double z = x - 1.0;
    double a = kLanczos[0];
    for (int i = 1; i < 9; ++i) a += kLanczos[i] / (z + i);
    const double t = z + 7.5;
    return std::sqrt(2.0 * kPi) * std::pow(t, z + 0.5) * std::exp(-t) * a;
}

}  // namespace

double gamma_fn(double x) {
    if (is_nonpositive_integer(x)) {
        throw std::domain_error("gamma: pole at non-positive integer");
    }
    if (x > 170.0) {
        throw std::overflow_error("gamma: argument too large");
    }
    if (x < 0.5) {
        // Reflection: Gamma(x) = pi / (sin(pi x) Gamma(1-x)).
        return kPi / (std::sin(kPi * x) * gamma_lanczos(1.0 - x));
    }
    return gamma_lanczos(x);
}

int ceil_guarded(double alpha) {
    const double nearest = std::round(alpha);
    if (std::abs(alpha - nearest) < 1e-12) return static_cast<int>(nearest);
    return static_cast<int>(std::ceil(alpha));
}

CaputoTerm caputo_monomial(double mu, double alpha) {
    if (mu < 0.0) throw std::domain_error("caputo_monomial: mu must be >= 0");
    if (alpha <= 0.0) throw std::domain_error("caputo_monomial: alpha must be > 0");
    const int n = ceil_guarded(alpha);
    const bool mu_integer = std::abs(mu - std::round(mu)) < 1e-12;
    if (mu_integer && std::lround(mu) < n) {
        return {0.0, 0.0};
    }
    return {gamma_fn(mu + 1.0) / gamma_fn(mu + 1.0 - alpha), mu - alpha};
}

}  // namespace fside
