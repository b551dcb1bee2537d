#pragma once

#include <utility>

namespace fside {

/// Gamma function for real x outside the poles {0, -1, -2, ...}.
/// Lanczos approximation with reflection for x < 0.5; relative error
/// below 1e-12 on [0.1, 30]. Throws std::domain_error at poles and
/// std::overflow_error for x > 170.
double gamma_fn(double x);

/// Ceiling with an exactness guard: values within 1e-12 of an integer
/// are treated as that integer. The Caputo branch structure depends
/// discontinuously on this value.
int ceil_guarded(double alpha);

struct CaputoTerm {
    double coefficient;
    double exponent;
};

/// Caputo derivative of the monomial t^mu of order alpha > 0:
/// zero when mu is a nonnegative integer below ceil(alpha), otherwise
/// (Gamma(mu+1)/Gamma(mu+1-alpha)) * t^(mu-alpha).
CaputoTerm caputo_monomial(double mu, double alpha);

}  // namespace fside
