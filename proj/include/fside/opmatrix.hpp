#pragma once

#include "fside/legendre.hpp"
#include "fside/linalg.hpp"

namespace fside {

/// Operational matrix of derivative Lambda: D psi(x) = Lambda psi(x).
/// On [0,1] row i carries 2(2j+1) at j = i-1, i-3, ...
Matrix derivative_matrix(const BasisSpec& spec);

/// Operational matrix of the Caputo derivative of order alpha on [0,1]:
/// D^alpha psi(x) ~ D_alpha psi(x). Rows 0 .. ceil(alpha)-1 are zero.
/// Results are cached per (m, alpha); the cache is lock-protected.
Matrix caputo_matrix(const BasisSpec& spec, double alpha);

/// 1-D integration matrix P: integral_a^x psi(s) ds ~ P psi(x).
/// Row 0 = [(b-a)/2, (b-a)/2, 0, ...]; row i has -(b-a)/(2(2i+1)) at
/// i-1 and +(b-a)/(2(2i+1)) at i+1; the last row is truncated.
Matrix integration_matrix_1d(const BasisSpec& spec);

/// Partial integration of the 2-D basis vector in x: kron(P_x, I).
Matrix q3_matrix(const BasisSpec& spec_x, const BasisSpec& spec_t);

/// Partial integration of the 2-D basis vector in t: kron(I, P_t),
/// block-diagonal with the 1-D integration stencil.
Matrix q4_matrix(const BasisSpec& spec_x, const BasisSpec& spec_t);

/// Double-integration matrix W = kron(Q1, Q2) for the iterated integral
/// of the 2-D basis.
Matrix w_matrix(const BasisSpec& spec_x, const BasisSpec& spec_t);

}  // namespace fside
