"""Spectral collocation solver for fractional stochastic
integro-differential equations on [0, 1]."""

from ._fside import (
    brownian_path,
    caputo_matrix,
    derivative_matrix,
    fbm_path,
    gamma,
    gbm_path,
    integration_matrix,
    legendre,
    legendre_roots,
    solve,
    solve_ensemble,
    solve_example,
    theoretical_bound,
)

__all__ = [
    "brownian_path",
    "caputo_matrix",
    "derivative_matrix",
    "fbm_path",
    "gamma",
    "gbm_path",
    "integration_matrix",
    "legendre",
    "legendre_roots",
    "solve",
    "solve_ensemble",
    "solve_example",
    "theoretical_bound",
]
