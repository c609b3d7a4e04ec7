"""Quadratic Gauss sums, the Jacobi theta function near the real axis, and the
pointwise behavior of Riemann's function phi(x) = sum e(n^2 x) / (2 pi i n^2)."""

from ._riemannphi import (
    alpha_from_tau,
    continued_fraction,
    epsilon_factor,
    estimate_alpha,
    expansion,
    gauss_sum,
    gauss_sum_brute,
    gauss_sum_general,
    get_precision,
    is_differentiable_f,
    jacobi_symbol,
    phi,
    phi_increment,
    predicted_alpha,
    remainder,
    riemann_f,
    set_precision,
    tau_estimate,
    theta,
    theta_direct,
    theta_near_rational,
    twisted_phi,
    witness_check,
)

__all__ = [
    "alpha_from_tau",
    "continued_fraction",
    "epsilon_factor",
    "estimate_alpha",
    "expansion",
    "gauss_sum",
    "gauss_sum_brute",
    "gauss_sum_general",
    "get_precision",
    "is_differentiable_f",
    "jacobi_symbol",
    "phi",
    "phi_increment",
    "predicted_alpha",
    "remainder",
    "riemann_f",
    "set_precision",
    "tau_estimate",
    "theta",
    "theta_direct",
    "theta_near_rational",
    "twisted_phi",
    "witness_check",
]
