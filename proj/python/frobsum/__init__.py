"""Empirical densities of prime-factor classes.

Thin wrapper around the compiled core: factor sieves, Mobius partial sums,
factorization patterns mod p, class selectors, checkpointed density series,
smooth-number counts and the exact pmin/pmax duality identities.
"""

from ._core import (
    CapacityError,
    ClassSelector,
    DickmanTable,
    FactorSieve,
    IntPolynomial,
    RangeError,
    __version__,
    classify_prime,
    duality_check,
    euler_phi,
    fit_convergence,
    hildebrand_estimate,
    is_squarefree_mod,
    li,
    max_count,
    max_harmonic,
    min_mobius_sum,
    prime_count_class,
    prime_pi_series,
    psi_exact,
    rho_upper_bound,
    symmetric_density,
    tetris_identity,
)

__all__ = [
    "CapacityError",
    "ClassSelector",
    "DickmanTable",
    "FactorSieve",
    "IntPolynomial",
    "RangeError",
    "__version__",
    "classify_prime",
    "duality_check",
    "euler_phi",
    "fit_convergence",
    "hildebrand_estimate",
    "is_squarefree_mod",
    "li",
    "max_count",
    "max_harmonic",
    "min_mobius_sum",
    "prime_count_class",
    "prime_pi_series",
    "psi_exact",
    "rho_upper_bound",
    "symmetric_density",
    "tetris_identity",
]
