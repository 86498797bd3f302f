"""Copy-count statistics for inhomogeneous random hypergraphs.

The heavy lifting lives in the compiled extension; this package re-exports
its public surface.
"""

from ._core import (  # noqa: F401
    GuardExceededError,
    Pattern,
    are_isomorphic,
    automorphism_count,
    bounds,
    count_copies,
    dk_empirical,
    dkw_radius,
    dw_empirical,
    enumerate_copies,
    exact_moments,
    hoeffding_check,
    is_edgewise_separable,
    kurtosis_surrogate,
    pmf_oracle,
    remove_isolated_vertices,
    run_sweep,
    simulate,
    standardize,
)

__all__ = [
    "GuardExceededError",
    "Pattern",
    "are_isomorphic",
    "automorphism_count",
    "bounds",
    "count_copies",
    "dk_empirical",
    "dkw_radius",
    "dw_empirical",
    "enumerate_copies",
    "exact_moments",
    "hoeffding_check",
    "is_edgewise_separable",
    "kurtosis_surrogate",
    "pmf_oracle",
    "remove_isolated_vertices",
    "run_sweep",
    "simulate",
    "standardize",
]

__version__ = "0.1.0"
