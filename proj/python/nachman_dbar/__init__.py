"""D-bar reconstruction toolkit for the 2-D inverse conductivity problem."""

import json

from ._core import (
    ArgumentError,
    Conductivity,
    DomainError,
    ResolutionError,
    ScatteringTransform,
    SolverError,
    UnsupportedPhantomError,
    dn_matrix,
    exp_trace,
    faddeev_G,
    faddeev_g,
    operator_norm_h12,
    radial_dn_eigenvalue,
    reconstruct,
    scattering_transform,
    tau,
)
from ._core import convergence_study as _convergence_study


def convergence_study(base, n_values=(2, 4, 8, 16, 32), kset=(1 + 0j,), levels=1):
    """Convergence report for the monotone smoothing sequence of `base`, as a dict."""
    return json.loads(_convergence_study(base, list(n_values), list(kset), levels))


__all__ = [
    "ArgumentError",
    "Conductivity",
    "DomainError",
    "ResolutionError",
    "ScatteringTransform",
    "SolverError",
    "UnsupportedPhantomError",
    "convergence_study",
    "dn_matrix",
    "exp_trace",
    "faddeev_G",
    "faddeev_g",
    "operator_norm_h12",
    "radial_dn_eigenvalue",
    "reconstruct",
    "scattering_transform",
    "tau",
]
