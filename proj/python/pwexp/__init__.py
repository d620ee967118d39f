"""Invariant densities of the two-dimensional tent map family."""

from ._core import (
    PwexpError,
    apply,
    birkhoff_average,
    branches,
    certify,
    ly_check,
    lyapunov_exponent,
    orbit_stats,
    run_cli,
    stability_sweep,
    tau,
    tent1d_ulam,
    ulam_density,
)

__all__ = [
    "PwexpError",
    "apply",
    "birkhoff_average",
    "branches",
    "certify",
    "ly_check",
    "lyapunov_exponent",
    "orbit_stats",
    "run_cli",
    "stability_sweep",
    "tau",
    "tent1d_ulam",
    "ulam_density",
]
