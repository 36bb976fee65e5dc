"""Grid-based checks of L_p Brunn-Minkowski type inequalities."""

from ._lpbm import (
    CheckReport,
    ConfigError,
    __version__,
    check,
    estimate_gz_constant,
    generalized_mean,
    lambda_nodes,
    lp_weights,
    sup_convolution_1d,
    surface_area_1d,
    sweep,
    theorem_ids,
    to_csv,
)

__all__ = [
    "CheckReport",
    "ConfigError",
    "__version__",
    "check",
    "estimate_gz_constant",
    "generalized_mean",
    "lambda_nodes",
    "lp_weights",
    "sup_convolution_1d",
    "surface_area_1d",
    "sweep",
    "theorem_ids",
    "to_csv",
]
