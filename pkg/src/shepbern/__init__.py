"""Bivariate scattered-data interpolation by blended local polynomial operators."""

from .errors import (
    AssociationError,
    CoverageError,
    FitError,
    GeometryError,
    ShepBernError,
)
from .interp import GridSpec, build, eval_grid, eval_point, load_model, max_error, save_model

__all__ = [
    "AssociationError",
    "CoverageError",
    "FitError",
    "GeometryError",
    "GridSpec",
    "ShepBernError",
    "build",
    "eval_grid",
    "eval_point",
    "load_model",
    "max_error",
    "save_model",
]

__version__ = "0.1.0"
