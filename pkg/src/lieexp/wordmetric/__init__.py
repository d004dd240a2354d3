"""Exact word lengths on Cayley graphs of integer matrix groups and
asymptotic checks on the resulting tables."""

from __future__ import annotations

from ._kernels import BACKENDS, default_backend
from .analysis import (
    AdditivityReport,
    FitResult,
    Samples,
    check_semidirect_additivity,
    fit_asymptotics,
    sample_lengths,
    sample_subgroup,
)
from .ball import DEFAULT_MAX_STATES, BallTable, bfs_ball
from .presets import PRESETS, MatrixGroupPresentation, SemidirectSplit, matrix_key, preset, sol_orbit

__all__ = [
    "BACKENDS",
    "DEFAULT_MAX_STATES",
    "PRESETS",
    "AdditivityReport",
    "BallTable",
    "FitResult",
    "MatrixGroupPresentation",
    "Samples",
    "SemidirectSplit",
    "bfs_ball",
    "check_semidirect_additivity",
    "default_backend",
    "fit_asymptotics",
    "matrix_key",
    "preset",
    "sample_lengths",
    "sample_subgroup",
    "sol_orbit",
]
