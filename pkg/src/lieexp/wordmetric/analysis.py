"""Sampling word lengths along element families, asymptotic fits, and the
additivity sandwich for a split ``G = N ⋊ H``.

Fits are the only floating-point computations in the package.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from ..errors import InputError, ValidationError
from .ball import BallTable
from .presets import MatrixGroupPresentation

__all__ = [
    "Samples",
    "FitResult",
    "AdditivityReport",
    "sample_lengths",
    "sample_subgroup",
    "fit_asymptotics",
    "check_semidirect_additivity",
    "MIN_SAMPLES",
]

log = logging.getLogger(__name__)

MIN_SAMPLES = 8


@dataclass
class Samples:
    """Pairs ``(x, ell)`` sorted by ``x``; ``missing`` lists parameters whose
    element was not in the table."""

    family: str
    x: np.ndarray
    lengths: np.ndarray
    params: list[int] = field(default_factory=list)
    missing: list[int] = field(default_factory=list)

    def __len__(self):
        return len(self.x)

    def notice(self) -> str | None:
        if not self.missing:
            return None
        lo, hi = min(self.missing), max(self.missing)
        return f"{len(self.missing)} parameter values outside the ball skipped (range {lo}..{hi})"

    def as_dict(self) -> dict:
        return {
            "family": self.family,
            "count": len(self),
            "x": [float(v) for v in self.x],
            "lengths": [int(v) for v in self.lengths],
            "skipped": len(self.missing),
        }


def sample_lengths(table: BallTable, family, n_values, name: str = "family") -> Samples:
    """Look up ``g(n)`` for each ``n``; ``family(n)`` returns ``(x(n), g(n))``."""
    params, xs, mats = [], [], []
    for n in n_values:
        x, m = family(n)
        params.append(int(n))
        xs.append(x)
        mats.append(np.asarray(m, dtype=np.int64).ravel())
    if not mats:
        return Samples(name, np.zeros(0), np.zeros(0, dtype=np.int64))
    lengths = table.lookup_many(np.stack(mats))
    hit = lengths >= 0
    missing = [p for p, h in zip(params, hit) if not h]
    if missing:
        log.info("%s: %d elements not tabled at radius %d", name, len(missing), table.radius)
    xs = np.asarray(xs, dtype=float)[hit]
    kept = [p for p, h in zip(params, hit) if h]
    order = np.argsort(xs, kind="stable")
    return Samples(name, xs[order], lengths[hit][order], [kept[i] for i in order], missing)


def sample_subgroup(table: BallTable, p: MatrixGroupPresentation) -> Samples:
    """Every tabled non-identity element of the declared normal subgroup."""
    if p.split is None:
        raise InputError(f"preset {p.name!r} declares no subgroup")
    mask = p.split.in_normal(table.keys) & (table.lengths > 0)
    xs = p.split.normal_size(table.keys[mask])
    lengths = table.lengths[mask]
    order = np.lexsort((lengths, xs))
    return Samples("subgroup", xs[order], lengths[order])


@dataclass(frozen=True)
class FitResult:
    """``power``: ell ≈ alpha * x^beta, fitted in log-log coordinates.
    ``log``: ell ≈ alpha * log(1 + x) + gamma, fitted in (log(1 + x), ell).

    ``residual`` is the root-mean-square error in the fitting coordinates
    (log ell for the power model, ell for the log model).
    """

    model: str
    parameters: dict[str, float]
    residual: float
    sample_count: int

    @property
    def slope(self) -> float:
        return self.parameters["beta" if self.model == "power" else "alpha"]

    def as_dict(self) -> dict:
        return {
            "model": self.model,
            "parameters": {k: round(v, 12) for k, v in self.parameters.items()},
            "residual": round(self.residual, 12),
            "sample_count": self.sample_count,
        }


def fit_asymptotics(x, lengths, model: str = "power") -> FitResult:
    """Least-squares fit of ``lengths`` against ``x`` in linearizing coordinates.

    Repeated ``x`` values are allowed (several elements of the same size);
    the samples must contain at least two distinct ``x``.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(lengths, dtype=float)
    if x.shape != y.shape or x.ndim != 1:
        raise InputError("x and lengths must be 1-d arrays of equal length")
    if len(x) < MIN_SAMPLES:
        raise InputError(f"need at least {MIN_SAMPLES} samples, got {len(x)}")
    if len(np.unique(x)) < 2:
        raise InputError("need at least two distinct x values")
    if model == "power":
        if np.any(x <= 0) or np.any(y <= 0):
            raise InputError("power fit needs positive x and lengths")
        u, v = np.log(x), np.log(y)
    elif model == "log":
        if np.any(x < 0):
            raise InputError("log fit needs non-negative x")
        u, v = np.log1p(x), y
    else:
        raise InputError(f"unknown model {model!r}; choose power or log")
    design = np.column_stack([u, np.ones_like(u)])
    (slope, icept), *_ = np.linalg.lstsq(design, v, rcond=None)
    resid = float(np.sqrt(np.mean((design @ np.array([slope, icept]) - v) ** 2)))
    if model == "power":
        params = {"alpha": float(np.exp(icept)), "beta": float(slope)}
    else:
        params = {"alpha": float(slope), "gamma": float(icept)}
    return FitResult(model, params, resid, len(x))


@dataclass(frozen=True)
class AdditivityReport:
    """Empirical sandwich ``s/C - D <= ell(nh) <= C s + D`` with ``s = ell(n) + ell_1(h)``.

    ``constants`` maps each tried ``D`` to the least ``C`` that works for it.
    """

    preset: str
    normal: str
    pairs: int
    skipped: int
    C: float
    D: int
    constants: dict[int, float]
    max_ratio_up: float
    max_ratio_down: float

    def as_dict(self) -> dict:
        return {
            "preset": self.preset,
            "normal_subgroup": self.normal,
            "pairs": self.pairs,
            "skipped_untabled_n": self.skipped,
            "C": round(self.C, 12),
            "D": self.D,
            "C_for_D": {str(d): round(c, 12) for d, c in self.constants.items()},
            "max_ell_over_sum": round(self.max_ratio_up, 12),
            "max_sum_over_ell": round(self.max_ratio_down, 12),
        }


def _least_c(ell: np.ndarray, s: np.ndarray, d: int) -> float:
    # need C >= (ell - D) / s and C >= s / (ell + D); s = 0 only for the identity
    upper = np.max((ell - d) / s)
    lower = np.max(s / (ell + d)) if d or np.all(ell > 0) else np.inf
    return float(max(1.0, upper, lower))


def check_semidirect_additivity(
    p: MatrixGroupPresentation, table: BallTable, d_values=(0, 1, 2, 4)
) -> AdditivityReport:
    """Compare ``ell(nh)`` with ``ell(n) + ell_1(h)`` over the whole table.

    Every element is split as ``n * sigma(h)``; pairs whose ``n`` falls
    outside the ball are skipped. The headline ``(C, D)`` uses ``D = 0``.
    """
    if p.split is None:
        raise InputError(f"preset {p.name!r} declares no split")
    keys = table.keys[1:]  # drop the identity
    ell = table.lengths[1:]
    n, h_len = p.split.decompose(keys)
    if not np.all(p.split.in_normal(n)):
        bad = keys[~p.split.in_normal(n)][0]
        raise ValidationError(f"split classifier inconsistent for element {bad.tolist()}")
    n_len = table.lookup_many(n)
    ok = n_len >= 0
    s = (n_len + h_len)[ok].astype(float)
    e = ell[ok].astype(float)
    if len(s) == 0:
        raise InputError("no tabled pairs to compare; increase the radius")
    constants = {int(dv): _least_c(e, s, int(dv)) for dv in d_values}
    return AdditivityReport(
        preset=p.name,
        normal=p.split.normal_name,
        pairs=int(ok.sum()),
        skipped=int((~ok).sum()),
        C=constants.get(0, _least_c(e, s, 0)),
        D=0,
        constants=constants,
        max_ratio_up=float(np.max(e / s)),
        max_ratio_down=float(np.max(s / e)),
    )
