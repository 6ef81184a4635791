"""Sampled sup-type norms and little-space boundary profiles.

Every estimate is a maximum over grid points, hence a lower bound for the
true supremum.  For norms with point terms at the origin (``|f(0)|`` and
``|grad f(0)|``) those terms are kept in ``offset``; ``sup`` is the sampled
supremum and ``value = offset + sup``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .geometry import SamplingGrid, ball_norm

__all__ = [
    "Classification",
    "Thresholds",
    "NormEstimate",
    "ProfileReport",
    "estimate_sup",
    "bloch_seminorm",
    "bloch_norm",
    "zygmund_norm",
    "sup_norm",
    "little_space_profile",
    "classify_decay",
    "classify_growth",
    "weight",
]


class Classification(str, Enum):
    FINITE = "Finite"
    DIVERGENT = "Divergent"
    VANISHING = "Vanishing"
    NON_VANISHING = "NonVanishing"
    INCONCLUSIVE = "Inconclusive"
    VACUOUSLY_ZERO = "VacuouslyZero"


@dataclass(frozen=True)
class Thresholds:
    vanish_fraction: float = 0.05
    floor_fraction: float = 0.5
    growth_ratio: float = 1.5
    tail: int = 4

    def as_dict(self) -> dict:
        return {
            "vanish_fraction": self.vanish_fraction,
            "floor_fraction": self.floor_fraction,
            "growth_ratio": self.growth_ratio,
            "tail": self.tail,
        }


@dataclass(frozen=True)
class NormEstimate:
    value: float
    sup: float
    offset: float
    witness: np.ndarray
    witness_index: int
    trace: np.ndarray = field(repr=False)
    grid: dict = field(default_factory=dict)
    quantity: str = ""

    def as_dict(self) -> dict:
        return {
            "quantity": self.quantity,
            "value": self.value,
            "sup": self.sup,
            "offset": self.offset,
            "witness": [[float(c.real), float(c.imag)] for c in self.witness],
            "trace": [float(v) for v in self.trace],
            "grid": dict(self.grid),
        }


def weight(Z) -> np.ndarray:
    """1 - |z|^2."""
    r = ball_norm(Z)
    return 1.0 - r * r


def estimate_sup(values: np.ndarray, grid: SamplingGrid, offset: float = 0.0,
                 quantity: str = "") -> NormEstimate:
    """Reduce per-point values to a NormEstimate; ties go to the first index."""
    values = np.asarray(values, dtype=float)
    i = int(np.argmax(values))
    trace = grid.level_maxima(values)
    sup = float(values[i])
    return NormEstimate(
        value=offset + sup,
        sup=sup,
        offset=offset,
        witness=np.array(grid.points[i]),
        witness_index=i,
        trace=trace,
        grid=grid.descriptor(),
        quantity=quantity,
    )


def _origin(n):
    return np.zeros((1, n), dtype=complex)


def bloch_seminorm(f, grid: SamplingGrid) -> NormEstimate:
    """b(f) = sup (1-|z|^2) |Rf(z)|."""
    Z = grid.points
    return estimate_sup(weight(Z) * np.abs(f.radial_value(Z, 1)), grid, quantity="bloch_seminorm")


def bloch_norm(f, grid: SamplingGrid) -> NormEstimate:
    """|f(0)| + sup (1-|z|^2) |grad f(z)|."""
    Z = grid.points
    offset = float(np.abs(f.value(_origin(grid.dimension))[0]))
    vals = weight(Z) * ball_norm(f.gradient_value(Z))
    return estimate_sup(vals, grid, offset, "bloch_norm")


def zygmund_norm(f, grid: SamplingGrid) -> NormEstimate:
    """|f(0)| + |grad f(0)| + sup (1-|z|^2) |R^2 f(z)|.

    The derivative term at the origin is the euclidean norm of the gradient.
    """
    Z = grid.points
    o = _origin(grid.dimension)
    offset = float(np.abs(f.value(o)[0]) + ball_norm(f.gradient_value(o))[0])
    vals = weight(Z) * np.abs(f.radial_value(Z, 2))
    return estimate_sup(vals, grid, offset, "zygmund_norm")


def sup_norm(f, grid: SamplingGrid) -> NormEstimate:
    Z = grid.points
    return estimate_sup(np.abs(f.value(Z)), grid, quantity="sup_norm")


def classify_decay(trace, th: Thresholds = Thresholds()) -> Classification:
    """Boundary-limit evidence from per-level maxima."""
    trace = np.asarray(trace, dtype=float)
    peak = float(np.max(trace))
    if peak == 0.0:
        return Classification.VANISHING
    tail = trace[-th.tail:]
    decreasing = bool(np.all(np.diff(tail) <= 0))
    if decreasing and trace[-1] < th.vanish_fraction * peak:
        return Classification.VANISHING
    if float(np.min(tail)) >= th.floor_fraction * peak:
        return Classification.NON_VANISHING
    return Classification.INCONCLUSIVE


def classify_growth(trace, th: Thresholds = Thresholds()) -> Classification:
    """Divergent iff the last ``tail`` level maxima grow monotonically by >= growth_ratio."""
    tail = np.asarray(trace, dtype=float)[-th.tail:]
    if len(tail) >= 2 and tail[0] > 0 and np.all(np.diff(tail) > 0) \
            and tail[-1] >= th.growth_ratio * tail[0]:
        return Classification.DIVERGENT
    return Classification.FINITE


@dataclass(frozen=True)
class ProfileReport:
    estimate: NormEstimate
    classification: Classification
    order: int
    thresholds: Thresholds

    @property
    def trace(self) -> np.ndarray:
        return self.estimate.trace

    def as_dict(self) -> dict:
        return {
            "order": self.order,
            "classification": self.classification.value,
            "thresholds": self.thresholds.as_dict(),
            "estimate": self.estimate.as_dict(),
        }


def little_space_profile(f, grid: SamplingGrid, order: int = 1,
                         th: Thresholds = Thresholds()) -> ProfileReport:
    """Per-level maxima of (1-|z|^2)|R^order f| and their decay classification.

    Order 1 probes the little Bloch space, order 2 the little Zygmund space.
    """
    Z = grid.points
    est = estimate_sup(weight(Z) * np.abs(f.radial_value(Z, order)), grid,
                       quantity=f"little_profile_{order}")
    return ProfileReport(est, classify_decay(est.trace, th), order, th)
