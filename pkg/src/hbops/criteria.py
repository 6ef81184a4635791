"""Boundedness and compactness criteria for R I_phi^g between Zygmund and
Bloch spaces, evaluated on sampling grids.

============  ==========================================================
id            quantity (sup or limit)
============  ==========================================================
B10, LC30     (1-|z|^2) |R phi(z)| |g(z)| / (1-|phi(z)|^2)
B11, LC31     (1-|z|^2) |R g(z)| log(e / (1-|phi(z)|^2))
C21, C22      as B10 / B11, limit |phi(z)| -> 1
L27           (1-|z|^2) |R g(z)|
L28           (1-|z|^2) |R phi(z)| |g(z)|
============  ==========================================================

B-criteria are sup estimates with a growth diagnosis; C-criteria use an
epsilon schedule of regions {|phi(z)| > 1 - eps}; L/LC-criteria use the
per-level decay profile in |z|.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .geometry import SamplingGrid, ball_norm
from .norms import (
    Classification,
    NormEstimate,
    Thresholds,
    bloch_norm,
    classify_decay,
    classify_growth,
    estimate_sup,
    weight,
    zygmund_norm,
)
from .operators import OperatorImage
from .symbols import HoloSelfMap, Symbol

__all__ = [
    "CriterionReport",
    "DEFAULT_EPS_SCHEDULE",
    "criterion",
    "criterion_B10",
    "criterion_B11",
    "criterion_C21",
    "criterion_C22",
    "criterion_L27",
    "criterion_L28",
    "criterion_LC30",
    "criterion_LC31",
    "criteria_set",
    "CRITERIA_SETS",
    "LowerBound",
    "operator_norm_lower_bound",
    "build_dictionary",
]

DEFAULT_EPS_SCHEDULE = tuple(2.0 ** (-i) for i in range(1, 13))

CRITERIA_SETS = {
    "bounded": ("B10", "B11"),
    "compact": ("C21", "C22"),
    "little": ("L27", "L28"),
    "compact-little": ("LC30", "LC31"),
}


@dataclass(frozen=True)
class CriterionReport:
    criterion: str
    estimate: NormEstimate
    classification: Classification
    thresholds: Thresholds
    evidence: tuple = ()
    empty_region: bool = False
    certified_bound: float | None = None

    def as_dict(self) -> dict:
        return {
            "criterion": self.criterion,
            "value": self.estimate.value,
            "classification": self.classification.value,
            "estimate": self.estimate.as_dict(),
            "thresholds": self.thresholds.as_dict(),
            "evidence": [{"eps": e, "sup": s} for e, s in self.evidence],
            "empty_region": self.empty_region,
            "certified_bound": self.certified_bound,
        }


def _ratio_quantity(phi: HoloSelfMap, g: Symbol, Z) -> np.ndarray:
    W = phi.value(Z, check=True)
    rw = ball_norm(W)
    return weight(Z) * phi.radial_norm(Z) * np.abs(g.value(Z)) / (1.0 - rw * rw)


def _log_quantity(phi: HoloSelfMap, g: Symbol, Z) -> np.ndarray:
    W = phi.value(Z, check=True)
    rw = ball_norm(W)
    return weight(Z) * np.abs(g.radial_value(Z, 1)) * (1.0 - np.log1p(-rw * rw))


def _l27(phi, g, Z):
    return weight(Z) * np.abs(g.radial_value(Z, 1))


def _l28(phi, g, Z):
    return weight(Z) * phi.radial_norm(Z) * np.abs(g.value(Z))


_QUANTITY = {
    "B10": _ratio_quantity,
    "B11": _log_quantity,
    "C21": _ratio_quantity,
    "C22": _log_quantity,
    "L27": _l27,
    "L28": _l28,
    "LC30": _ratio_quantity,
    "LC31": _log_quantity,
}


def _eps_evidence(phi, values, Z, schedule):
    rw = ball_norm(phi.value(Z))
    out = []
    for eps in schedule:
        mask = rw > 1.0 - eps
        out.append((float(eps), float(values[mask].max()) if mask.any() else None))
    return tuple(out)


def _classify_eps(evidence, certified, th: Thresholds):
    if certified is not None and certified < 1.0 and any(1.0 - e >= certified for e, _ in evidence):
        return Classification.VACUOUSLY_ZERO, False
    sups = [s for _, s in evidence]
    if any(s is None for s in sups):
        return Classification.INCONCLUSIVE, True
    first, last = sups[0], sups[-1]
    if first == 0.0 or last < th.vanish_fraction * first:
        return Classification.VANISHING, False
    if last >= th.floor_fraction * first:
        return Classification.NON_VANISHING, False
    return Classification.INCONCLUSIVE, False


def criterion(cid: str, phi: HoloSelfMap, g: Symbol, grid: SamplingGrid,
              th: Thresholds = Thresholds(),
              eps_schedule: Sequence[float] = DEFAULT_EPS_SCHEDULE) -> CriterionReport:
    if cid not in _QUANTITY:
        raise KeyError(f"unknown criterion {cid!r}")
    Z = grid.points
    values = _QUANTITY[cid](phi, g, Z)
    est = estimate_sup(values, grid, quantity=cid)
    if cid.startswith("B"):
        return CriterionReport(cid, est, classify_growth(est.trace, th), th,
                               certified_bound=phi.certified_bound)
    if cid.startswith("C"):
        evidence = _eps_evidence(phi, values, Z, eps_schedule)
        cls, empty = _classify_eps(evidence, phi.certified_bound, th)
        return CriterionReport(cid, est, cls, th, evidence, empty, phi.certified_bound)
    return CriterionReport(cid, est, classify_decay(est.trace, th), th,
                           certified_bound=phi.certified_bound)


def criterion_B10(phi, g, grid, th=Thresholds()):
    return criterion("B10", phi, g, grid, th)


def criterion_B11(phi, g, grid, th=Thresholds()):
    return criterion("B11", phi, g, grid, th)


def criterion_C21(phi, g, grid, eps_schedule=DEFAULT_EPS_SCHEDULE, th=Thresholds()):
    return criterion("C21", phi, g, grid, th, eps_schedule)


def criterion_C22(phi, g, grid, eps_schedule=DEFAULT_EPS_SCHEDULE, th=Thresholds()):
    return criterion("C22", phi, g, grid, th, eps_schedule)


def criterion_L27(phi, g, grid, th=Thresholds()):
    return criterion("L27", phi, g, grid, th)


def criterion_L28(phi, g, grid, th=Thresholds()):
    return criterion("L28", phi, g, grid, th)


def criterion_LC30(phi, g, grid, th=Thresholds()):
    return criterion("LC30", phi, g, grid, th)


def criterion_LC31(phi, g, grid, th=Thresholds()):
    return criterion("LC31", phi, g, grid, th)


def criteria_set(name: str, phi, g, grid, th=Thresholds(),
                 eps_schedule=DEFAULT_EPS_SCHEDULE) -> list[CriterionReport]:
    return [criterion(c, phi, g, grid, th, eps_schedule) for c in CRITERIA_SETS[name]]


# ---------------------------------------------------------------------------
# operator-norm lower bounds


@dataclass(frozen=True)
class LowerBound:
    value: float
    ratios: tuple
    running: tuple = field(default=())
    labels: tuple = field(default=())

    def as_dict(self) -> dict:
        return {
            "value": self.value,
            "ratios": list(self.ratios),
            "running": list(self.running),
            "labels": list(self.labels),
        }


def build_dictionary(functions, grid: SamplingGrid, labels=None):
    """Pair each function with its sampled Zygmund norm."""
    labels = labels or [repr(f) for f in functions]
    return [(lab, f, zygmund_norm(f, grid).value) for lab, f in zip(labels, functions)]


def operator_norm_lower_bound(phi: HoloSelfMap, g: Symbol, dictionary, grid: SamplingGrid) -> LowerBound:
    """max_f ||R I_phi^g f||_B / ||f||_Z over ``(label, f, zygmund_norm)`` entries.

    ``running`` is the running maximum in dictionary order, which exposes
    whether the bound stabilises as entries are added.
    """
    if not dictionary:
        raise ValueError("dictionary must be non-empty")
    ratios, running, labels = [], [], []
    best = 0.0
    for label, f, znorm in dictionary:
        if not znorm > 0:
            raise ValueError(f"dictionary entry {label!r} has non-positive Zygmund norm")
        r = 0.0 if g.is_zero() else bloch_norm(OperatorImage(f, phi, g), grid).value / znorm
        ratios.append(r)
        best = max(best, r)
        running.append(best)
        labels.append(label)
    return LowerBound(best, tuple(ratios), tuple(running), tuple(labels))
