"""Adaptive Gauss-Legendre quadrature on an interval, vector-valued integrands.

Each panel is integrated with a fixed-order rule and compared with the sum
over its two dyadic halves; panels whose discrepancy exceeds their share of
the tolerance are bisected.  Nodes are interior, so integrands of the form
``F(t)/t`` with ``F(0) = 0`` need no special handling at ``t = 0``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

from .errors import ParameterError, QuadratureError

__all__ = ["QuadratureConfig", "QuadratureResult", "integrate"]


@dataclass(frozen=True)
class QuadratureConfig:
    rtol: float = 1e-10
    atol: float = 1e-14
    max_depth: int = 40
    order: int = 16

    def __post_init__(self):
        if not self.rtol > 0:
            raise ParameterError("quadrature tolerance must be positive")
        if self.atol < 0:
            raise ParameterError("absolute floor must be non-negative")
        if self.max_depth < 1:
            raise ParameterError("max subdivision depth must be >= 1")
        if self.order < 2:
            raise ParameterError("rule order must be >= 2")

    def as_dict(self) -> dict:
        return {"rtol": self.rtol, "atol": self.atol, "max_depth": self.max_depth, "order": self.order}


@dataclass(frozen=True)
class QuadratureResult:
    value: np.ndarray | complex
    error: np.ndarray | float
    panels: int
    evaluations: int

    @property
    def max_error(self) -> float:
        return float(np.max(self.error))


@lru_cache(maxsize=8)
def _rule(order: int):
    x, w = np.polynomial.legendre.leggauss(order)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def _panel_sums(fun, lo: np.ndarray, hi: np.ndarray, x, w):
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    t = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    vals = np.asarray(fun(t))
    vals = vals.reshape((len(lo), len(x)) + vals.shape[1:])
    sums = np.einsum("pk...,k->p...", vals, w)
    return sums * half.reshape((-1,) + (1,) * (sums.ndim - 1))


def integrate(
    fun: Callable[[np.ndarray], np.ndarray],
    cfg: QuadratureConfig = QuadratureConfig(),
    a: float = 0.0,
    b: float = 1.0,
) -> QuadratureResult:
    """Integrate ``fun`` over ``[a, b]``.

    ``fun`` maps a 1-d array of nodes, shape ``(k,)``, to values of shape
    ``(k, ...)``; every trailing component is integrated simultaneously and
    must meet ``max(rtol * |I|, atol)`` on its own.
    """
    x, w = _rule(cfg.order)
    length = b - a
    lo = np.array([a])
    hi = np.array([b])
    coarse = _panel_sums(fun, lo, hi, x, w)
    evaluations = len(x)
    acc_val = np.zeros(coarse.shape[1:], dtype=complex)
    acc_err = np.zeros(coarse.shape[1:])
    panels = 0
    depth = 0
    while len(lo):
        mid = 0.5 * (lo + hi)
        both = _panel_sums(fun, np.concatenate([lo, mid]), np.concatenate([mid, hi]), x, w)
        evaluations += 2 * len(lo) * len(x)
        left, right = both[: len(lo)], both[len(lo):]
        fine = left + right
        err = np.abs(fine - coarse)
        total = acc_val + fine.sum(axis=0)
        tol = np.maximum(cfg.rtol * np.abs(total), cfg.atol)
        share = ((hi - lo) / length).reshape((-1,) + (1,) * (err.ndim - 1))
        ok = err <= tol * share
        if err.ndim > 1:
            ok = ok.reshape(len(lo), -1).all(axis=1)
        if np.all(acc_err + err.sum(axis=0) <= tol):
            # global budget met even though some panels exceed their share
            ok[:] = True
        acc_val = acc_val + fine[ok].sum(axis=0)
        acc_err = acc_err + err[ok].sum(axis=0)
        panels += int(ok.sum())
        bad = ~ok
        if not bad.any():
            break
        depth += 1
        if depth >= cfg.max_depth:
            achieved = acc_err + err[bad].sum(axis=0)
            raise QuadratureError(float(np.max(achieved)), float(np.min(tol)))
        lo, mid_b, hi = lo[bad], mid[bad], hi[bad]
        lo, hi = np.concatenate([lo, mid_b]), np.concatenate([mid_b, hi])
        coarse = np.concatenate([left[bad], right[bad]])
    if acc_val.ndim == 0:
        return QuadratureResult(complex(acc_val), float(acc_err), panels, evaluations)
    return QuadratureResult(acc_val, acc_err, panels, evaluations)
