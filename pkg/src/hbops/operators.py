"""The integral-type operator I_phi^g f(z) = int_0^1 Rf(phi(tz)) g(tz) dt/t,
the related T_g and I_g, and radial derivatives of their outputs.

Two evaluation paths exist.  The exact path works for polynomial inputs and
returns a PowerSeries; the quadrature path accepts anything that exposes the
pointwise protocol of :mod:`hbops.symbols`.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import GradientUnavailable, ParameterError
from .geometry import as_points
from .power_series import (
    DEFAULT_DEGREE_CAP,
    PowerSeries,
    compose_polynomial,
    radial_antiderivative,
)
from .symbols import HoloSelfMap, Symbol, _check_in_ball, _fd_gradient
from .quadrature import QuadratureConfig, integrate

__all__ = [
    "OperatorValue",
    "apply_integral_operator",
    "integral_operator_series",
    "apply_Tg",
    "apply_Ig",
    "radial_of_integral",
    "second_radial_of_integral",
    "OperatorImage",
]


@dataclass(frozen=True)
class OperatorValue:
    value: complex | np.ndarray
    err_est: float | np.ndarray
    path: str


def _prepare(z, n):
    Z = as_points(z, n)
    single = Z.ndim == 1
    Z = Z.reshape(-1, n)
    _check_in_ball(Z)
    return Z, single


def _finish(res, single, path) -> OperatorValue:
    if single:
        return OperatorValue(complex(np.ravel(res.value)[0]), float(np.ravel(res.error)[0]), path)
    return OperatorValue(np.asarray(res.value), np.asarray(res.error), path)


def _radial_at(f, W):
    return f.radial_value(W, 1)


def apply_integral_operator(f, phi: HoloSelfMap, g: Symbol, z,
                            cfg: QuadratureConfig = QuadratureConfig()) -> OperatorValue:
    """Quadrature value of I_phi^g f at one point ``(n,)`` or a stack ``(M, n)``."""
    n = phi.dimension
    Z, single = _prepare(z, n)
    if g.is_zero():
        return _finish(_Zero(len(Z)), single, "quad")

    def integrand(t):
        P = (t[:, None, None] * Z[None, :, :]).reshape(-1, n)
        W = phi.value(P, check=True)
        vals = _radial_at(f, W) * g.value(P)
        return vals.reshape(len(t), len(Z)) / t[:, None]

    return _finish(integrate(integrand, cfg), single, "quad")


class _Zero:
    def __init__(self, m):
        self.value = np.zeros(m, dtype=complex)
        self.error = np.zeros(m)


def integral_operator_series(f: PowerSeries, phi: HoloSelfMap, g: Symbol,
                             degree_cap: int = DEFAULT_DEGREE_CAP) -> PowerSeries:
    """Exact I_phi^g f: the radial antiderivative of (Rf o phi) * g."""
    if g.kind != "polynomial":
        raise ParameterError("exact path needs a polynomial symbol")
    if g.series.constant_term() != 0:
        raise ParameterError("symbol must vanish at the origin")
    q = _radial_composed(f, phi, degree_cap) * g.series
    return radial_antiderivative(q)


def _radial_composed(f: PowerSeries, phi: HoloSelfMap, degree_cap: int) -> PowerSeries:
    if phi.kind == "linear":
        n = phi.dimension
        comps = [
            PowerSeries(n, {tuple(int(k == j) for k in range(n)): phi.matrix[i, j] for j in range(n)})
            for i in range(n)
        ]
    elif phi.kind == "polynomial":
        comps = list(phi.components)
    else:
        raise ParameterError("exact path needs a linear or polynomial self-map")
    return compose_polynomial(f.radial_series, comps, degree_cap)


def apply_Tg(f, g: Symbol, z, cfg: QuadratureConfig = QuadratureConfig()) -> OperatorValue:
    """T_g(f)(z) = int_0^1 f(tz) Rg(tz) dt/t."""
    n = g.dimension
    Z, single = _prepare(z, n)

    def integrand(t):
        P = (t[:, None, None] * Z[None, :, :]).reshape(-1, n)
        vals = f.value(P) * g.radial_value(P, 1)
        return vals.reshape(len(t), len(Z)) / t[:, None]

    return _finish(integrate(integrand, cfg), single, "quad")


def apply_Ig(f, g: Symbol, z, cfg: QuadratureConfig = QuadratureConfig()) -> OperatorValue:
    """I_g(f)(z) = int_0^1 Rf(tz) g(tz) dt/t, i.e. I_phi^g with phi = id."""
    return apply_integral_operator(f, HoloSelfMap.identity(g.dimension), g, z, cfg)


def radial_of_integral(f, phi: HoloSelfMap, g: Symbol, z):
    """R[I_phi^g f](z) = Rf(phi(z)) g(z), without quadrature."""
    Z = as_points(z, phi.dimension)
    W = phi.value(Z, check=True)
    return _radial_at(f, W) * g.value(Z)


def _radial_gradient(f, W, allow_fd: bool):
    try:
        return f.radial_gradient_value(W)
    except (AttributeError, GradientUnavailable):
        if not allow_fd:
            raise GradientUnavailable("gradient of Rf unavailable and finite differences disabled")
        flat = W.reshape(-1, W.shape[-1])
        return _fd_gradient(lambda X: f.radial_value(X, 1), flat).reshape(W.shape)


def second_radial_of_integral(f, phi: HoloSelfMap, g: Symbol, z, allow_fd: bool = True):
    """R^2[I_phi^g f](z) by the exact chain rule.

    ``sum_j d_j(Rf)(phi(z)) R phi_j(z) g(z) + Rf(phi(z)) Rg(z)``.
    """
    Z = as_points(z, phi.dimension)
    W = phi.value(Z, check=True)
    chain = np.sum(_radial_gradient(f, W, allow_fd) * phi.radial(Z), axis=-1)
    return chain * g.value(Z) + _radial_at(f, W) * g.radial_value(Z, 1)


class OperatorImage:
    """F = R I_phi^g f as a pointwise function (values via R I f = Rf(phi) g).

    ``radial_value(z, 1)`` is R^2 I_phi^g f and ``gradient_value`` the full
    complex gradient of F, so Bloch-type estimators apply to F directly.
    """

    def __init__(self, f, phi: HoloSelfMap, g: Symbol, allow_fd: bool = True):
        self.f = f
        self.phi = phi
        self.g = g
        self.dimension = phi.dimension
        self.allow_fd = allow_fd

    def value(self, z):
        return radial_of_integral(self.f, self.phi, self.g, z)

    def radial_value(self, z, order: int = 1):
        if order != 1:
            raise GradientUnavailable("only the first radial derivative of R I f is provided")
        return second_radial_of_integral(self.f, self.phi, self.g, z, self.allow_fd)

    def gradient_value(self, z):
        Z = as_points(z, self.dimension)
        W = self.phi.value(Z, check=True)
        grad_rf = _radial_gradient(self.f, W, self.allow_fd)
        J = self.phi.jacobian(Z)
        # d_k [Rf(phi)] = sum_i d_i(Rf)(phi) d phi_i / d z_k
        chain = np.einsum("...i,...ik->...k", grad_rf, J)
        gv = self.g.value(Z)
        return chain * np.expand_dims(gv, -1) + np.expand_dims(_radial_at(self.f, W), -1) * self.g.gradient_value(Z)
