"""Self-maps of the ball, symbols g with g(0) = 0, and the explicit test
functions h_a, f_a, f_k together with their radial derivatives.

Everything here follows one pointwise protocol, vectorised over stacks of
points ``Z`` of shape ``(M, n)``:

``value(Z)``                 holomorphic function values, shape ``(M,)``
``radial_value(Z, order)``   R f or R^2 f
``gradient_value(Z)``        complex gradient, shape ``(M, n)``
``radial_gradient_value(Z)`` gradient of R f

PowerSeries implements the same protocol exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import (
    DimensionError,
    DomainError,
    GradientUnavailable,
    ParameterError,
    RangeViolation,
)
from .geometry import as_points, ball_norm
from .power_series import PowerSeries, coordinate, l1_norm
from .quadrature import QuadratureConfig, integrate

__all__ = [
    "log_kernel",
    "h_scalar",
    "HoloSelfMap",
    "Symbol",
    "TestFunction",
    "ClosedFormFunction",
    "SelfMapReport",
    "test_value",
    "test_radial",
    "map_value",
    "map_radial",
    "validate_self_map",
    "PROOF_THRESHOLD",
]

# |a| above this is the regime where (1-|a|^2) log 1/(1-|a|^2) <= 1/e holds
# with log 1/(1-|a|^2) >= 1.
PROOF_THRESHOLD = math.sqrt(1.0 - 1.0 / math.e)


def log_kernel(zeta):
    """log 1/(1 - zeta), principal branch."""
    return -np.log1p(-np.asarray(zeta, dtype=complex))


def _check_in_ball(Z: np.ndarray):
    r = ball_norm(Z)
    if np.any(r >= 1.0):
        idx = int(np.argmax(np.atleast_1d(r)))
        raise DomainError(f"point outside the open unit ball (|z| = {np.atleast_1d(r)[idx]!r})")


def _points(z, n: int) -> tuple[np.ndarray, tuple]:
    Z = as_points(z, n)
    lead = Z.shape[:-1]
    return Z.reshape(-1, n), lead


def _shape(out: np.ndarray, lead: tuple, extra: tuple = ()):
    out = out.reshape(lead + extra)
    return out[()] if out.ndim == 0 else out


def _fd_gradient(fun: Callable, Z: np.ndarray) -> np.ndarray:
    """Central differences along real coordinate directions (holomorphic f)."""
    n = Z.shape[-1]
    h = np.minimum(1e-5, (1.0 - ball_norm(Z)) / 4)
    out = np.empty(Z.shape, dtype=complex)
    for j in range(n):
        e = np.zeros(n)
        e[j] = 1.0
        step = h[:, None] * e[None, :]
        out[:, j] = (fun(Z + step) - fun(Z - step)) / (2 * h)
    return out


def h_scalar(zeta):
    """h(zeta) = (zeta - 1) [(1 + log 1/(1-zeta))^2 + 1]."""
    zeta = np.asarray(zeta, dtype=complex)
    if np.any(np.abs(zeta) >= 1.0):
        raise DomainError("h is evaluated on the open unit disc only")
    L = log_kernel(zeta)
    out = (zeta - 1.0) * ((1.0 + L) ** 2 + 1.0)
    return out[()] if out.ndim == 0 else out


# ---------------------------------------------------------------------------
# self-maps


class HoloSelfMap:
    """A holomorphic map phi of the ball into itself.

    Use the constructors :meth:`linear`, :meth:`polynomial`,
    :meth:`closed_form`, :meth:`identity`.  ``certified_bound``, when not
    ``None``, is a proven upper bound for ``sup |phi|`` on the ball.
    """

    def __init__(self, kind: str, n: int, *, matrix=None, components=None,
                 value_fn=None, radial_fn=None, jacobian_fn=None,
                 certified_bound: float | None = None):
        self.kind = kind
        self.dimension = n
        self.matrix = matrix
        self.components = components
        self._value_fn = value_fn
        self._radial_fn = radial_fn
        self._jacobian_fn = jacobian_fn
        self.certified_bound = certified_bound

    @classmethod
    def linear(cls, matrix) -> "HoloSelfMap":
        A = np.array(matrix, dtype=complex)
        if A.ndim != 2 or A.shape[0] != A.shape[1]:
            raise DimensionError("linear self-map needs a square matrix")
        A.setflags(write=False)
        sigma = float(np.linalg.svd(A, compute_uv=False)[0]) if A.size else 0.0
        return cls("linear", A.shape[0], matrix=A, certified_bound=sigma)

    @classmethod
    def identity(cls, n: int) -> "HoloSelfMap":
        return cls.linear(np.eye(n))

    @classmethod
    def scaled_identity(cls, n: int, lam: complex) -> "HoloSelfMap":
        return cls.linear(lam * np.eye(n))

    @classmethod
    def polynomial(cls, components: Sequence[PowerSeries]) -> "HoloSelfMap":
        comps = tuple(components)
        n = len(comps)
        if n == 0 or any(c.dimension != n for c in comps):
            raise DimensionError("a polynomial self-map of C^n needs n components in n variables")
        bound = math.sqrt(math.fsum(l1_norm(c) ** 2 for c in comps))
        return cls("polynomial", n, components=comps, certified_bound=bound)

    @classmethod
    def closed_form(cls, n: int, value: Callable, radial: Callable,
                    jacobian: Callable | None = None,
                    sup_bound: float | None = None) -> "HoloSelfMap":
        """Pointwise evaluators; callables take and return ``(M, n)`` arrays."""
        return cls("closed", n, value_fn=value, radial_fn=radial,
                   jacobian_fn=jacobian, certified_bound=sup_bound)

    @property
    def range_margin(self) -> float | None:
        if self.certified_bound is None:
            return None
        return 1.0 - self.certified_bound

    def is_identity(self) -> bool:
        return self.kind == "linear" and np.array_equal(self.matrix, np.eye(self.dimension))

    def value(self, z, check: bool = False) -> np.ndarray:
        Z, lead = _points(z, self.dimension)
        if self.kind == "linear":
            W = Z @ self.matrix.T
        elif self.kind == "polynomial":
            W = np.stack([c.value(Z) for c in self.components], axis=-1)
        else:
            W = np.asarray(self._value_fn(Z), dtype=complex).reshape(Z.shape)
        if check:
            r = ball_norm(W)
            if np.any(r >= 1.0):
                i = int(np.argmax(r))
                raise RangeViolation(Z[i], float(r[i]))
        return W.reshape(lead + (self.dimension,))

    def radial(self, z) -> np.ndarray:
        """Componentwise (R phi_1, ..., R phi_n)."""
        Z, lead = _points(z, self.dimension)
        if self.kind == "linear":
            out = Z @ self.matrix.T
        elif self.kind == "polynomial":
            out = np.stack([c.radial_value(Z) for c in self.components], axis=-1)
        else:
            out = np.asarray(self._radial_fn(Z), dtype=complex).reshape(Z.shape)
        return out.reshape(lead + (self.dimension,))

    def radial_norm(self, z) -> np.ndarray:
        """|R phi(z)|, the euclidean norm of the componentwise radial derivative."""
        return ball_norm(self.radial(z))

    def jacobian(self, z) -> np.ndarray:
        """``J[..., i, k] = d phi_i / d z_k``."""
        Z, lead = _points(z, self.dimension)
        n = self.dimension
        if self.kind == "linear":
            J = np.broadcast_to(self.matrix, (len(Z), n, n)).copy()
        elif self.kind == "polynomial":
            J = np.stack([c.gradient_value(Z) for c in self.components], axis=1)
        elif self._jacobian_fn is not None:
            J = np.asarray(self._jacobian_fn(Z), dtype=complex).reshape(len(Z), n, n)
        else:
            J = np.stack(
                [_fd_gradient(lambda X, i=i: self.value(X)[:, i], Z) for i in range(n)], axis=1
            )
        return J.reshape(lead + (n, n))


@dataclass(frozen=True)
class SelfMapReport:
    kind: str
    passed: bool
    method: str
    max_modulus: float
    argmax: list
    certified_bound: float | None
    threshold: float

    def as_dict(self) -> dict:
        return {
            "kind": self.kind,
            "passed": self.passed,
            "method": self.method,
            "max_modulus": self.max_modulus,
            "argmax": [[c.real, c.imag] for c in self.argmax],
            "certified_bound": self.certified_bound,
            "threshold": self.threshold,
        }


def validate_self_map(phi: HoloSelfMap, grid, threshold: float = 1.0 - 1e-9) -> SelfMapReport:
    """Check |phi| < 1; exact for linear maps, sampled (plus l1 certificate) otherwise."""
    if phi.kind == "linear":
        sigma = phi.certified_bound
        return SelfMapReport("linear", sigma <= 1.0 + 1e-15, "singular-value", sigma, [], sigma, 1.0)
    Z = grid.points
    r = ball_norm(phi.value(Z))
    i = int(np.argmax(r))
    sampled = float(r[i])
    cert = phi.certified_bound
    if cert is not None and cert <= 1.0:
        return SelfMapReport(phi.kind, True, "coefficient-bound", sampled,
                             list(Z[i]), cert, threshold)
    return SelfMapReport(phi.kind, sampled < threshold, "sampled", sampled,
                         list(Z[i]), cert, threshold)


def map_value(phi: HoloSelfMap, z):
    Z = as_points(z, phi.dimension)
    _check_in_ball(Z)
    return phi.value(Z, check=True)


def map_radial(phi: HoloSelfMap, z):
    Z = as_points(z, phi.dimension)
    _check_in_ball(Z)
    return phi.radial(Z)


# ---------------------------------------------------------------------------
# symbols


class Symbol:
    """The weight g of the integral operator; always satisfies g(0) = 0."""

    def __init__(self, kind: str, n: int, *, series: PowerSeries | None = None,
                 b=None, power: int = 1, value_fn=None, radial_fn=None, gradient_fn=None):
        self.kind = kind
        self.dimension = n
        self.series = series
        self.b = b
        self.power = power
        self._value_fn = value_fn
        self._radial_fn = radial_fn
        self._gradient_fn = gradient_fn

    @classmethod
    def polynomial(cls, series: PowerSeries) -> "Symbol":
        if series.constant_term() != 0:
            raise ParameterError("symbol must vanish at the origin (nonzero constant term)")
        return cls("polynomial", series.dimension, series=series)

    @classmethod
    def zero(cls, n: int) -> "Symbol":
        return cls.polynomial(PowerSeries(n))

    @classmethod
    def coordinate(cls, n: int, j: int = 0) -> "Symbol":
        return cls.polynomial(coordinate(n, j))

    @classmethod
    def log_form(cls, b, power: int = 1) -> "Symbol":
        """g(z) = (log 1/(1 - <z, b>))**power with |b| < 1."""
        b = np.array(as_points(b), dtype=complex).ravel()
        if not ball_norm(b) < 1.0:
            raise ParameterError("log-form direction must lie in the open ball")
        if not isinstance(power, (int, np.integer)) or power < 1:
            raise ParameterError("log-form power must be a positive integer")
        b.setflags(write=False)
        return cls("log", len(b), b=b, power=int(power))

    @classmethod
    def closed_form(cls, n: int, value: Callable, radial: Callable,
                    gradient: Callable | None = None) -> "Symbol":
        """Vectorised evaluators for g and R g; ``value(0)`` must be exactly 0."""
        g0 = np.asarray(value(np.zeros((1, n), dtype=complex))).ravel()
        if g0[0] != 0:
            raise ParameterError("symbol must vanish at the origin")
        return cls("closed", n, value_fn=value, radial_fn=radial, gradient_fn=gradient)

    def is_zero(self) -> bool:
        return self.kind == "polynomial" and self.series.is_zero()

    def value(self, z) -> np.ndarray:
        Z, lead = _points(z, self.dimension)
        if self.kind == "polynomial":
            out = self.series.value(Z)
        elif self.kind == "log":
            out = log_kernel(Z @ np.conj(self.b)) ** self.power
        else:
            out = np.asarray(self._value_fn(Z), dtype=complex).reshape(len(Z))
        return _shape(out, lead)

    def radial_value(self, z, order: int = 1) -> np.ndarray:
        Z, lead = _points(z, self.dimension)
        if self.kind == "polynomial":
            out = self.series.radial_value(Z, order)
        elif order != 1:
            raise ParameterError("only first radial derivatives of closed-form symbols")
        elif self.kind == "log":
            w = Z @ np.conj(self.b)
            L = log_kernel(w)
            out = self.power * L ** (self.power - 1) * w / (1.0 - w)
        else:
            out = np.asarray(self._radial_fn(Z), dtype=complex).reshape(len(Z))
        return _shape(out, lead)

    def gradient_value(self, z) -> np.ndarray:
        Z, lead = _points(z, self.dimension)
        if self.kind == "polynomial":
            out = self.series.gradient_value(Z)
        elif self.kind == "log":
            w = Z @ np.conj(self.b)
            L = log_kernel(w)
            out = (self.power * L ** (self.power - 1) / (1.0 - w))[:, None] * np.conj(self.b)[None, :]
        elif self._gradient_fn is not None:
            out = np.asarray(self._gradient_fn(Z), dtype=complex).reshape(Z.shape)
        else:
            out = _fd_gradient(lambda X: self.value(X), Z)
        return _shape(out, lead, (self.dimension,))


# ---------------------------------------------------------------------------
# test functions of the form Phi(<z, a>)

_FAMILIES = ("h_a", "f_a", "f_k")


def _log_over(zeta, L, power):
    """L**power / zeta with its limit at zeta = 0 (1 for power 1, else 0)."""
    safe = np.where(zeta == 0, 1.0, zeta)
    out = L**power / safe
    return np.where(zeta == 0, 1.0 if power == 1 else 0.0, out)


class TestFunction:
    """h_a, f_a or f_k as closed-form pointwise evaluators.

    All three are functions of zeta = <z, a>:

    * ``h_a = h(zeta) / (|a|^2 Lam)`` with ``Lam = log 1/(1-|a|^2)``;
    * ``f_a = h_a - int_0^1 log 1/(1-t zeta) dt/t``;
    * ``f_k = h_a - Lam**(-q) int_0^1 log^3 1/(1-t zeta) dt/t`` with ``q`` the
      normalisation exponent (2 by default, parameter ``a = phi(z^k)``).

    The integral terms are only needed for ``value``; every derivative is
    closed form.
    """

    __test__ = False  # not a pytest class

    def __init__(self, family: str, a, norm_exponent: int = 2,
                 quad: QuadratureConfig = QuadratureConfig()):
        if family not in _FAMILIES:
            raise ParameterError(f"unknown test-function family {family!r}")
        a = np.array(as_points(a), dtype=complex).ravel()
        ra = float(ball_norm(a))
        if ra == 0.0:
            raise ParameterError("test-function parameter a must be nonzero")
        if ra >= 1.0:
            raise DomainError("test-function parameter a must lie in the open ball")
        a.setflags(write=False)
        self.family = family
        self.a = a
        self.dimension = len(a)
        self.norm_exponent = norm_exponent
        self.quad = quad
        self._a2 = ra * ra
        self._lam = float(-np.log1p(-self._a2))

    @property
    def in_proof_regime(self) -> bool:
        return math.sqrt(self._a2) > PROOF_THRESHOLD

    @property
    def log_normalizer(self) -> float:
        return self._lam

    def _zeta(self, z):
        Z, lead = _points(z, self.dimension)
        _check_in_ball(Z)
        return Z @ np.conj(self.a), lead

    @property
    def _tail(self) -> tuple[int, float]:
        """(power p, coefficient c) of the subtracted term c * int L^p dt/t."""
        if self.family == "f_a":
            return 1, 1.0
        if self.family == "f_k":
            return 3, self._lam ** (-self.norm_exponent)
        return 0, 0.0

    # one-variable profile Phi and its derivatives --------------------------

    def _phi(self, zeta):
        out = h_scalar(zeta) / (self._a2 * self._lam)
        p, c = self._tail
        if p:
            res = integrate(lambda t: log_kernel(t[:, None] * zeta[None, :]) ** p / t[:, None],
                            self.quad)
            out = out - c * res.value
        return out

    def _dphi(self, zeta):
        L = log_kernel(zeta)
        out = L**2 / (self._a2 * self._lam)
        p, c = self._tail
        if p:
            out = out - c * _log_over(zeta, L, p)
        return out

    def _psi(self, zeta):
        """R f as a function of zeta: zeta * Phi'(zeta)."""
        L = log_kernel(zeta)
        out = zeta * L**2 / (self._a2 * self._lam)
        p, c = self._tail
        if p:
            out = out - c * L**p
        return out

    def _dpsi(self, zeta):
        L = log_kernel(zeta)
        out = (L**2 + 2.0 * zeta * L / (1.0 - zeta)) / (self._a2 * self._lam)
        p, c = self._tail
        if p:
            out = out - c * p * L ** (p - 1) / (1.0 - zeta)
        return out

    # protocol --------------------------------------------------------------

    def value(self, z):
        zeta, lead = self._zeta(z)
        return _shape(self._phi(zeta), lead)

    def radial_value(self, z, order: int = 1):
        zeta, lead = self._zeta(z)
        if order == 1:
            return _shape(self._psi(zeta), lead)
        if order == 2:
            return _shape(zeta * self._dpsi(zeta), lead)
        raise ParameterError("test functions expose radial orders 1 and 2")

    def gradient_value(self, z):
        zeta, lead = self._zeta(z)
        out = self._dphi(zeta)[:, None] * np.conj(self.a)[None, :]
        return _shape(out, lead, (self.dimension,))

    def radial_gradient_value(self, z):
        zeta, lead = self._zeta(z)
        out = self._dpsi(zeta)[:, None] * np.conj(self.a)[None, :]
        return _shape(out, lead, (self.dimension,))

    def __repr__(self):
        return f"TestFunction({self.family!r}, a={list(self.a)!r})"


def test_value(T: TestFunction, z):
    return T.value(z)


def test_radial(T: TestFunction, z, order: int = 1):
    return T.radial_value(z, order)


class ClosedFormFunction:
    """A holomorphic function given by vectorised evaluators.

    ``radial`` maps an order (1 or 2) to a callable.  Missing gradients fall
    back to central differences; missing radial orders raise
    :class:`GradientUnavailable`.
    """

    def __init__(self, n: int, value: Callable, radial: dict[int, Callable],
                 gradient: Callable | None = None, radial_gradient: Callable | None = None,
                 name: str = "closed-form"):
        self.dimension = n
        self._value = value
        self._radial = dict(radial)
        self._gradient = gradient
        self._radial_gradient = radial_gradient
        self.name = name

    def value(self, z):
        Z, lead = _points(z, self.dimension)
        return _shape(np.asarray(self._value(Z), dtype=complex), lead)

    def radial_value(self, z, order: int = 1):
        Z, lead = _points(z, self.dimension)
        if order not in self._radial:
            raise GradientUnavailable(f"{self.name}: radial derivative of order {order} not provided")
        return _shape(np.asarray(self._radial[order](Z), dtype=complex), lead)

    def gradient_value(self, z):
        Z, lead = _points(z, self.dimension)
        if self._gradient is not None:
            out = np.asarray(self._gradient(Z), dtype=complex)
        else:
            out = _fd_gradient(lambda X: self.value(X), Z)
        return _shape(out, lead, (self.dimension,))

    def radial_gradient_value(self, z):
        Z, lead = _points(z, self.dimension)
        if self._radial_gradient is not None:
            out = np.asarray(self._radial_gradient(Z), dtype=complex)
        else:
            out = _fd_gradient(lambda X: self.radial_value(X, 1), Z)
        return _shape(out, lead, (self.dimension,))

    def __repr__(self):
        return f"ClosedFormFunction({self.name!r}, n={self.dimension})"
