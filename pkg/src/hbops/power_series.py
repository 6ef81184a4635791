"""Holomorphic polynomials on C^n stored as multi-index coefficient tables.

Terms are kept in canonical form: a mapping from exponent tuples to complex
coefficients with no stored zeros.  Only coefficients that are exactly zero
are dropped, so algebraic identities stay bit-stable.
"""

from __future__ import annotations

import math
from functools import cached_property
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import DegreeOverflowError, DimensionError, ParameterError
from .geometry import as_points

__all__ = [
    "DEFAULT_DEGREE_CAP",
    "MultiIndex",
    "PowerSeries",
    "evaluate",
    "radial_derivative",
    "iterated_radial",
    "gradient",
    "compose_polynomial",
    "homogeneous_parts",
    "coordinate",
    "constant",
    "monomial",
]

DEFAULT_DEGREE_CAP = 64

MultiIndex = tuple  # tuple[int, ...]; |alpha| = sum(alpha)


def degree_of(alpha: MultiIndex) -> int:
    return sum(alpha)


def _csum(values) -> complex:
    if len(values) == 1:
        return values[0]
    return complex(math.fsum(v.real for v in values), math.fsum(v.imag for v in values))


class PowerSeries:
    """A finitely supported power series sum_alpha a_alpha z^alpha.

    Instances are immutable.  Arithmetic operators return new canonical
    series; ``f == g`` compares canonical term maps exactly.
    """

    __slots__ = ("_n", "_terms", "__dict__")

    def __init__(self, n: int, terms: Mapping | Iterable = ()):
        if n < 1:
            raise ParameterError("dimension must be >= 1")
        items = terms.items() if isinstance(terms, Mapping) else terms
        table: dict[tuple, complex] = {}
        for alpha, coef in items:
            alpha = tuple(int(a) for a in alpha)
            if len(alpha) != n:
                raise DimensionError(f"multi-index {alpha} has length {len(alpha)}, expected {n}")
            if any(a < 0 for a in alpha):
                raise ParameterError(f"negative exponent in {alpha}")
            table[alpha] = table.get(alpha, 0j) + complex(coef)
        self._n = n
        self._terms = MappingProxyType({a: c for a, c in sorted(table.items()) if c != 0})

    @property
    def dimension(self) -> int:
        return self._n

    @property
    def terms(self) -> Mapping[tuple, complex]:
        return self._terms

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero series."""
        return max((degree_of(a) for a in self._terms), default=-1)

    def is_zero(self) -> bool:
        return not self._terms

    def constant_term(self) -> complex:
        return self._terms.get((0,) * self._n, 0j)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PowerSeries):
            return NotImplemented
        return self._n == other._n and dict(self._terms) == dict(other._terms)

    def __hash__(self):
        return hash((self._n, tuple(self._terms.items())))

    def __repr__(self) -> str:
        if not self._terms:
            return f"PowerSeries(n={self._n}, 0)"
        parts = []
        for alpha, c in self._terms.items():
            mono = "*".join(
                f"z{j + 1}" if e == 1 else f"z{j + 1}^{e}" for j, e in enumerate(alpha) if e
            )
            parts.append(f"({c:g})" + (f"*{mono}" if mono else ""))
        return f"PowerSeries(n={self._n}, " + " + ".join(parts) + ")"

    # ring operations -------------------------------------------------------

    def _check(self, other: "PowerSeries"):
        if self._n != other._n:
            raise DimensionError(f"dimension mismatch: {self._n} vs {other._n}")

    def _lift(self, other) -> "PowerSeries":
        if isinstance(other, PowerSeries):
            self._check(other)
            return other
        if isinstance(other, (int, float, complex, np.number)):
            return constant(self._n, other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for a, c in other._terms.items():
            out[a] = out.get(a, 0j) + c
        return PowerSeries(self._n, out)

    __radd__ = __add__

    def __neg__(self):
        return PowerSeries(self._n, {a: -c for a, c in self._terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, s: complex) -> "PowerSeries":
        s = complex(s)
        return PowerSeries(self._n, {a: s * c for a, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, float, complex, np.number)):
            return self.scale(other)
        other = self._lift(other)
        if other is NotImplemented:
            return other
        # correctly rounded sums keep the product independent of term order
        acc: dict[tuple, list] = {}
        for a, c in self._terms.items():
            for b, d in other._terms.items():
                key = tuple(x + y for x, y in zip(a, b))
                acc.setdefault(key, []).append(c * d)
        return PowerSeries(self._n, {k: _csum(v) for k, v in acc.items()})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "PowerSeries":
        if not isinstance(k, int) or k < 0:
            raise ParameterError("power must be a non-negative integer")
        result = constant(self._n, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # calculus --------------------------------------------------------------

    def radial(self, order: int = 1) -> "PowerSeries":
        """R^order f: each coefficient scaled by |alpha|**order."""
        if order < 1:
            raise ParameterError("order must be >= 1")
        return PowerSeries(
            self._n, {a: (degree_of(a) ** order) * c for a, c in self._terms.items()}
        )

    def partial(self, j: int) -> "PowerSeries":
        out = {}
        for a, c in self._terms.items():
            if a[j]:
                b = list(a)
                b[j] -= 1
                out[tuple(b)] = a[j] * c
        return PowerSeries(self._n, out)

    @cached_property
    def gradient_series(self) -> tuple["PowerSeries", ...]:
        return tuple(self.partial(j) for j in range(self._n))

    @cached_property
    def radial_series(self) -> "PowerSeries":
        return self.radial(1)

    @cached_property
    def _eval_table(self):
        if not self._terms:
            return np.zeros((0, self._n), dtype=int), np.zeros(0, dtype=complex)
        exps = np.array(list(self._terms.keys()), dtype=int).reshape(-1, self._n)
        coefs = np.array(list(self._terms.values()), dtype=complex)
        return exps, coefs

    def homogeneous_parts(self) -> dict[int, "PowerSeries"]:
        buckets: dict[int, dict] = {}
        for a, c in self._terms.items():
            buckets.setdefault(degree_of(a), {})[a] = c
        return {k: PowerSeries(self._n, buckets[k]) for k in sorted(buckets)}

    # pointwise evaluators (shared protocol with closed-form functions) -----

    def value(self, z) -> np.ndarray:
        z = as_points(z, self._n)
        exps, coefs = self._eval_table
        lead = z.shape[:-1]
        if not len(coefs):
            return np.zeros(lead, dtype=complex)
        flat = z.reshape(-1, self._n)
        maxdeg = int(exps.max())
        # powers[k, m, j] = z[m, j] ** k, built by repeated multiplication
        powers = np.empty((maxdeg + 1,) + flat.shape, dtype=complex)
        powers[0] = 1.0
        for k in range(1, maxdeg + 1):
            powers[k] = powers[k - 1] * flat
        mono = np.ones((flat.shape[0], len(coefs)), dtype=complex)
        for j in range(self._n):
            mono *= powers[exps[:, j], :, j].T
        return (mono * coefs).sum(axis=1).reshape(lead)

    def radial_value(self, z, order: int = 1) -> np.ndarray:
        if order == 1:
            return self.radial_series.value(z)
        return self.radial(order).value(z)

    def gradient_value(self, z) -> np.ndarray:
        z = as_points(z, self._n)
        return np.stack([p.value(z) for p in self.gradient_series], axis=-1)

    def radial_gradient_value(self, z) -> np.ndarray:
        return self.radial_series.gradient_value(z)


def constant(n: int, c: complex) -> PowerSeries:
    return PowerSeries(n, {(0,) * n: c})


def monomial(alpha: Sequence[int], c: complex = 1.0) -> PowerSeries:
    return PowerSeries(len(alpha), {tuple(alpha): c})


def coordinate(n: int, j: int) -> PowerSeries:
    """The coordinate function z_{j+1} (``j`` is zero-based)."""
    alpha = [0] * n
    alpha[j] = 1
    return monomial(alpha)


def evaluate(f: PowerSeries, z):
    out = f.value(z)
    return out[()] if np.ndim(out) == 0 else out


def radial_derivative(f: PowerSeries) -> PowerSeries:
    return f.radial(1)


def iterated_radial(f: PowerSeries, m: int) -> PowerSeries:
    return f.radial(m)


def gradient(f: PowerSeries) -> list[PowerSeries]:
    return list(f.gradient_series)


def homogeneous_parts(f: PowerSeries) -> dict[int, PowerSeries]:
    return f.homogeneous_parts()


def compose_polynomial(
    f: PowerSeries, phi: Sequence[PowerSeries], degree_cap: int = DEFAULT_DEGREE_CAP
) -> PowerSeries:
    """Exact composition f(phi_1(w), ..., phi_n(w)).

    Raises DegreeOverflowError when the a-priori degree bound
    ``deg f * max deg phi_j`` exceeds ``degree_cap``.
    """
    phi = list(phi)
    if len(phi) != f.dimension:
        raise DimensionError(f"f has {f.dimension} variables but phi has {len(phi)} components")
    if not phi:
        raise DimensionError("empty map")
    m = phi[0].dimension
    for p in phi:
        if p.dimension != m:
            raise DimensionError("map components have different dimensions")
    inner = max(max(p.degree for p in phi), 0)
    bound = max(f.degree, 0) * inner
    if bound > degree_cap:
        raise DegreeOverflowError(bound, degree_cap)

    cache: dict[tuple[int, int], PowerSeries] = {}

    def power(j: int, k: int) -> PowerSeries:
        if (j, k) not in cache:
            if k == 0:
                cache[(j, k)] = constant(m, 1)
            elif k == 1:
                cache[(j, k)] = phi[j]
            else:
                cache[(j, k)] = power(j, k - 1) * phi[j]
        return cache[(j, k)]

    out: dict[tuple, complex] = {}
    for alpha, c in f.terms.items():
        term = constant(m, c)
        for j, e in enumerate(alpha):
            if e:
                term = term * power(j, e)
        for b, d in term.terms.items():
            out[b] = out.get(b, 0j) + d
    return PowerSeries(m, out)


def radial_antiderivative(q: PowerSeries) -> PowerSeries:
    """The unique F with F(0) = 0 and R F = q; requires q(0) = 0."""
    if q.constant_term() != 0:
        raise ParameterError("radial antiderivative needs a vanishing constant term")
    return PowerSeries(q.dimension, {a: c / degree_of(a) for a, c in q.terms.items()})


def random_polynomial(
    rng: np.random.Generator,
    n: int,
    max_degree: int,
    max_terms: int = 4,
    min_degree: int = 0,
    scale: float = 1.0,
) -> PowerSeries:
    """Sparse random polynomial with Gaussian complex coefficients."""
    count = int(rng.integers(1, max_terms + 1))
    terms = {}
    for _ in range(count):
        deg = int(rng.integers(min_degree, max_degree + 1))
        alpha = [0] * n
        for _ in range(deg):
            alpha[int(rng.integers(0, n))] += 1
        coef = complex(rng.normal(), rng.normal()) * scale
        terms[tuple(alpha)] = terms.get(tuple(alpha), 0j) + coef
    f = PowerSeries(n, terms)
    if f.is_zero():
        return random_polynomial(rng, n, max_degree, max_terms, min_degree, scale)
    return f


def l1_norm(f: PowerSeries) -> float:
    """sum |a_alpha|, an upper bound for sup |f| over the closed ball."""
    return math.fsum(abs(c) for c in f.terms.values())
