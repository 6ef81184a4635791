"""Points of the unit ball of C^n and deterministic sampling grids.

A point is a 1-d complex numpy array of length n.  Every routine that takes
points also accepts a stack of them, shape ``(M, n)``, and works along the
last axis.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy.special import ndtri
from scipy.stats import qmc

from .errors import DimensionError, ParameterError

__all__ = [
    "as_points",
    "inner_product",
    "ball_norm",
    "SamplingGrid",
    "make_grid",
    "shell_radius",
]


def as_points(z, n: int | None = None) -> np.ndarray:
    """Coerce ``z`` to a complex array of shape ``(..., n)``."""
    arr = np.asarray(z, dtype=complex)
    if arr.ndim == 0:
        arr = arr.reshape(1)
    if n is not None and arr.shape[-1] != n:
        raise DimensionError(f"expected points of dimension {n}, got {arr.shape[-1]}")
    return arr


def inner_product(z, w):
    """Hermitian product sum_k z_k conj(w_k), broadcast over leading axes."""
    z = as_points(z)
    w = as_points(w)
    if z.shape[-1] != w.shape[-1]:
        raise DimensionError(f"dimension mismatch: {z.shape[-1]} vs {w.shape[-1]}")
    out = np.sum(z * np.conj(w), axis=-1)
    return out[()] if out.ndim == 0 else out


def ball_norm(z):
    """Euclidean norm |z| on C^n."""
    z = as_points(z)
    out = np.sqrt(np.sum(z.real**2 + z.imag**2, axis=-1))
    return out[()] if out.ndim == 0 else out


def shell_radius(j: int) -> float:
    return 1.0 - 2.0 ** (-j)


def _sphere_directions(n: int, count: int, seed: int) -> np.ndarray:
    if n == 1:
        k = np.arange(count)
        return np.exp(2j * np.pi * k / count).reshape(count, 1)
    # Scrambled Halton in R^{2n}, pushed through the normal quantile and
    # normalised; prefixes are stable, so larger counts refine smaller ones.
    u = qmc.Halton(d=2 * n, scramble=True, seed=seed).random(count)
    u = np.clip(u, 1e-15, 1.0 - 1e-15)
    x = ndtri(u)
    x /= np.linalg.norm(x, axis=1, keepdims=True)
    return x[:, :n] + 1j * x[:, n:]


@dataclass(frozen=True)
class SamplingGrid:
    """Shells of points in the unit ball.

    Dyadic levels sit at radii ``1 - 2**-l`` for ``l = 0 .. levels-1``.  With
    ``substeps = m > 1`` every gap between consecutive levels gets ``m - 1``
    extra equally spaced shells; level ``l`` then owns the shells in
    ``(r_{l-1}, r_l]``.  The origin shell is a single point.
    """

    dimension: int
    levels: int
    points_per_shell: int
    direction_seed: int = 0
    substeps: int = 1

    def __post_init__(self):
        if self.dimension < 1:
            raise ParameterError("dimension must be >= 1")
        if self.levels < 1:
            raise ParameterError("shell count must be >= 1")
        if self.points_per_shell < 1:
            raise ParameterError("points per shell must be >= 1")
        if self.substeps < 1:
            raise ParameterError("substeps must be >= 1")
        if self.direction_seed < 0:
            raise ParameterError("seed must be non-negative")

    @cached_property
    def _shell_table(self):
        radii = [0.0]
        level = [0]
        for lev in range(1, self.levels):
            lo, hi = shell_radius(lev - 1), shell_radius(lev)
            for k in range(1, self.substeps + 1):
                radii.append(hi if k == self.substeps else lo + (hi - lo) * k / self.substeps)
                level.append(lev)
        radii = np.array(radii)
        level = np.array(level, dtype=int)
        radii.setflags(write=False)
        level.setflags(write=False)
        return radii, level

    @property
    def shells(self) -> np.ndarray:
        return self._shell_table[0]

    @property
    def shell_level(self) -> np.ndarray:
        return self._shell_table[1]

    @cached_property
    def directions(self) -> np.ndarray:
        d = _sphere_directions(self.dimension, self.points_per_shell, self.direction_seed)
        d.setflags(write=False)
        return d

    @cached_property
    def _layout(self):
        radii = self.shells
        dirs = self.directions
        pts = [np.zeros((1, self.dimension), dtype=complex)]
        shell_idx = [np.zeros(1, dtype=int)]
        for j in range(1, len(radii)):
            pts.append(radii[j] * dirs)
            shell_idx.append(np.full(len(dirs), j, dtype=int))
        points = np.concatenate(pts)
        shell_of = np.concatenate(shell_idx)
        points.setflags(write=False)
        shell_of.setflags(write=False)
        return points, shell_of

    @property
    def points(self) -> np.ndarray:
        return self._layout[0]

    @property
    def shell_of_point(self) -> np.ndarray:
        return self._layout[1]

    @property
    def level_of_point(self) -> np.ndarray:
        return self.shell_level[self.shell_of_point]

    @property
    def max_radius(self) -> float:
        return float(self.shells[-1])

    def __len__(self) -> int:
        return len(self.points)

    def refined(self, extra_levels: int = 0, point_factor: int = 1) -> "SamplingGrid":
        """Grid whose point set contains this one."""
        return SamplingGrid(
            self.dimension,
            self.levels + extra_levels,
            self.points_per_shell * point_factor,
            self.direction_seed,
            self.substeps,
        )

    def with_dimension(self, n: int, points_per_shell: int | None = None) -> "SamplingGrid":
        return SamplingGrid(
            n,
            self.levels,
            points_per_shell or self.points_per_shell,
            self.direction_seed,
            self.substeps,
        )

    def descriptor(self) -> dict:
        return {
            "n": self.dimension,
            "shells": self.levels,
            "points": self.points_per_shell,
            "seed": self.direction_seed,
            "substeps": self.substeps,
        }

    def level_maxima(self, values: np.ndarray) -> np.ndarray:
        """Per-level maxima of a per-point array (the shell trace)."""
        out = np.full(self.levels, -np.inf)
        np.maximum.at(out, self.level_of_point, values)
        return out


def make_grid(n: int, shells: int, points: int, seed: int = 0, substeps: int = 1) -> SamplingGrid:
    """Build the shell grid with ``shells`` dyadic levels and ``points`` directions.

    >>> g = make_grid(1, 3, 4)
    >>> sorted(set(np.round(np.abs(g.points[:, 0]), 12)))
    [0.0, 0.5, 0.75]
    """
    return SamplingGrid(n, shells, points, seed, substeps)
