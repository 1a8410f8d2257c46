"""Screen-plane containers: uniform grids, probability densities, complex
scalar fields, and Monte Carlo sample sets.

A density lives on a uniform grid of ``points`` positions ``x0 + i*dx``.  For
mass bookkeeping each grid point owns the cell ``[x_i - dx/2, x_i + dx/2]``,
so a normalized density satisfies ``sum(values) * dx == 1``.  The matching
cumulative distribution is piecewise linear across cells, which is also the
convention the inverse-CDF sampler inverts exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

NORMALIZATION_TOL = 1e-9


def symmetric_axis(points: int, dx: float) -> np.ndarray:
    """Grid centred on zero: (i - points//2) * dx.  Contains x = 0 exactly."""
    return (np.arange(points) - points // 2) * dx


@dataclass(frozen=True)
class GridSpec:
    """Screen grid request: point count and half-width in first-null units."""

    points: int = 8192
    window_halfwidth_in_nulls: float = 12.0

    def __post_init__(self) -> None:
        p = self.points
        if not (isinstance(p, int) and not isinstance(p, bool)) or p < 256 or p & (p - 1):
            raise ValueError(f"points must be a power of two >= 256, got {p!r}")
        if not self.window_halfwidth_in_nulls >= 4:
            raise ValueError(
                f"window_halfwidth_in_nulls must be >= 4, got {self.window_halfwidth_in_nulls!r}"
            )


@dataclass(frozen=True)
class ScreenDensity:
    """Probability density of arrival position on a uniform grid (units 1/m)."""

    x0: float
    dx: float
    values: np.ndarray

    def __post_init__(self) -> None:
        vals = np.asarray(self.values, dtype=float)
        if vals.ndim != 1 or vals.size < 2:
            raise ValueError("values must be a 1-d array with at least 2 points")
        if not self.dx > 0:
            raise ValueError(f"dx must be strictly positive, got {self.dx!r}")
        if not np.all(np.isfinite(vals)):
            raise ValueError("density values must be finite")
        if np.any(vals < 0):
            raise ValueError("density values must be non-negative")
        vals = vals.copy()
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    @property
    def n(self) -> int:
        return self.values.size

    @property
    def x(self) -> np.ndarray:
        return self.x0 + self.dx * np.arange(self.n)

    def total_mass(self) -> float:
        return float(self.values.sum() * self.dx)

    def normalized(self) -> "ScreenDensity":
        total = self.total_mass()
        if total <= 0:
            raise ValueError("cannot normalize a density with zero total mass")
        return ScreenDensity(self.x0, self.dx, self.values / total)

    def require_normalized(self, tol: float = NORMALIZATION_TOL) -> None:
        total = self.total_mass()
        if abs(total - 1.0) > tol:
            raise ValueError(f"density is not normalized: total mass {total!r}")

    def cell_edges(self) -> np.ndarray:
        """n + 1 boundaries of the per-point cells."""
        return self.x0 - 0.5 * self.dx + self.dx * np.arange(self.n + 1)

    def cdf(self, x) -> np.ndarray:
        """Cumulative mass left of x, piecewise linear across cells."""
        masses = self.values * self.dx
        cum = np.concatenate([[0.0], np.cumsum(masses)])
        cum /= cum[-1]
        return np.interp(np.asarray(x, dtype=float), self.cell_edges(), cum)

    def sample_positions(self, uniforms: np.ndarray) -> np.ndarray:
        """Map uniform [0,1) variates through the inverse of :meth:`cdf`."""
        masses = self.values * self.dx
        cum = np.cumsum(masses)
        u = np.asarray(uniforms, dtype=float) * cum[-1]
        idx = np.searchsorted(cum, u, side="right")
        idx = np.minimum(idx, masses.size - 1)
        below = np.where(idx > 0, cum[idx - 1], 0.0)
        cell_mass = masses[idx]
        frac = np.where(cell_mass > 0, (u - below) / np.where(cell_mass > 0, cell_mass, 1.0), 0.0)
        left = self.x0 - 0.5 * self.dx + idx * self.dx
        return left + frac * self.dx


@dataclass(frozen=True)
class ComplexField:
    """Scalar wave amplitude on a uniform grid, up to a common constant factor."""

    x0: float
    dx: float
    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        amps = np.asarray(self.amplitudes, dtype=complex)
        if amps.ndim != 1 or amps.size < 2:
            raise ValueError("amplitudes must be a 1-d array with at least 2 points")
        if not self.dx > 0:
            raise ValueError(f"dx must be strictly positive, got {self.dx!r}")
        if not np.all(np.isfinite(amps)):
            raise ValueError("field amplitudes must be finite")
        amps = amps.copy()
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @property
    def n(self) -> int:
        return self.amplitudes.size

    @property
    def x(self) -> np.ndarray:
        return self.x0 + self.dx * np.arange(self.n)

    def power(self) -> float:
        """Integral of |amplitude|^2 over the grid (trapezoid rule)."""
        return float(np.trapezoid(np.abs(self.amplitudes) ** 2, dx=self.dx))


@dataclass(frozen=True)
class SampleSet:
    """Monte Carlo arrival positions with their seed provenance."""

    positions: np.ndarray
    seed: int | None
    n: int

    def __post_init__(self) -> None:
        pos = np.asarray(self.positions, dtype=float)
        if pos.ndim != 1:
            raise ValueError("positions must be a 1-d array")
        if pos.size != self.n:
            raise ValueError(f"n = {self.n} does not match len(positions) = {pos.size}")
        if not np.all(np.isfinite(pos)):
            raise ValueError("positions must be finite")
        pos = pos.copy()
        pos.setflags(write=False)
        object.__setattr__(self, "positions", pos)
