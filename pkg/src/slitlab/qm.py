"""Standard-QM screen densities for the two-slit cascade.

Two routes to the same physics: the analytic far-field single-slit pattern
(sinc^2 with nulls at multiples of l0*lambda0/delta0), and a numerical
cascade that propagates a scalar field slit 1 -> slit 2 -> screen with the
1D Fresnel diffraction integral evaluated by direct quadrature,

    u_out(x) = (lambda*z)^(-1/2) * exp(-i pi/4)
               * integral u_in(xi) exp(i pi (x - xi)^2 / (lambda z)) dxi.

The quadrature is deliberately a plain O(N_out * N_in) sum, no transform
tricks: it is transparent, exact to trapezoid order, and places the output
grid anywhere.  A constant phase factor exp(i 2 pi z / lambda) is dropped;
nothing downstream sees absolute phase.
"""

from __future__ import annotations

import numpy as np

from .geometry import ExperimentGeometry, first_null, require_valid
from .rng import substream
from .screen import ComplexField, GridSpec, SampleSet, ScreenDensity, symmetric_axis

#: reject screen grids that cannot resolve the pattern structure
MIN_POINTS_PER_NULL = 16

#: quadrature matrix entries evaluated per chunk (memory bound, not accuracy)
_CHUNK_ENTRIES = 4_000_000


def screen_axis(geometry: ExperimentGeometry, grid: GridSpec) -> np.ndarray:
    """Symmetric screen grid spanning +- window_halfwidth_in_nulls first nulls."""
    halfwidth = grid.window_halfwidth_in_nulls * first_null(geometry)
    dx = 2.0 * halfwidth / grid.points
    return symmetric_axis(grid.points, dx)


def _require_resolving(grid: GridSpec) -> None:
    per_null = grid.points / (2.0 * grid.window_halfwidth_in_nulls)
    if per_null < MIN_POINTS_PER_NULL:
        raise ValueError(
            f"grid too coarse: {per_null:.1f} points per null spacing, "
            f"need at least {MIN_POINTS_PER_NULL}"
        )


def fraunhofer_density(geometry: ExperimentGeometry, grid: GridSpec = GridSpec()) -> ScreenDensity:
    """Far-field single-slit pattern, sinc^2(x / x_1null), normalized on the window."""
    require_valid(geometry)
    _require_resolving(grid)
    x = screen_axis(geometry, grid)
    vals = np.sinc(x / first_null(geometry)) ** 2
    return ScreenDensity(float(x[0]), float(x[1] - x[0]), vals).normalized()


def fresnel_propagate(
    field: ComplexField,
    distance: float,
    lambda0: float,
    out_x: np.ndarray | None = None,
) -> ComplexField:
    """Propagate a field by `distance` onto the requested output grid.

    Direct trapezoid quadrature of the Fresnel integral.  The input spacing
    must satisfy  d_xi <= lambda * z / (2 * (|x|_max + |xi|_max))  so the
    quadratic phase advances less than pi between samples; violations are
    rejected with the required spacing in the message.
    """
    if not distance > 0:
        raise ValueError(f"propagation distance must be positive, got {distance!r}")
    if not lambda0 > 0:
        raise ValueError(f"wavelength must be positive, got {lambda0!r}")
    xi = field.x
    if out_x is None:
        out = xi
    else:
        out = np.asarray(out_x, dtype=float)
        if out.ndim != 1 or out.size < 2:
            raise ValueError("output grid must be a 1-d array with at least 2 points")
        steps = np.diff(out)
        if not np.allclose(steps, steps[0], rtol=1e-9, atol=0.0):
            raise ValueError("output grid must be uniformly spaced")

    reach = np.abs(out).max() + np.abs(xi).max()
    required = lambda0 * distance / (2.0 * reach)
    if field.dx > required:
        raise ValueError(
            f"input spacing {field.dx:.4g} m violates the Fresnel sampling criterion; "
            f"need dxi <= {required:.4g} m for this window and distance"
        )

    weights = np.full(field.n, field.dx)
    weights[0] *= 0.5
    weights[-1] *= 0.5
    source = field.amplitudes * weights

    coef = np.pi / (lambda0 * distance)
    result = np.empty(out.size, dtype=complex)
    chunk = max(1, _CHUNK_ENTRIES // field.n)
    for start in range(0, out.size, chunk):
        diff = out[start : start + chunk, None] - xi[None, :]
        result[start : start + chunk] = np.exp(1j * (coef * diff * diff)) @ source
    result /= np.sqrt(1j * lambda0 * distance)
    return ComplexField(float(out[0]), float(out[1] - out[0]), result)


def _slit_points(grid: GridSpec, slit_points: int | None) -> int:
    # The aperture is tiny compared to the screen window; an eighth of the
    # screen point count oversamples it by orders of magnitude already.
    if slit_points is None:
        return max(512, grid.points // 8)
    if slit_points < 16:
        raise ValueError(f"slit_points must be >= 16, got {slit_points!r}")
    return slit_points


def cascade_density(
    geometry: ExperimentGeometry,
    grid: GridSpec = GridSpec(),
    slit_points: int | None = None,
) -> ScreenDensity:
    """Numerical two-slit cascade density.

    Pipeline: unit-amplitude uniform field across slit 1, Fresnel propagation
    over l, multiplication by the slit-2 indicator, Fresnel propagation over
    l0, squared magnitude, renormalization on the screen window.
    """
    require_valid(geometry)
    n_slit = _slit_points(grid, slit_points)
    half = geometry.delta0 / 2.0
    aperture = np.linspace(-half, half, n_slit)
    d_ap = aperture[1] - aperture[0]

    at_slit1 = ComplexField(float(aperture[0]), float(d_ap), np.ones(n_slit, dtype=complex))
    at_slit2 = fresnel_propagate(at_slit1, geometry.l, geometry.lambda0, out_x=aperture)

    indicator = (np.abs(aperture) <= half).astype(float)
    gated = ComplexField(at_slit2.x0, at_slit2.dx, at_slit2.amplitudes * indicator)

    x = screen_axis(geometry, grid)
    at_screen = fresnel_propagate(gated, geometry.l0, geometry.lambda0, out_x=x)
    vals = np.abs(at_screen.amplitudes) ** 2
    return ScreenDensity(float(x[0]), float(x[1] - x[0]), vals).normalized()


def sample_density(density: ScreenDensity, n: int, seed: int) -> SampleSet:
    """Draw n arrival positions by inverse-CDF sampling; deterministic per seed."""
    if n < 1:
        raise ValueError(f"sample count must be >= 1, got {n!r}")
    density.require_normalized()
    rng = substream(seed)
    positions = density.sample_positions(rng.random(n))
    return SampleSet(positions, seed, n)
