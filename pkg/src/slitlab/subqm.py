"""Sub-quantum relaxation model of the cascade.

The model is a two-regime mixture.  A photon that suffered at least one
randomizing kick between the slits arrives with the standard QM screen
density; a photon that suffered none keeps a near-classical velocity, so it
lands where a straight ray through both slit apertures would.  Kicks form a
Poisson process with mean interval tau0, so the kicked fraction over a
transit time dt is w = 1 - exp(-dt / tau0) and the screen density is

    p = w * p_qm + (1 - w) * p_collimated.

The collimated part is exact: a ray crossing slit 1 at x1 and slit 2 at x2
(both uniform over the aperture) continues to x2 * (1 + l0/l) - x1 * (l0/l),
whose density is the convolution of two uniforms, a symmetric trapezoid of
support delta0 * (1 + 2*l0/l).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .geometry import ExperimentGeometry, PhysicalConstants, require_valid
from .qm import fraunhofer_density, screen_axis
from .rng import substream
from .screen import GridSpec, SampleSet, ScreenDensity

#: beyond this kick rate exp(-rate) underflows; treat every photon as kicked
_POISSON_RATE_CAP = 1e12

TRANSIT_CONVENTIONS = ("slit-to-slit", "total-path")


@dataclass(frozen=True)
class SubQmParams:
    """Relaxation time and the convention for the randomizing transit time."""

    tau0: float
    transit_convention: str = "slit-to-slit"
    constants: PhysicalConstants = field(default_factory=PhysicalConstants)

    def __post_init__(self) -> None:
        if not self.tau0 >= 0:
            raise ValueError(f"tau0 must be >= 0, got {self.tau0!r}")
        if self.transit_convention not in TRANSIT_CONVENTIONS:
            raise ValueError(
                f"transit_convention must be one of {TRANSIT_CONVENTIONS}, "
                f"got {self.transit_convention!r}"
            )


@dataclass(frozen=True)
class MixtureDensity:
    """The two mixture components on a shared grid plus the kicked weight."""

    weight: float
    qm_part: ScreenDensity
    concentrated_part: ScreenDensity

    def __post_init__(self) -> None:
        if not 0.0 <= self.weight <= 1.0:
            raise ValueError(f"weight must lie in [0, 1], got {self.weight!r}")
        q, c = self.qm_part, self.concentrated_part
        if q.n != c.n or q.x0 != c.x0 or q.dx != c.dx:
            raise ValueError("mixture components must share one grid")
        q.require_normalized()
        c.require_normalized()

    def blended(self) -> ScreenDensity:
        if self.weight == 1.0:
            return self.qm_part
        vals = self.weight * self.qm_part.values + (1.0 - self.weight) * self.concentrated_part.values
        return ScreenDensity(self.qm_part.x0, self.qm_part.dx, vals).normalized()


def transit_time(geometry: ExperimentGeometry, params: SubQmParams) -> float:
    """Randomizing transit time: l/c by default, (l + l0)/c for total-path."""
    path = geometry.l
    if params.transit_convention == "total-path":
        path = geometry.l + geometry.l0
    return path / params.constants.c


def mixture_weight(geometry: ExperimentGeometry, params: SubQmParams) -> float:
    """Probability that at least one kick occurred in transit: 1 - exp(-dt/tau0)."""
    require_valid(geometry)
    if params.tau0 == 0.0:
        return 1.0
    return float(-np.expm1(-transit_time(geometry, params) / params.tau0))


def concentrated_density(
    geometry: ExperimentGeometry, grid: GridSpec = GridSpec()
) -> ScreenDensity:
    """Screen density of straight rays through both slits, evaluated exactly.

    Convolution of uniforms of widths a = delta0*(1 + l0/l) and
    b = delta0*l0/l: a trapezoid with support a + b and flat top a - b.
    """
    require_valid(geometry)
    ratio = geometry.l0 / geometry.l
    a = geometry.delta0 * (1.0 + ratio)
    b = geometry.delta0 * ratio
    x = screen_axis(geometry, grid)
    lo = np.maximum(-a / 2.0, x - b / 2.0)
    hi = np.minimum(a / 2.0, x + b / 2.0)
    vals = np.maximum(0.0, hi - lo) / (a * b)
    return ScreenDensity(float(x[0]), float(x[1] - x[0]), vals).normalized()


def mixture(
    geometry: ExperimentGeometry, params: SubQmParams, grid: GridSpec = GridSpec()
) -> MixtureDensity:
    return MixtureDensity(
        weight=mixture_weight(geometry, params),
        qm_part=fraunhofer_density(geometry, grid),
        concentrated_part=concentrated_density(geometry, grid),
    )


def subqm_density(
    geometry: ExperimentGeometry, params: SubQmParams, grid: GridSpec = GridSpec()
) -> ScreenDensity:
    """Relaxation-model screen density; reduces to the QM density when w = 1."""
    return mixture(geometry, params, grid).blended()


def simulate_photons(
    geometry: ExperimentGeometry,
    params: SubQmParams,
    n: int,
    seed: int,
    grid: GridSpec = GridSpec(),
) -> SampleSet:
    """Photon-level Monte Carlo of the mixture.

    Per photon: a Poisson kick count over the transit time decides the
    branch; kicked photons sample the QM density by inverse CDF, unkicked
    ones take the exact two-uniform ray construction.  All variates are
    drawn in one fixed vectorized layout from the (seed,) substream, so
    photon i's position never depends on the other photons.
    """
    if n < 1:
        raise ValueError(f"photon count must be >= 1, got {n!r}")
    require_valid(geometry)
    rng = substream(seed)

    if params.tau0 == 0.0:
        kicked = np.ones(n, dtype=bool)
    else:
        rate = transit_time(geometry, params) / params.tau0
        if rate > _POISSON_RATE_CAP:
            kicked = np.ones(n, dtype=bool)
        else:
            kicked = rng.poisson(rate, n) > 0

    half = geometry.delta0 / 2.0
    x1 = rng.uniform(-half, half, n)
    x2 = rng.uniform(-half, half, n)
    ratio = geometry.l0 / geometry.l
    ray_hits = x2 * (1.0 + ratio) - x1 * ratio

    qm_hits = fraunhofer_density(geometry, grid).sample_positions(rng.random(n))
    return SampleSet(np.where(kicked, qm_hits, ray_hits), seed, n)


def critical_length(params: SubQmParams) -> float:
    """Slit separation below which the collimated branch dominates: c * tau0."""
    return params.constants.c * params.tau0
