"""Experiment configuration and the closed-form single-slit diffraction lengths.

Everything here is SI base units (metres, seconds).  The instrument is two
identical coaxial slits of width ``delta0`` separated by ``l``, with the
screen a further ``l0`` behind the second slit.  Unit conversion (nm, um, mm)
is the caller's job, typically at the CLI boundary.
"""

from __future__ import annotations

from dataclasses import dataclass, field

EXACT_C = 299_792_458.0  # CODATA, m/s
PAPER_C = 3.0e8          # one-digit rounding used in back-of-envelope chains

#: soft separation factor used to operationalize "much smaller than"
FAR_FIELD_FACTOR = 10.0


@dataclass(frozen=True)
class PhysicalConstants:
    """Speed of light, either exact or rounded to one digit.

    The rounded mode exists only to reproduce order-of-magnitude arithmetic
    bit for bit; use the default everywhere else.
    """

    rounding_mode: str = "exact"  # "exact" | "paper"

    def __post_init__(self) -> None:
        if self.rounding_mode not in ("exact", "paper"):
            raise ValueError(
                f"rounding_mode must be 'exact' or 'paper', got {self.rounding_mode!r}"
            )

    @property
    def c(self) -> float:
        return EXACT_C if self.rounding_mode == "exact" else PAPER_C


@dataclass(frozen=True)
class ExperimentGeometry:
    """One instrument configuration.

    lambda0: light wavelength
    delta0:  slit width (both slits identical)
    l0:      second slit to screen distance
    l:       first slit to second slit distance
    """

    lambda0: float
    delta0: float
    l0: float
    l: float


@dataclass
class ValidationReport:
    """Hard constraint violations (errors) and soft-separation findings (warnings)."""

    errors: list = field(default_factory=list)
    warnings: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.errors


def validate(geometry: ExperimentGeometry) -> ValidationReport:
    """Check a geometry without raising; all findings go in the report.

    Errors: any non-positive length, or the screen leg longer than the slit
    separation (l < l0).  Warnings: the far-field separations are soft, so a
    slit width above l0/10, or a heuristic screen dispersion within a factor
    of 10 of the slit width, only warn.
    """
    report = ValidationReport()
    for name in ("lambda0", "delta0", "l0", "l"):
        value = getattr(geometry, name)
        if not value > 0.0:
            report.errors.append(f"{name} must be strictly positive, got {value!r}")
    if geometry.l0 > 0 and geometry.l > 0 and geometry.l < geometry.l0:
        report.errors.append(
            f"slit separation l = {geometry.l!r} must be >= screen distance l0 = {geometry.l0!r}"
        )
    if report.errors:
        return report

    if geometry.delta0 > geometry.l0 / FAR_FIELD_FACTOR:
        report.warnings.append(
            "delta0 is not small compared to l0: "
            f"delta0/l0 = {geometry.delta0 / geometry.l0:.3g} > 1/{FAR_FIELD_FACTOR:g}"
        )
    spread = 4.0 * geometry.l0 * geometry.lambda0 / geometry.delta0
    if spread <= FAR_FIELD_FACTOR * geometry.delta0:
        report.warnings.append(
            "heuristic screen dispersion is not large compared to the slit width: "
            f"dispersion/delta0 = {spread / geometry.delta0:.3g} <= {FAR_FIELD_FACTOR:g}"
        )
    return report


def require_valid(geometry: ExperimentGeometry) -> None:
    """Raise ValueError when the geometry has hard constraint violations."""
    report = validate(geometry)
    if not report.ok:
        raise ValueError("invalid geometry: " + "; ".join(report.errors))


def first_null(geometry: ExperimentGeometry) -> float:
    """Position of the first zero of the single-slit screen pattern: l0*lambda0/delta0."""
    require_valid(geometry)
    return geometry.l0 * geometry.lambda0 / geometry.delta0


def kth_null(geometry: ExperimentGeometry, k: int) -> float:
    """k-th pattern zero, k*first_null.  k = 0 is the central maximum, not a null."""
    if not isinstance(k, int) or isinstance(k, bool) or k < 1:
        raise ValueError(f"null index k must be an integer >= 1, got {k!r}")
    return k * first_null(geometry)


def heuristic_dispersion(geometry: ExperimentGeometry) -> float:
    """Rule-of-thumb screen dispersion, four first-null spacings: 4*l0*lambda0/delta0."""
    require_valid(geometry)
    return 4.0 * geometry.l0 * geometry.lambda0 / geometry.delta0


def transit_times(
    geometry: ExperimentGeometry, constants: PhysicalConstants = PhysicalConstants()
) -> tuple[float, float]:
    """Light transit times (slit 1 to slit 2, slit 2 to screen) = (l/c, l0/c)."""
    require_valid(geometry)
    return geometry.l / constants.c, geometry.l0 / constants.c
