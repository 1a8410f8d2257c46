"""Order-of-magnitude chain from particle densities to the relaxation time.

The chain: a mean normal-particle density, scaled up by the dark-to-normal
ratio, gives a dark-particle density; sweeping an effective cross-section at
the speed of light converts that to a mean interaction rate, whose inverse
is the relaxation time tau0; c * tau0 is then the critical slit separation.
The 1 m^2 default cross-section is the weakest link of the argument and is
exposed as a parameter for exactly that reason.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .geometry import PhysicalConstants

#: reference lower bound quoted for the relaxation time (1 ps)
TAU0_LOWER_BOUND = 1e-12


@dataclass(frozen=True)
class CosmologyParams:
    baryon_density: float = 1.0               # count / m^3
    normal_particle_density: float = 100.0    # count / m^3
    dark_to_normal_ratio: float = 10.0
    effective_cross_section: float = 1.0      # m^2
    constants: PhysicalConstants = field(default_factory=PhysicalConstants)

    def __post_init__(self) -> None:
        for name in (
            "baryon_density",
            "normal_particle_density",
            "dark_to_normal_ratio",
            "effective_cross_section",
        ):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be strictly positive, got {getattr(self, name)!r}")


@dataclass(frozen=True)
class Tau0Estimate:
    tau0: float
    lower_bound: float
    bound_satisfied: bool


def dark_particle_density(params: CosmologyParams) -> float:
    return params.normal_particle_density * params.dark_to_normal_ratio


def mean_interaction_interval(params: CosmologyParams) -> float:
    """Mean time between dark-particle interactions: 1 / (n_dark * c * sigma)."""
    return 1.0 / (dark_particle_density(params) * params.constants.c * params.effective_cross_section)


def estimate_tau0(params: CosmologyParams) -> Tau0Estimate:
    tau0 = mean_interaction_interval(params)
    return Tau0Estimate(
        tau0=tau0,
        lower_bound=TAU0_LOWER_BOUND,
        bound_satisfied=tau0 >= TAU0_LOWER_BOUND,
    )


def critical_length_from_cosmology(params: CosmologyParams) -> float:
    return params.constants.c * estimate_tau0(params).tau0


def chain_report(params: CosmologyParams) -> dict:
    """Every intermediate quantity of the chain, for inspection and the CLI."""
    est = estimate_tau0(params)
    return {
        "c_m_per_s": params.constants.c,
        "rounding_mode": params.constants.rounding_mode,
        "baryon_density_per_m3": params.baryon_density,
        "normal_particle_density_per_m3": params.normal_particle_density,
        "dark_to_normal_ratio": params.dark_to_normal_ratio,
        "dark_particle_density_per_m3": dark_particle_density(params),
        "effective_cross_section_m2": params.effective_cross_section,
        "mean_interaction_interval_s": mean_interaction_interval(params),
        "tau0_s": est.tau0,
        "tau0_lower_bound_s": est.lower_bound,
        "lower_bound_satisfied": est.bound_satisfied,
        "critical_length_m": critical_length_from_cosmology(params),
        "critical_length_at_lower_bound_m": params.constants.c * TAU0_LOWER_BOUND,
    }
