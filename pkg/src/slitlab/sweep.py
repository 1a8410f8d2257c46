"""Sweep harness: estimate the screen dispersion across slit separations.

For each requested separation l and each engine, compute the screen density
(or a photon sample), apply the minimal-mass-interval estimator, and record
the result next to the rule-of-thumb dispersion and the mixture weight.  The
sweep is a pure function of its configuration: every random draw comes from
a substream keyed by (seed, l index, engine), so output files are
byte-identical across runs regardless of evaluation order.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace

import numpy as np

from . import qm, subqm
from .dispersion import (
    DispersionResult,
    bootstrap_interval,
    minimal_mass_interval,
    minimal_mass_interval_samples,
)
from .geometry import ExperimentGeometry, PhysicalConstants, heuristic_dispersion, require_valid
from .rng import derive_seed
from .screen import GridSpec, ScreenDensity
from .subqm import SubQmParams

ENGINES = ("fraunhofer", "fresnel-cascade", "subqm-analytic", "subqm-mc")
_QM_ENGINES = ("fraunhofer", "fresnel-cascade")
_SUBQM_ENGINES = ("subqm-analytic", "subqm-mc")

CSV_HEADER = "l_m,engine,delta_x_m,delta_x_heuristic_m,mixture_weight,achieved_mass,ci_low_m,ci_high_m"

_DEFAULT_L_VALUES = tuple(float(v) for v in np.geomspace(0.3e-3, 0.3, 25))


@dataclass(frozen=True)
class SweepConfig:
    lambda0: float = 700e-9
    delta0: float = 10e-6
    l0: float = 0.3e-3
    l_values: tuple = _DEFAULT_L_VALUES
    tau0: float = 100e-12
    engines: tuple = ("fraunhofer", "subqm-analytic")
    mc_samples: int = 100_000
    seed: int = 0
    mass_threshold: float = 0.7
    grid: GridSpec = field(default_factory=GridSpec)
    transition_fraction: float = 0.95

    def __post_init__(self) -> None:
        if not self.engines:
            raise ValueError("engines must be a non-empty subset of " + repr(ENGINES))
        unknown = [e for e in self.engines if e not in ENGINES]
        if unknown:
            raise ValueError(f"unknown engines {unknown}; choose from {ENGINES}")
        if len(set(self.engines)) != len(self.engines):
            raise ValueError(f"duplicate engines in {self.engines}")
        ls = self.l_values
        if len(ls) == 0:
            raise ValueError("l_values must be non-empty")
        if any(b <= a for a, b in zip(ls, ls[1:])):
            raise ValueError("l_values must be strictly increasing")
        if ls[0] < self.l0:
            raise ValueError(f"every l must be >= l0 = {self.l0!r}, got {ls[0]!r}")
        if not 0.0 < self.mass_threshold < 1.0:
            raise ValueError(f"mass_threshold must lie in (0, 1), got {self.mass_threshold!r}")
        if self.mc_samples < 1:
            raise ValueError(f"mc_samples must be >= 1, got {self.mc_samples!r}")
        if not 0.0 < self.transition_fraction <= 1.0:
            raise ValueError(
                f"transition_fraction must lie in (0, 1], got {self.transition_fraction!r}"
            )

    def geometry_at(self, l: float) -> ExperimentGeometry:
        return ExperimentGeometry(self.lambda0, self.delta0, self.l0, l)

    def subqm_params(self) -> SubQmParams:
        return SubQmParams(tau0=self.tau0)

    @classmethod
    def from_dict(cls, raw: dict) -> "SweepConfig":
        known = {
            "lambda0_m", "delta0_m", "l0_m", "l_values_m", "tau0_s", "engines",
            "mc_samples", "seed", "mass_threshold", "grid", "transition_fraction",
        }
        unknown = set(raw) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        kwargs = {}
        for src, dst, conv in (
            ("lambda0_m", "lambda0", float),
            ("delta0_m", "delta0", float),
            ("l0_m", "l0", float),
            ("tau0_s", "tau0", float),
            ("mc_samples", "mc_samples", int),
            ("seed", "seed", int),
            ("mass_threshold", "mass_threshold", float),
            ("transition_fraction", "transition_fraction", float),
        ):
            if src in raw:
                kwargs[dst] = conv(raw[src])
        if "l_values_m" in raw:
            kwargs["l_values"] = tuple(float(v) for v in raw["l_values_m"])
        if "engines" in raw:
            kwargs["engines"] = tuple(raw["engines"])
        if "grid" in raw:
            g = raw["grid"]
            kwargs["grid"] = GridSpec(
                points=int(g.get("points", 8192)),
                window_halfwidth_in_nulls=float(g.get("window_nulls", 12.0)),
            )
        return cls(**kwargs)

    def to_dict(self) -> dict:
        return {
            "lambda0_m": self.lambda0,
            "delta0_m": self.delta0,
            "l0_m": self.l0,
            "l_values_m": list(self.l_values),
            "tau0_s": self.tau0,
            "engines": list(self.engines),
            "mc_samples": self.mc_samples,
            "seed": self.seed,
            "mass_threshold": self.mass_threshold,
            "grid": {"points": self.grid.points, "window_nulls": self.grid.window_halfwidth_in_nulls},
            "transition_fraction": self.transition_fraction,
        }


@dataclass(frozen=True)
class SweepRecord:
    l: float
    engine: str
    delta_x: float
    delta_x_heuristic: float
    achieved_mass: float
    mixture_weight: float | None = None
    ci_low: float | None = None
    ci_high: float | None = None
    fresnel_number_slit_leg: float | None = None
    fresnel_number_screen_leg: float | None = None

    def to_dict(self) -> dict:
        return {
            "l_m": self.l,
            "engine": self.engine,
            "delta_x_m": self.delta_x,
            "delta_x_heuristic_m": self.delta_x_heuristic,
            "mixture_weight": self.mixture_weight,
            "achieved_mass": self.achieved_mass,
            "ci_low_m": self.ci_low,
            "ci_high_m": self.ci_high,
            "fresnel_number_slit_leg": self.fresnel_number_slit_leg,
            "fresnel_number_screen_leg": self.fresnel_number_screen_leg,
        }


@dataclass
class SweepResult:
    config: SweepConfig
    records: list
    transition_l: float | None = None
    transition_pair: tuple | None = None

    def record(self, l: float, engine: str) -> SweepRecord:
        for rec in self.records:
            if rec.l == l and rec.engine == engine:
                return rec
        raise KeyError(f"no record for l={l!r}, engine={engine!r}")

    def deltas_for(self, engine: str) -> list:
        return [rec.delta_x for rec in self.records if rec.engine == engine]


def _engine_dispersion(
    config: SweepConfig, l_index: int, engine: str
) -> tuple[DispersionResult, float | None, tuple | None]:
    """(dispersion, mixture weight, bootstrap ci) for one sweep point."""
    geometry = config.geometry_at(config.l_values[l_index])
    params = config.subqm_params()
    weight = None
    ci = None
    if engine == "fraunhofer":
        density = qm.fraunhofer_density(geometry, config.grid)
        result = minimal_mass_interval(density, config.mass_threshold)
    elif engine == "fresnel-cascade":
        density = qm.cascade_density(geometry, config.grid)
        result = minimal_mass_interval(density, config.mass_threshold)
    elif engine == "subqm-analytic":
        density = subqm.subqm_density(geometry, params, config.grid)
        result = minimal_mass_interval(density, config.mass_threshold)
        weight = subqm.mixture_weight(geometry, params)
    elif engine == "subqm-mc":
        samples = subqm.simulate_photons(
            geometry, params, config.mc_samples,
            seed=derive_seed(config.seed, l_index, engine), grid=config.grid,
        )
        result = minimal_mass_interval_samples(samples, config.mass_threshold)
        weight = subqm.mixture_weight(geometry, params)
        ci = bootstrap_interval(
            samples, config.mass_threshold,
            seed=derive_seed(config.seed, l_index, engine, "bootstrap"),
        )
    else:  # pragma: no cover - guarded by config validation
        raise ValueError(f"unknown engine {engine!r}")
    return result, weight, ci


def run_sweep(config: SweepConfig) -> SweepResult:
    """Run every (l, engine) point; deterministic given the config."""
    for l in config.l_values:
        require_valid(config.geometry_at(l))

    records = []
    for l_index, l in enumerate(config.l_values):
        geometry = config.geometry_at(l)
        heuristic = heuristic_dispersion(geometry)
        nf_slit = config.delta0**2 / (4.0 * config.lambda0 * l)
        nf_screen = config.delta0**2 / (4.0 * config.lambda0 * config.l0)
        for engine in config.engines:
            try:
                result, weight, ci = _engine_dispersion(config, l_index, engine)
            except Exception as exc:
                raise RuntimeError(
                    f"sweep failed at l = {l!r} m, engine = {engine!r}: {exc}"
                ) from exc
            records.append(SweepRecord(
                l=l,
                engine=engine,
                delta_x=result.delta_x,
                delta_x_heuristic=heuristic,
                achieved_mass=result.achieved_mass,
                mixture_weight=weight,
                ci_low=None if ci is None else ci[0],
                ci_high=None if ci is None else ci[1],
                fresnel_number_slit_leg=nf_slit,
                fresnel_number_screen_leg=nf_screen,
            ))

    records.sort(key=lambda rec: (rec.l, rec.engine))
    result = SweepResult(config=config, records=records)

    pair = _transition_pair(config.engines)
    if pair is not None:
        result.transition_pair = pair
        result.transition_l = detect_transition(
            result, config.transition_fraction, reference=pair[0], candidate=pair[1]
        )
    return result


def _transition_pair(engines) -> tuple | None:
    """Auto-select (reference QM engine, comparison engine) or None."""
    reference = next((e for e in _QM_ENGINES if e in engines), None)
    candidate = next((e for e in _SUBQM_ENGINES if e in engines), None)
    if reference is None:
        return None
    if candidate is None:
        # Two QM engines can still be ratio-compared against each other.
        others = [e for e in _QM_ENGINES if e in engines and e != reference]
        if not others:
            return None
        candidate = others[0]
    return reference, candidate


def detect_transition(
    result: SweepResult,
    fraction: float = 0.95,
    reference: str | None = None,
    candidate: str | None = None,
) -> float | None:
    """Smallest l where delta_x(candidate) >= fraction * delta_x(reference).

    Interpolates linearly in log l between the bracketing sweep points;
    returns None when the threshold is never reached.
    """
    engines = result.config.engines
    if reference is None or candidate is None:
        pair = _transition_pair(engines)
        if pair is None:
            raise ValueError(
                "transition detection needs a QM reference engine and a comparison "
                f"engine; sweep ran {engines}"
            )
        reference = reference or pair[0]
        candidate = candidate or pair[1]
    for engine in (reference, candidate):
        if engine not in engines:
            raise ValueError(f"engine {engine!r} is not part of this sweep ({engines})")

    ls = list(result.config.l_values)
    ratios = [
        result.record(l, candidate).delta_x / result.record(l, reference).delta_x for l in ls
    ]
    if ratios[0] >= fraction:
        return ls[0]
    for i in range(1, len(ls)):
        if ratios[i] >= fraction:
            t = (fraction - ratios[i - 1]) / (ratios[i] - ratios[i - 1])
            log_l = np.log(ls[i - 1]) + t * (np.log(ls[i]) - np.log(ls[i - 1]))
            return float(np.exp(log_l))
    return None


def _csv_cell(value) -> str:
    return "" if value is None else repr(float(value))


def emit_csv(result: SweepResult, path) -> None:
    """Fixed-column CSV, one row per (l, engine) record, byte-stable."""
    lines = [CSV_HEADER]
    for rec in result.records:
        lines.append(",".join([
            _csv_cell(rec.l),
            rec.engine,
            _csv_cell(rec.delta_x),
            _csv_cell(rec.delta_x_heuristic),
            _csv_cell(rec.mixture_weight),
            _csv_cell(rec.achieved_mass),
            _csv_cell(rec.ci_low),
            _csv_cell(rec.ci_high),
        ]))
    _write_text(path, "\n".join(lines) + "\n")


def emit_json(result: SweepResult, path) -> None:
    """Config echo plus records plus the transition verdict, byte-stable."""
    payload = {
        "config": result.config.to_dict(),
        "records": [rec.to_dict() for rec in result.records],
        "transition": {
            "l_m": result.transition_l,
            "fraction": result.config.transition_fraction,
            "reference": None if result.transition_pair is None else result.transition_pair[0],
            "candidate": None if result.transition_pair is None else result.transition_pair[1],
        },
    }
    _write_text(path, json.dumps(payload, indent=2, sort_keys=True) + "\n")


def write_density_csv(density: ScreenDensity, path) -> None:
    lines = ["x_m,p_per_m"]
    x = density.x
    for i in range(density.n):
        lines.append(f"{x[i]!r},{density.values[i]!r}")
    _write_text(path, "\n".join(lines) + "\n")


def _write_text(path, text: str) -> None:
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(text)
    except OSError as exc:
        raise OSError(f"cannot write {path!r}: {exc}") from exc
