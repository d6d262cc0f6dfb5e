"""Scenario configuration: JSON loading, schema validation, unit resolution.

On-disk units mirror the usual experimental quotes: frequencies in GHz
(ordinary, i.e. omega/2pi), times in ns, lengths in um, velocities in m/s,
temperature in mK.  ``resolve`` converts everything to the internal rad/ns
system and runs the device pipeline once, so a resolved scenario is fully
self-describing.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from importlib import resources

import jsonschema

from . import device as dev
from .dynamics import RECTANGULAR, NoiseParams
from .errors import ConfigError, ValidityError
from .hilbert import HilbertSpec

SCHEMA_VERSION = 1

EXPERIMENTS = ("fig2a", "fig2b", "fig3a", "fig3b", "robustness", "altParams", "custom")
SWEEP_EXPERIMENTS = ("fig3a", "fig3b")


def load_schema() -> dict:
    ref = resources.files("topoflux") / "schema" / "scenario.schema.json"
    with ref.open() as f:
        return json.load(f)


_SCHEMA = None


def _schema() -> dict:
    global _SCHEMA
    if _SCHEMA is None:
        _SCHEMA = load_schema()
    return _SCHEMA


@dataclass(frozen=True)
class SweepSpec:
    """Decoherence-rate sweep: eta1 = 1/(2 tf1) or eta2 = 1/tf2, in 1/ns."""

    axis: str
    lo: float
    hi: float
    points: int
    ratios: tuple[float, ...]  # g'/g family, one output column each

    def __post_init__(self):
        if self.axis not in ("eta1", "eta2"):
            raise ValueError(f"axis must be eta1 or eta2, got {self.axis!r}")
        if not self.lo < self.hi:
            raise ValueError(f"need lo < hi, got [{self.lo}, {self.hi}]")
        if self.points < 2:
            raise ValueError(f"need at least 2 points, got {self.points}")

    def values(self):
        step = (self.hi - self.lo) / (self.points - 1)
        return [self.lo + i * step for i in range(self.points)]


@dataclass(frozen=True)
class RobustnessSpec:
    error_fraction: float
    samples: int


@dataclass
class Scenario:
    """Fully resolved run description in internal units."""

    experiment: str
    device: dev.DeviceParams
    spec: HilbertSpec
    pulse_area: float  # rad
    pulse_shape: str
    ramp_time: float
    noise: NoiseParams
    dt: float | None
    sample_period: float | None
    phi_c: float
    g: float
    g_prime: float
    phase_freq: float
    derived: dev.DerivedCouplings | None
    validity: dev.ValidityReport | None
    sweep: SweepSpec | None
    robustness: RobustnessSpec | None
    raw: dict

    def parameter_echo(self) -> dict:
        """Resolved parameters (internal units) for self-describing summaries."""
        d = self.device
        echo = {
            "units": {"angular_frequency": "rad/ns", "time": "ns", "length": "um"},
            "experiment": self.experiment,
            "device": {
                "alpha": d.alpha,
                "beta": d.beta,
                "ej": d.ej,
                "ej_over_ec": d.ej_over_ec,
                "delta0": d.delta0,
                "v_fermi": d.v_fermi,
                "length": d.length,
                "tf1": d.tf1,
                "tf2": d.tf2,
                "temperature": d.temperature,
            },
            "hilbert": {"n_fock": self.spec.n_fock},
            "pulse": {
                "area": self.pulse_area,
                "shape": self.pulse_shape,
                "ramp_time": self.ramp_time,
            },
            "noise": {
                "enabled": self.noise.enabled,
                "tf1": self.noise.tf1,
                "tf2": self.noise.tf2,
            },
            "operating_point": {
                "phi_c": self.phi_c,
                "g": self.g,
                "g_prime": self.g_prime,
                "phase_freq": self.phase_freq,
            },
        }
        if self.derived is not None:
            echo["derived"] = {
                "theta": self.derived.theta,
                "zeta": self.derived.zeta,
                "omega_f": self.derived.omega_f,
                "lambda_phi": self.derived.lambda_phi,
                "energy": self.derived.energy,
                "de_dphi": self.derived.de_dphi,
                "g": self.derived.g,
                "g_prime": self.derived.g_prime,
            }
        if self.validity is not None:
            echo["validity"] = validity_to_dict(self.validity)
        return echo


def validity_to_dict(report: dev.ValidityReport) -> dict:
    return {
        "ratio_g_over_g_prime": report.ratio_g_over_g_prime,
        "energy_over_g": report.energy_over_g,
        "tunneling_rate": report.tunneling_rate,
        "tunneling_error_prob": report.tunneling_error_prob,
        "thermal_occupation": report.thermal_occupation,
        "all_passed": report.all_passed,
        "checks": [
            {"name": c.name, "value": c.value, "threshold": c.threshold, "passed": c.passed}
            for c in report.checks
        ],
    }


def validate_raw(raw: dict):
    """Schema-validate a raw config dict; unknown keys are rejected."""
    validator = jsonschema.Draft202012Validator(_schema())
    errors = sorted(validator.iter_errors(raw), key=lambda e: list(e.absolute_path))
    if errors:
        e = errors[0]
        pointer = "/" + "/".join(str(p) for p in e.absolute_path)
        raise ConfigError(e.message, pointer=pointer)
    _cross_checks(raw)


def _cross_checks(raw: dict):
    exp = raw["experiment"]
    if exp in SWEEP_EXPERIMENTS and "sweep" not in raw:
        raise ConfigError(f"experiment {exp!r} needs a sweep block", pointer="/sweep")
    if exp == "robustness" and "robustness" not in raw:
        raise ConfigError("experiment 'robustness' needs a robustness block", pointer="/robustness")
    pulse = raw["pulse"]
    if pulse.get("shape") == "sinSquaredRamp" and "rampTime_ns" not in pulse:
        raise ConfigError("sinSquaredRamp needs rampTime_ns", pointer="/pulse/rampTime_ns")
    if pulse.get("areaOverPi") == 0:
        raise ConfigError("pulse area must be nonzero", pointer="/pulse/areaOverPi")


def _device_from_raw(d: dict) -> dev.DeviceParams:
    return dev.DeviceParams(
        alpha=d["alpha"],
        beta=d["beta"],
        ej=dev.ghz_to_angular(d["EJ_GHz"]),
        ej_over_ec=d["EJ_over_EC"],
        delta0=dev.ghz_to_angular(d["delta0_GHz"]),
        v_fermi=dev.m_per_s_to_um_per_ns(d["vF_m_per_s"]),
        length=d["L_um"],
        tf1=d["Tf1_ns"],
        tf2=d["Tf2_ns"],
        temperature=dev.mk_to_angular(d["temperature_mK"]),
    )


def resolve(raw: dict) -> Scenario:
    """Validate and resolve a raw config into internal units.

    The device pipeline runs here; explicit overrides of g, g' and E make a
    pipeline validity failure non-fatal, otherwise it propagates.
    """
    validate_raw(raw)
    params = _device_from_raw(raw["device"])
    overrides = raw.get("overrides", {})

    _, _, omega_f = dev.derive_statics(params)
    omega_res = (
        dev.ghz_to_angular(overrides["resonanceTarget_GHz"])
        if "resonanceTarget_GHz" in overrides
        else omega_f
    )

    full_override = all(k in overrides for k in ("g_GHz", "gPrime_GHz", "E_GHz"))
    derived = None
    validity = None
    phi_c = raw["device"].get("phiC_rad", math.nan)
    try:
        if math.isnan(phi_c):
            phi_c = dev.solve_resonant_phase(params, omega_res)
        derived = dev.derive_couplings(params, phi_c)
        validity = dev.validity_report(params, phi_c)
    except ValidityError:
        if not full_override:
            raise

    g = dev.ghz_to_angular(overrides["g_GHz"]) if "g_GHz" in overrides else derived.g
    g_prime = (
        dev.ghz_to_angular(overrides["gPrime_GHz"])
        if "gPrime_GHz" in overrides
        else derived.g_prime
    )
    phase_freq = (
        dev.ghz_to_angular(overrides["E_GHz"]) if "E_GHz" in overrides else derived.energy
    )

    noise_raw = raw.get("noise", {})
    noise = NoiseParams(
        tf1=noise_raw.get("Tf1_ns", params.tf1),
        tf2=noise_raw.get("Tf2_ns", params.tf2),
        enabled=noise_raw.get("enabled", True),
    )

    integ = raw.get("integration", {})
    pulse = raw["pulse"]
    sweep = None
    if "sweep" in raw:
        s = raw["sweep"]
        sweep = SweepSpec(
            axis=s["axis"],
            lo=s["lo"],
            hi=s["hi"],
            points=s["points"],
            ratios=tuple(s["gPrimeOverG"]),
        )
    robustness = None
    if "robustness" in raw:
        r = raw["robustness"]
        robustness = RobustnessSpec(error_fraction=r["errorFraction"], samples=r["samples"])

    return Scenario(
        experiment=raw["experiment"],
        device=params,
        spec=HilbertSpec(raw.get("hilbert", {}).get("fockLevels", 2)),
        pulse_area=pulse["areaOverPi"] * math.pi,
        pulse_shape=pulse.get("shape", RECTANGULAR),
        ramp_time=pulse.get("rampTime_ns", 0.0),
        noise=noise,
        dt=integ.get("dt_ns"),
        sample_period=integ.get("samplePeriod_ns"),
        phi_c=phi_c,
        g=g,
        g_prime=g_prime,
        phase_freq=phase_freq,
        derived=derived,
        validity=validity,
        sweep=sweep,
        robustness=robustness,
        raw=raw,
    )


def load_config(path) -> Scenario:
    """Read a JSON scenario file and resolve it."""
    try:
        with open(path) as f:
            raw = json.load(f)
    except OSError as e:
        raise ConfigError(f"cannot read config: {e}")
    except json.JSONDecodeError as e:
        raise ConfigError(f"config is not valid JSON: {e}")
    if not isinstance(raw, dict):
        raise ConfigError("config root must be a JSON object")
    return resolve(raw)
