"""Scenario configuration: defaults, YAML parsing, validation and figure profiles.

A scenario is a nested mapping with sections ``beam``, ``receiver``, ``noise``,
``sweep`` and ``mc``. Beam geometry accepts either ``waist`` or ``beamwidth``
(exactly one). Optional top-level group lists (``beamwidth_list``,
``detector_count_list``, ``sigma_p_list``) drive multi-curve sweeps.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Dict, List, Optional

import yaml

from .beam import BeamParams
from .focal_plane import NOISE_MODES, NoiseModel, ReceiverGeometry

__all__ = [
    "ConfigError",
    "ScenarioConfig",
    "BeamSection",
    "ReceiverSection",
    "NoiseSection",
    "SweepSection",
    "McSection",
    "PROFILES",
    "load_config",
    "dump_config",
]


class ConfigError(ValueError):
    """Invalid scenario configuration; ``errors`` lists every offending field."""

    def __init__(self, errors: List[str]):
        self.errors = list(errors)
        super().__init__("invalid configuration:\n" + "\n".join(f"  - {e}" for e in errors))


@dataclass
class BeamSection:
    power_i0: float = 0.01          # W
    wavelength: float = 1.55e-6     # m
    beamwidth: Optional[float] = 1e-3   # rad; exclusive with waist
    waist: Optional[float] = None   # m
    link_distance: float = 10.0     # m
    aperture_radius: float = 0.05   # m


@dataclass
class ReceiverSection:
    focal_length: float = 1e-3      # m
    array_area: float = 4e-6        # m^2
    detector_count: int = 4
    spot_radius: float = 2e-4       # m


@dataclass
class NoiseSection:
    sigma_n: float = 1e-6
    mode: str = "constant"
    sigma_p: float = 0.0            # rad


@dataclass
class SweepSection:
    start: float = 0.0
    stop: float = 0.025             # 25 x the default beamwidth
    count: int = 400


@dataclass
class McSection:
    trials: int = 2000
    seed: int = 42


@dataclass
class ScenarioConfig:
    beam: BeamSection = field(default_factory=BeamSection)
    receiver: ReceiverSection = field(default_factory=ReceiverSection)
    noise: NoiseSection = field(default_factory=NoiseSection)
    sweep: SweepSection = field(default_factory=SweepSection)
    mc: McSection = field(default_factory=McSection)
    beamwidth_list: Optional[List[float]] = None
    detector_count_list: Optional[List[int]] = None
    sigma_p_list: Optional[List[float]] = None

    def validate(self) -> None:
        """Raise :class:`ConfigError` listing every invalid field at once."""
        errors: List[str] = []

        def positive(section: str, name: str, value) -> None:
            if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
                errors.append(f"{section}.{name} must be finite and > 0, got {value!r}")

        b = self.beam
        positive("beam", "power_i0", b.power_i0)
        positive("beam", "wavelength", b.wavelength)
        positive("beam", "link_distance", b.link_distance)
        positive("beam", "aperture_radius", b.aperture_radius)
        if (b.beamwidth is None) == (b.waist is None):
            errors.append("beam: exactly one of beamwidth or waist must be set")
        elif b.beamwidth is not None:
            positive("beam", "beamwidth", b.beamwidth)
        else:
            positive("beam", "waist", b.waist)

        r = self.receiver
        positive("receiver", "focal_length", r.focal_length)
        positive("receiver", "array_area", r.array_area)
        positive("receiver", "spot_radius", r.spot_radius)
        if not (isinstance(r.detector_count, int) and r.detector_count >= 1):
            errors.append(f"receiver.detector_count must be an integer >= 1, got {r.detector_count!r}")

        n = self.noise
        positive("noise", "sigma_n", n.sigma_n)
        if n.mode not in NOISE_MODES:
            errors.append(f"noise.mode must be one of {NOISE_MODES}, got {n.mode!r}")
        if not (isinstance(n.sigma_p, (int, float)) and math.isfinite(n.sigma_p) and n.sigma_p >= 0):
            errors.append(f"noise.sigma_p must be >= 0, got {n.sigma_p!r}")

        s = self.sweep
        half_pi = 0.5 * math.pi
        for name, value in (("start", s.start), ("stop", s.stop)):
            if not (isinstance(value, (int, float)) and -half_pi < value < half_pi):
                errors.append(f"sweep.{name} must lie in (-pi/2, pi/2), got {value!r}")
        if s.start > s.stop:
            errors.append(f"sweep.start must be <= sweep.stop, got {s.start!r} > {s.stop!r}")
        if not (isinstance(s.count, int) and s.count >= 1):
            errors.append(f"sweep.count must be an integer >= 1, got {s.count!r}")

        if not (isinstance(self.mc.trials, int) and self.mc.trials >= 1):
            errors.append(f"mc.trials must be an integer >= 1, got {self.mc.trials!r}")
        if not isinstance(self.mc.seed, int):
            errors.append(f"mc.seed must be an integer, got {self.mc.seed!r}")

        for name, values in (("beamwidth_list", self.beamwidth_list),
                             ("sigma_p_list", self.sigma_p_list)):
            if values is not None:
                if not values or any(not (isinstance(v, (int, float)) and math.isfinite(v))
                                     for v in values):
                    errors.append(f"{name} must be a non-empty list of finite numbers")
        if self.detector_count_list is not None:
            if not self.detector_count_list or any(
                    not (isinstance(v, int) and v >= 1) for v in self.detector_count_list):
                errors.append("detector_count_list must be a non-empty list of integers >= 1")

        if errors:
            raise ConfigError(errors)

    # -- model object construction -------------------------------------------------

    def beam_params(self, beamwidth: Optional[float] = None) -> BeamParams:
        """Build :class:`BeamParams`, optionally overriding the beamwidth."""
        b = self.beam
        if beamwidth is not None:
            return BeamParams.from_beamwidth(b.power_i0, b.wavelength, beamwidth,
                                             b.link_distance, b.aperture_radius)
        if b.beamwidth is not None:
            return BeamParams.from_beamwidth(b.power_i0, b.wavelength, b.beamwidth,
                                             b.link_distance, b.aperture_radius)
        return BeamParams(b.power_i0, b.wavelength, b.waist, b.link_distance,
                          b.aperture_radius)

    def geometry(self, detector_count: Optional[int] = None) -> ReceiverGeometry:
        r = self.receiver
        return ReceiverGeometry(r.focal_length, r.array_area,
                                detector_count if detector_count is not None else r.detector_count,
                                r.spot_radius)

    def noise_model(self, sigma_p: Optional[float] = None) -> NoiseModel:
        n = self.noise
        return NoiseModel(n.sigma_n, n.mode,
                          sigma_p if sigma_p is not None else n.sigma_p)

    def theta_grid(self) -> List[float]:
        s = self.sweep
        if s.count == 1:
            return [s.start]
        step = (s.stop - s.start) / (s.count - 1)
        return [s.start + i * step for i in range(s.count)]

    # -- (de)serialization ----------------------------------------------------------

    def to_dict(self) -> Dict:
        d = asdict(self)
        for key in ("beamwidth_list", "detector_count_list", "sigma_p_list"):
            if d[key] is None:
                del d[key]
        if d["beam"]["waist"] is None:
            del d["beam"]["waist"]
        if d["beam"]["beamwidth"] is None:
            del d["beam"]["beamwidth"]
        return d

    @classmethod
    def from_dict(cls, data: Dict) -> "ScenarioConfig":
        if not isinstance(data, dict):
            raise ConfigError([f"configuration root must be a mapping, got {type(data).__name__}"])
        errors: List[str] = []
        sections = {"beam": BeamSection, "receiver": ReceiverSection, "noise": NoiseSection,
                    "sweep": SweepSection, "mc": McSection}
        known = set(sections) | {"beamwidth_list", "detector_count_list", "sigma_p_list"}
        for key in data:
            if key not in known:
                errors.append(f"unknown section or key {key!r}")
        kwargs = {}
        for name, section_cls in sections.items():
            raw = data.get(name, {})
            if not isinstance(raw, dict):
                errors.append(f"section {name!r} must be a mapping")
                continue
            fields = {f for f in section_cls.__dataclass_fields__}
            unknown = set(raw) - fields
            for key in sorted(unknown):
                errors.append(f"unknown key {name}.{key}")
            section = section_cls(**{k: v for k, v in raw.items() if k in fields})
            if name == "beam" and "beamwidth" in raw and "waist" not in raw:
                section.waist = None
            if name == "beam" and "waist" in raw and "beamwidth" not in raw:
                section.beamwidth = None
            kwargs[name] = section
        if errors:
            raise ConfigError(errors)
        return cls(beamwidth_list=data.get("beamwidth_list"),
                   detector_count_list=data.get("detector_count_list"),
                   sigma_p_list=data.get("sigma_p_list"),
                   **kwargs)


def load_config(path: str) -> ScenarioConfig:
    """Read a YAML scenario file, apply defaults and validate."""
    with open(path, "r", encoding="utf-8") as fh:
        data = yaml.safe_load(fh) or {}
    cfg = ScenarioConfig.from_dict(data)
    cfg.validate()
    return cfg


def dump_config(cfg: ScenarioConfig, path: str) -> None:
    """Write a scenario back to YAML (round-trips through :func:`load_config`)."""
    with open(path, "w", encoding="utf-8") as fh:
        yaml.safe_dump(cfg.to_dict(), fh, sort_keys=False)


def _profile(**overrides) -> Dict:
    return overrides


# Named presets reproducing the qualitative content of the reference figures.
# Values outside the headline parameter table (notably short link distances)
# are chosen so the documented effects appear at the plotted angles.
PROFILES: Dict[str, Dict] = {
    # Energy-only Fisher information vs theta for several beamwidths.
    "fig5": _profile(
        beam={"power_i0": 0.1, "link_distance": 10.0},
        sweep={"start": 0.0, "stop": 1.2, "count": 400},
        beamwidth_list=[1e-3, 5e-3, 10e-3],
    ),
    # Joint vs location-only CRLB for the default narrow beam.
    "fig6": _profile(
        sweep={"start": 0.0, "stop": 0.025, "count": 400},
    ),
    # CRLB crossover between a narrow and a wide beam at equal power.
    "fig7": _profile(
        beam={"power_i0": 0.1, "link_distance": 10.0},
        sweep={"start": 0.0, "stop": 0.45, "count": 400},
        beamwidth_list=[1e-3, 10e-3],
    ),
    # CRLB vs detector count under area-proportional (background) noise.
    "fig8": _profile(
        beam={"power_i0": 0.1, "link_distance": 100.0, "beamwidth": 10e-3},
        noise={"mode": "area_proportional"},
        sweep={"start": 0.0, "stop": 1.2, "count": 200},
        detector_count_list=[4, 16, 64],
    ),
    # Wave-like CRLB for coarse arrays as the spot traverses detector cells.
    "fig9": _profile(
        beam={"power_i0": 0.1, "link_distance": 100.0, "beamwidth": 10e-3},
        noise={"mode": "area_proportional"},
        sweep={"start": 0.0, "stop": 1.2, "count": 400},
        detector_count_list=[4, 16],
    ),
    # CRLB under pointing jitter for several sigma_p fractions of the beamwidth.
    "fig10": _profile(
        beam={"power_i0": 0.1, "link_distance": 100.0, "beamwidth": 0.2},
        sweep={"start": 0.0, "stop": 0.45, "count": 200},
        sigma_p_list=[0.0, 4e-4, 2e-3, 1e-2],
    ),
}


def apply_profile(cfg_data: Dict, profile: str) -> Dict:
    """Merge a named profile under explicit config data (config wins)."""
    if profile not in PROFILES:
        raise ConfigError([f"unknown profile {profile!r}; available: {sorted(PROFILES)}"])
    merged: Dict = {}
    for source in (PROFILES[profile], cfg_data):
        for key, value in source.items():
            if isinstance(value, dict):
                merged.setdefault(key, {})
                merged[key] = {**merged[key], **value}
            else:
                merged[key] = value
    return merged
