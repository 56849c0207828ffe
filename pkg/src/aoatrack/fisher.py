"""Fisher information and Cramer-Rao lower bound for the thermal-noise channel.

The per-detector mean derivative alpha_m + beta_m enters the Fisher
information as sum_m (alpha_m + beta_m)^2 / sigma_m^2, which splits into a
location term (beta^2), an energy term (alpha^2), and a cross term (2 alpha
beta). Inverting the total (or the location term alone) gives the bounds the
sweep routines tabulate.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, List, Sequence, Tuple

from .beam import BeamParams
from .focal_plane import (
    NoiseModel,
    ReceiverGeometry,
    detector_mean_deriv,
    noise_variance,
)

__all__ = [
    "FisherBreakdown",
    "SweepResult",
    "fisher_information",
    "crlb",
    "crlb_location_only",
    "sweep_theta",
    "SWEEP_COLUMNS",
]

SWEEP_COLUMNS = (
    "theta_rad",
    "fisher_location",
    "fisher_energy",
    "fisher_cross",
    "fisher_total",
    "crlb_joint",
    "crlb_location_only",
)


@dataclass(frozen=True)
class FisherBreakdown:
    """Split of the Fisher information into location/energy/cross contributions."""

    location: float
    energy: float
    cross: float
    total: float


@dataclass
class SweepResult:
    """Rectangular table of sweep output rows plus free-form metadata."""

    columns: Tuple[str, ...]
    rows: List[Tuple[float, ...]]
    metadata: Dict[str, object] = field(default_factory=dict)


def fisher_information(p: BeamParams, g: ReceiverGeometry, n: NoiseModel,
                       theta: float) -> FisherBreakdown:
    """Fisher information of theta carried by the M detector outputs."""
    location = energy = cross = total = 0.0
    for m in range(g.detector_count):
        d = detector_mean_deriv(p, g, theta, m)
        inv_var = 1.0 / noise_variance(g, n, m)
        location += d.beta * d.beta * inv_var
        energy += d.alpha * d.alpha * inv_var
        cross += 2.0 * d.alpha * d.beta * inv_var
        total += d.deriv * d.deriv * inv_var
    return FisherBreakdown(location=location, energy=energy, cross=cross, total=total)


def _invert(info: float) -> float:
    return 1.0 / info if info > 0.0 else math.inf


def crlb(p: BeamParams, g: ReceiverGeometry, n: NoiseModel, theta: float) -> float:
    """Cramer-Rao lower bound [rad^2] using both spot location and energy."""
    return _invert(fisher_information(p, g, n, theta).total)


def crlb_location_only(p: BeamParams, g: ReceiverGeometry, n: NoiseModel,
                       theta: float) -> float:
    """Cramer-Rao lower bound [rad^2] using spot location information alone."""
    return _invert(fisher_information(p, g, n, theta).location)


def sweep_theta(p: BeamParams, g: ReceiverGeometry, n: NoiseModel,
                grid: Sequence[float]) -> SweepResult:
    """Tabulate Fisher breakdown and both bounds over a theta grid."""
    rows = []
    for theta in grid:
        fb = fisher_information(p, g, n, theta)
        rows.append((float(theta), fb.location, fb.energy, fb.cross, fb.total,
                     _invert(fb.total), _invert(fb.location)))
    return SweepResult(columns=SWEEP_COLUMNS, rows=rows)
