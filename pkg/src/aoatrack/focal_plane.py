"""One-dimensional focal-plane detector array and per-detector signal model.

The focused spot is a Gaussian of radius ``rho`` centred at F*sin(theta) on an
array of M equal detector strips spanning [-D/2, D/2] with D = sqrt(array
area). Each strip's mean output is the spot power times the Gaussian mass it
intercepts; the theta-derivative of that mean splits into an energy part
(``alpha``, from the power variation) and a location part (``beta``, from the
spot motion).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .beam import BeamParams, received_power, received_power_deriv
from .numerics import DomainError, Interval, gauss_mass

__all__ = [
    "NoiseModel",
    "ReceiverGeometry",
    "DetectorSignal",
    "NOISE_MODES",
    "spot_center",
    "spot_center_deriv",
    "detector_bounds",
    "detector_mean",
    "detector_means",
    "detector_mean_deriv",
    "noise_variance",
]

NOISE_MODES = ("constant", "area_proportional")

_SQRT_2PI = math.sqrt(2.0 * math.pi)


@dataclass(frozen=True)
class NoiseModel:
    """Receiver noise description.

    sigma_n : thermal noise standard deviation per detector at reference
    mode : "constant" (sigma_n^2 per detector regardless of M) or
        "area_proportional" (variance scales with detector area so the total
        array noise power is independent of M)
    sigma_p : pointing-jitter standard deviation [rad]; 0 disables pointing noise
    """

    sigma_n: float
    mode: str = "constant"
    sigma_p: float = 0.0

    def __post_init__(self) -> None:
        if not (self.sigma_n > 0 and math.isfinite(self.sigma_n)):
            raise DomainError(f"NoiseModel.sigma_n must be > 0, got {self.sigma_n!r}")
        if self.mode not in NOISE_MODES:
            raise DomainError(f"NoiseModel.mode must be one of {NOISE_MODES}, got {self.mode!r}")
        if not (self.sigma_p >= 0 and math.isfinite(self.sigma_p)):
            raise DomainError(f"NoiseModel.sigma_p must be >= 0, got {self.sigma_p!r}")


@dataclass(frozen=True)
class ReceiverGeometry:
    """Lens and detector-array geometry.

    focal_length : lens focal length F [m]
    array_area : total array area [m^2]; the 1-D extent is sqrt(array_area)
    detector_count : number of equal strips M
    spot_radius : focused-spot Gaussian radius rho [m]
    """

    focal_length: float
    array_area: float
    detector_count: int
    spot_radius: float

    def __post_init__(self) -> None:
        for name in ("focal_length", "array_area", "spot_radius"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise DomainError(f"ReceiverGeometry.{name} must be finite and > 0, got {value!r}")
        if not (isinstance(self.detector_count, int) and self.detector_count >= 1):
            raise DomainError(
                f"ReceiverGeometry.detector_count must be an integer >= 1, got {self.detector_count!r}")

    @property
    def extent(self) -> float:
        """Total array width D [m]."""
        return math.sqrt(self.array_area)

    @property
    def half_extent(self) -> float:
        return 0.5 * self.extent


@dataclass(frozen=True)
class DetectorSignal:
    """Mean output of one detector and the split of its theta-derivative."""

    index: int
    mean: float
    alpha: float  # energy part of d(mean)/d(theta)
    beta: float   # location part of d(mean)/d(theta)

    @property
    def deriv(self) -> float:
        return self.alpha + self.beta


def spot_center(g: ReceiverGeometry, theta: float) -> float:
    """Spot-center location F*sin(theta) on the array [m]."""
    return g.focal_length * math.sin(theta)


def spot_center_deriv(g: ReceiverGeometry, theta: float) -> float:
    """d/d(theta) of the spot-center location: F*cos(theta)."""
    return g.focal_length * math.cos(theta)


def detector_bounds(g: ReceiverGeometry, m: int) -> Interval:
    """Interval covered by detector ``m``; the M strips partition [-D/2, D/2]."""
    if not (0 <= m < g.detector_count):
        raise DomainError(f"detector index {m} outside [0, {g.detector_count})")
    step = g.extent / g.detector_count
    lo = -g.half_extent + m * step
    return Interval(lo, lo + step)


def detector_mean(p: BeamParams, g: ReceiverGeometry, theta: float, m: int) -> float:
    """Mean signal of detector ``m``: spot power times intercepted Gaussian mass."""
    power = received_power(p, theta)
    return power * gauss_mass(detector_bounds(g, m), spot_center(g, theta), g.spot_radius)


def detector_means(p: BeamParams, g: ReceiverGeometry, theta: float) -> np.ndarray:
    """Vector of all M detector means at angle ``theta``."""
    return np.array([detector_mean(p, g, theta, m) for m in range(g.detector_count)])


def detector_mean_deriv(p: BeamParams, g: ReceiverGeometry, theta: float,
                        m: int) -> DetectorSignal:
    """Mean of detector ``m`` plus the energy/location split of its derivative.

    alpha = power'(theta) * mass_m; beta integrates the spot-motion term in
    closed form via the exponential antiderivative of (x - x0) * kernel.
    """
    bounds = detector_bounds(g, m)
    x0 = spot_center(g, theta)
    rho = g.spot_radius
    power = received_power(p, theta)
    mass = gauss_mass(bounds, x0, rho)

    alpha = received_power_deriv(p, theta) * mass

    kernel_lo = math.exp(-0.5 * ((bounds.lo - x0) / rho) ** 2)
    kernel_hi = math.exp(-0.5 * ((bounds.hi - x0) / rho) ** 2)
    beta = power * spot_center_deriv(g, theta) * (kernel_lo - kernel_hi) / (_SQRT_2PI * rho)

    return DetectorSignal(index=m, mean=power * mass, alpha=alpha, beta=beta)


def noise_variance(g: ReceiverGeometry, n: NoiseModel, m: int) -> float:
    """Thermal noise variance of detector ``m`` under the model's scaling mode."""
    if not (0 <= m < g.detector_count):
        raise DomainError(f"detector index {m} outside [0, {g.detector_count})")
    var = n.sigma_n * n.sigma_n
    if n.mode == "constant":
        return var
    if n.mode == "area_proportional":
        return var * detector_bounds(g, m).width / g.extent
    raise DomainError(f"unknown noise mode {n.mode!r}")
