"""Gaussian-beam propagation and received power as a function of angle-of-arrival.

The central closed form: with half-angle beamwidth ``phi`` and link distance
``L``, the far-field intensity seen at angle-of-arrival ``theta`` is

    peak * exp(-W(I0^2 tan^2(theta) / (2 pi L^4 phi^4)) / 2)

where ``W`` is the principal Lambert W branch and ``peak`` is the on-axis
intensity. Received power multiplies this by the telescope aperture area.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from .numerics import DomainError, lambert_w0

__all__ = [
    "BeamParams",
    "BeamModelWarning",
    "beam_radius",
    "beamwidth",
    "intensity_profile",
    "intensity_vs_aoa",
    "received_power",
    "received_power_deriv",
    "received_power_deriv2",
]

_HALF_PI = 0.5 * math.pi

# Aperture-to-footprint power ratio above which the point-sampling model of
# the received power stops being a good approximation.
_APERTURE_FOOTPRINT_RATIO = 0.1


class BeamModelWarning(UserWarning):
    """A modelling assumption (far field, small aperture) is being stretched."""


@dataclass(frozen=True)
class BeamParams:
    """Transmit/propagation parameters of a Gaussian beam link.

    power_i0 : total beam power [W]
    wavelength : [m]
    waist : beam waist radius at the transmitter [m]
    link_distance : transmitter-receiver distance [m]
    aperture_radius : receive telescope radius [m]
    """

    power_i0: float
    wavelength: float
    waist: float
    link_distance: float
    aperture_radius: float

    def __post_init__(self) -> None:
        for name in ("power_i0", "wavelength", "waist", "link_distance", "aperture_radius"):
            value = getattr(self, name)
            if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
                raise DomainError(f"BeamParams.{name} must be finite and > 0, got {value!r}")
        ff = self.wavelength * self.link_distance / (math.pi * self.waist ** 2)
        if ff < 10.0:
            warnings.warn(
                f"far-field ratio lambda*L/(pi*w0^2) = {ff:.3g} < 10; the "
                "linear beam-spread approximation is inaccurate here",
                BeamModelWarning,
                stacklevel=2,
            )

    @classmethod
    def from_beamwidth(cls, power_i0: float, wavelength: float, beamwidth: float,
                       link_distance: float, aperture_radius: float) -> "BeamParams":
        """Construct from the half-angle beamwidth instead of the waist."""
        if not (beamwidth > 0 and math.isfinite(beamwidth)):
            raise DomainError(f"beamwidth must be finite and > 0, got {beamwidth!r}")
        waist = wavelength / (math.pi * beamwidth)
        return cls(power_i0, wavelength, waist, link_distance, aperture_radius)

    @property
    def footprint_radius(self) -> float:
        """Far-field beam radius L*phi at the receiver [m]."""
        return self.link_distance * beamwidth(self)


def beam_radius(p: BeamParams, distance: float) -> float:
    """Exact Gaussian beam radius w0*sqrt(1 + (lambda*z/(pi*w0^2))^2) at ``distance``."""
    if not (distance >= 0 and math.isfinite(distance)):
        raise DomainError(f"beam_radius requires distance >= 0, got {distance!r}")
    ratio = p.wavelength * distance / (math.pi * p.waist ** 2)
    return p.waist * math.sqrt(1.0 + ratio * ratio)


def beamwidth(p: BeamParams) -> float:
    """Half-angle beamwidth lambda / (pi * w0) [rad]."""
    return p.wavelength / (math.pi * p.waist)


def _peak_intensity(p: BeamParams) -> float:
    lphi = p.footprint_radius
    return p.power_i0 / math.sqrt(2.0 * math.pi * lphi * lphi)


def _w_argument(p: BeamParams, theta: float) -> float:
    """Argument of the Lambert W in the intensity/angle closed form."""
    lphi = p.footprint_radius
    t = math.tan(theta)
    return p.power_i0 ** 2 * t * t / (2.0 * math.pi * lphi ** 4)


def _w_coefficient(p: BeamParams) -> float:
    """Coefficient c such that the W argument is c * tan^2(theta)."""
    lphi = p.footprint_radius
    return p.power_i0 ** 2 / (2.0 * math.pi * lphi ** 4)


def intensity_profile(p: BeamParams, x: float) -> float:
    """Far-field intensity [W/m^2] at transverse offset ``x`` from the beam axis."""
    lphi = p.footprint_radius
    return _peak_intensity(p) * math.exp(-0.5 * (x / lphi) ** 2)


def intensity_vs_aoa(p: BeamParams, theta: float) -> float:
    """Far-field intensity [W/m^2] at angle-of-arrival ``theta``; 0 outside (-pi/2, pi/2)."""
    if not math.isfinite(theta):
        raise DomainError(f"intensity_vs_aoa requires finite theta, got {theta!r}")
    if abs(theta) >= _HALF_PI:
        return 0.0
    return _peak_intensity(p) * math.exp(-0.5 * lambert_w0(_w_argument(p, theta)))


def _check_aperture(p: BeamParams) -> None:
    lphi = p.footprint_radius
    if p.aperture_radius ** 2 > _APERTURE_FOOTPRINT_RATIO * lphi * lphi:
        warnings.warn(
            f"aperture area pi*a^2 (a={p.aperture_radius:g} m) is not small "
            f"against the beam footprint (L*phi={lphi:g} m); received power "
            "overestimates the true collected fraction",
            BeamModelWarning,
            stacklevel=3,
        )


def received_power(p: BeamParams, theta: float) -> float:
    """Spot power [W] collected by the aperture at angle-of-arrival ``theta``."""
    _check_aperture(p)
    return intensity_vs_aoa(p, theta) * math.pi * p.aperture_radius ** 2


def received_power_deriv(p: BeamParams, theta: float) -> float:
    """d/d(theta) of :func:`received_power`, via the closed-form W identity.

    Uses power' = -power * sec(theta) csc(theta) * W/(1+W); the theta -> 0
    limit is 0 because W grows like tan^2(theta) there.
    """
    if not math.isfinite(theta):
        raise DomainError(f"received_power_deriv requires finite theta, got {theta!r}")
    if theta == 0.0 or abs(theta) >= _HALF_PI:
        return 0.0
    w = lambert_w0(_w_argument(p, theta))
    t = math.tan(theta)
    sec_csc = (1.0 + t * t) / t
    return -received_power(p, theta) * sec_csc * w / (1.0 + w)


def received_power_deriv2(p: BeamParams, theta: float) -> float:
    """Second theta-derivative of :func:`received_power` (closed form).

    Writing power' = -power * G(theta), the second derivative is
    power * (G^2 - G'). At theta = 0 this reduces to -power(0) * c with
    c the coefficient of tan^2(theta) inside the W argument.
    """
    if not math.isfinite(theta):
        raise DomainError(f"received_power_deriv2 requires finite theta, got {theta!r}")
    if abs(theta) >= _HALF_PI:
        return 0.0
    power = received_power(p, theta)
    c = _w_coefficient(p)
    if theta == 0.0:
        return -power * c
    t = math.tan(theta)
    w = lambert_w0(c * t * t)
    wp1 = 1.0 + w
    g = (1.0 + t * t) / t * w / wp1
    g_prime = (1.0 + t * t) * w / wp1 * (
        (1.0 - 1.0 / (t * t)) + 2.0 * (1.0 + t * t) / (t * t * wp1 * wp1)
    )
    return power * (g * g - g_prime)
