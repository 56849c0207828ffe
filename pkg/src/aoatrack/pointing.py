"""General receiver channel: thermal noise plus Gaussian angular pointing jitter.

For small jitter the shifted spot intensity linearizes into the nominal signal
plus a jitter-proportional noise term. Integrating that noise term over a
detector gives the gain gamma_m converting jitter into output noise, so the
per-detector noise becomes sigma_m^2 = gamma_m^2 sigma_p^2 + sigma_n^2 and the
Fisher information acquires a noise-sensitivity contribution on top of the
usual signal-derivative term.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from .beam import (
    BeamParams,
    beamwidth,
    received_power,
    received_power_deriv,
    received_power_deriv2,
)
from .focal_plane import (
    NoiseModel,
    ReceiverGeometry,
    detector_bounds,
    detector_mean,
    noise_variance,
    spot_center,
    spot_center_deriv,
)
from .numerics import DomainError, central_diff, gauss_mass, gauss_pdf

__all__ = [
    "PointingChannel",
    "PointingModelWarning",
    "exact_spot_intensity",
    "linearized_spot_intensity",
    "signal_mean_sm",
    "gamma_m",
    "gamma_m_deriv",
    "total_noise_sigma",
    "total_noise_sigma_deriv",
    "fisher_information_general",
    "fisher_information_general_reference",
    "crlb_general",
]

# Jitter fraction of the beamwidth beyond which the linearization is suspect.
_SIGMA_P_GATE = 0.1

# Default relative step for numeric derivatives in theta.
_DERIV_STEP = 1e-6


class PointingModelWarning(UserWarning):
    """Pointing jitter is large enough to strain the small-error linearization."""


@dataclass(frozen=True)
class PointingChannel:
    """Bundle of beam, geometry and noise for the jittered channel (sigma_p > 0)."""

    beam: BeamParams
    geometry: ReceiverGeometry
    noise: NoiseModel

    def __post_init__(self) -> None:
        if not self.noise.sigma_p > 0:
            raise DomainError("PointingChannel requires noise.sigma_p > 0")
        phi = beamwidth(self.beam)
        if self.noise.sigma_p > _SIGMA_P_GATE * phi:
            warnings.warn(
                f"sigma_p = {self.noise.sigma_p:g} rad exceeds {_SIGMA_P_GATE:g} x "
                f"beamwidth ({phi:g} rad); the small-jitter linearization degrades",
                PointingModelWarning,
                stacklevel=2,
            )


def _kernel(ch: PointingChannel, theta: float, x: float) -> float:
    """Normalized spot kernel exp(-(x - x0)^2 / 2 rho^2) / sqrt(2 pi rho^2)."""
    rho = ch.geometry.spot_radius
    u = x - spot_center(ch.geometry, theta)
    return math.exp(-0.5 * (u / rho) ** 2) / math.sqrt(2.0 * math.pi * rho * rho)


def exact_spot_intensity(ch: PointingChannel, theta: float, x: float,
                         theta_p: float) -> float:
    """Spot intensity at focal-plane position ``x`` with the jitter applied exactly."""
    shifted = theta + theta_p
    if abs(x) > ch.geometry.half_extent:
        return 0.0
    return received_power(ch.beam, shifted) * _kernel(ch, shifted, x)


def linearized_spot_intensity(ch: PointingChannel, theta: float, x: float,
                              theta_p: float) -> float:
    """First-order (in ``theta_p``) spot intensity: nominal signal + jitter noise term."""
    if abs(x) > ch.geometry.half_extent:
        return 0.0
    power = received_power(ch.beam, theta)
    kern = _kernel(ch, theta, x)
    rho = ch.geometry.spot_radius
    offset = x - spot_center(ch.geometry, theta)
    gain = (power * offset * ch.geometry.focal_length * math.cos(theta) / (rho * rho)
            + received_power_deriv(ch.beam, theta))
    return power * kern + kern * gain * theta_p


def signal_mean_sm(ch: PointingChannel, theta: float, m: int) -> float:
    """Nominal (jitter-free) mean of detector ``m``; equals the thermal-channel mean."""
    return detector_mean(ch.beam, ch.geometry, theta, m)


def gamma_m(ch: PointingChannel, theta: float, m: int) -> float:
    """Jitter-to-output noise gain of detector ``m`` (closed form).

    Integrates the linearized jitter term over the detector: the spot-motion
    piece via the exponential antiderivative of (x - x0) * kernel, the energy
    piece as power' times the intercepted mass. Algebraically this equals
    alpha_m + beta_m of the thermal channel.
    """
    bounds = detector_bounds(ch.geometry, m)
    g = ch.geometry
    x0 = spot_center(g, theta)
    rho = g.spot_radius
    # integral of (x - x0) * pdf over the strip is rho^2 * (pdf_lo - pdf_hi);
    # the rho^2 cancels the 1/rho^2 of the motion gain.
    motion = (received_power(ch.beam, theta) * spot_center_deriv(g, theta)
              * (gauss_pdf(bounds.lo - x0, rho) - gauss_pdf(bounds.hi - x0, rho)))
    energy = received_power_deriv(ch.beam, theta) * gauss_mass(bounds, x0, rho)
    return motion + energy


def gamma_m_deriv(ch: PointingChannel, theta: float, m: int,
                  method: str = "central") -> float:
    """d(gamma_m)/d(theta), by central differences (default) or closed form."""
    if method == "central":
        h = _DERIV_STEP * max(1.0, abs(theta))
        return central_diff(lambda t: gamma_m(ch, t, m), theta, h)
    if method == "analytic":
        return _gamma_m_deriv_analytic(ch, theta, m)
    raise DomainError(f"unknown gamma derivative method {method!r}")


def _gamma_m_deriv_analytic(ch: PointingChannel, theta: float, m: int) -> float:
    """Closed-form gamma_m' using the second power derivative."""
    g = ch.geometry
    bounds = detector_bounds(g, m)
    x0 = spot_center(g, theta)
    x0p = spot_center_deriv(g, theta)
    rho = g.spot_radius
    power = received_power(ch.beam, theta)
    power_p = received_power_deriv(ch.beam, theta)
    power_pp = received_power_deriv2(ch.beam, theta)

    mass = gauss_mass(bounds, x0, rho)
    k_lo = gauss_pdf(bounds.lo - x0, rho)
    k_hi = gauss_pdf(bounds.hi - x0, rho)
    k = k_lo - k_hi
    # d/d(theta) of pdf(lo - x0) - pdf(hi - x0).
    k_p = x0p * ((bounds.lo - x0) * k_lo - (bounds.hi - x0) * k_hi) / (rho * rho)
    x0pp = -g.focal_length * math.sin(theta)

    return (power_pp * mass
            + 2.0 * power_p * x0p * k
            + power * (x0pp * k + x0p * k_p))


def total_noise_sigma(ch: PointingChannel, theta: float, m: int) -> float:
    """Total noise standard deviation sqrt(gamma_m^2 sigma_p^2 + sigma_n_m^2)."""
    gm = gamma_m(ch, theta, m)
    var_n = noise_variance(ch.geometry, ch.noise, m)
    return math.sqrt(gm * gm * ch.noise.sigma_p ** 2 + var_n)


def total_noise_sigma_deriv(ch: PointingChannel, theta: float, m: int,
                            method: str = "central") -> float:
    """d(sigma_m)/d(theta) = gamma_m gamma_m' sigma_p^2 / sigma_m."""
    gm = gamma_m(ch, theta, m)
    gmp = gamma_m_deriv(ch, theta, m, method=method)
    return gm * gmp * ch.noise.sigma_p ** 2 / total_noise_sigma(ch, theta, m)


def fisher_information_general(ch: PointingChannel, theta: float,
                               method: str = "central") -> float:
    """Fisher information of theta for the jittered channel.

    Production form sum_m [(S_m')^2 / sigma_m^2 + 2 (sigma_m')^2 / sigma_m^2];
    the noise-sensitivity term is the simplification of the derivative
    combination checked by :func:`fisher_information_general_reference`.
    """
    total = 0.0
    for m in range(ch.geometry.detector_count):
        s_prime = gamma_m(ch, theta, m)  # equals alpha_m + beta_m
        sigma = total_noise_sigma(ch, theta, m)
        sigma_prime = total_noise_sigma_deriv(ch, theta, m, method=method)
        total += (s_prime * s_prime + 2.0 * sigma_prime * sigma_prime) / (sigma * sigma)
    return total


def fisher_information_general_reference(ch: PointingChannel, theta: float,
                                         h_outer: float = 1e-5,
                                         h_inner: float = 1e-6) -> float:
    """Fisher information via the raw derivative combination, for cross-checking.

    Evaluates sum_m [(S_m')^2/sigma_m^2 + (sigma_m'/sigma_m)' -
    (sigma_m'/sigma_m^3)' sigma_m^2] with all sigma derivatives taken by
    nested central differences, independent of the production path.
    """
    total = 0.0
    for m in range(ch.geometry.detector_count):
        def sigma_fn(t: float, m: int = m) -> float:
            return total_noise_sigma(ch, t, m)

        def sigma_prime_fn(t: float) -> float:
            return central_diff(sigma_fn, t, h_inner * max(1.0, abs(t)))

        def ratio1(t: float) -> float:
            return sigma_prime_fn(t) / sigma_fn(t)

        def ratio3(t: float) -> float:
            return sigma_prime_fn(t) / sigma_fn(t) ** 3

        s_prime = gamma_m(ch, theta, m)
        sigma = sigma_fn(theta)
        h = h_outer * max(1.0, abs(theta))
        total += (s_prime * s_prime / (sigma * sigma)
                  + central_diff(ratio1, theta, h)
                  - central_diff(ratio3, theta, h) * sigma * sigma)
    return total


def crlb_general(ch: PointingChannel, theta: float) -> float:
    """Cramer-Rao lower bound [rad^2] for the jittered channel."""
    info = fisher_information_general(ch, theta)
    return 1.0 / info if info > 0.0 else math.inf
