"""Special functions and small numerical utilities shared by the rest of the package.

Everything here is a pure function of its arguments; there is no module-level
mutable state, so concurrent use from multiple threads is safe.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Tuple

import numpy as np
import scipy.integrate
import scipy.special

__all__ = [
    "DomainError",
    "Interval",
    "lambert_w0",
    "erf",
    "gauss_mass",
    "gauss_pdf",
    "central_diff",
    "central_diff2",
    "adaptive_quad",
    "maximize_1d",
]

_SQRT2 = math.sqrt(2.0)
_INV_SQRT_2PI = 1.0 / math.sqrt(2.0 * math.pi)

# Golden-section interior ratio.
_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


class DomainError(ValueError):
    """Argument outside the mathematical domain of an operation."""


@dataclass(frozen=True)
class Interval:
    """Closed interval [lo, hi] on the real line, lo <= hi, both finite."""

    lo: float
    hi: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)):
            raise DomainError(f"interval endpoints must be finite, got [{self.lo}, {self.hi}]")
        if self.lo > self.hi:
            raise DomainError(f"interval requires lo <= hi, got [{self.lo}, {self.hi}]")

    @property
    def width(self) -> float:
        return self.hi - self.lo

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.lo + self.hi)


def lambert_w0(x):
    """Principal branch of the Lambert W function for x >= 0.

    Solves w * exp(w) = x by Halley iteration seeded from log1p(x).
    Accepts a scalar or an ndarray; returns the same shape.
    """
    arr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise DomainError("lambert_w0 requires finite input")
    if np.any(arr < 0.0):
        raise DomainError("lambert_w0 is restricted to x >= 0")

    w = np.log1p(arr)
    for _ in range(50):
        ew = np.exp(w)
        f = w * ew - arr
        wp1 = w + 1.0
        # Halley step for f(w) = w e^w - x.
        step = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1))
        w = w - step
        if np.all(np.abs(step) <= 1e-14 * (1.0 + np.abs(w))):
            break
    if arr.ndim == 0:
        return float(w)
    return w


def erf(x):
    """Error function. Accepts a scalar or ndarray; rejects non-finite input."""
    arr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise DomainError("erf requires finite input")
    out = scipy.special.erf(arr)
    if arr.ndim == 0:
        return float(out)
    return out


def gauss_pdf(u: float, sigma: float) -> float:
    """Gaussian density with standard deviation ``sigma`` evaluated at ``u``."""
    return _INV_SQRT_2PI / sigma * math.exp(-0.5 * (u / sigma) ** 2)


def gauss_mass(iv: Interval, center: float, sigma: float) -> float:
    """Probability mass of N(center, sigma^2) over the interval ``iv``."""
    if not (sigma > 0.0 and math.isfinite(sigma)):
        raise DomainError(f"gauss_mass requires sigma > 0, got {sigma}")
    s = _SQRT2 * sigma
    return 0.5 * (math.erf((iv.hi - center) / s) - math.erf((iv.lo - center) / s))


def central_diff(f: Callable[[float], float], x: float, h: float) -> float:
    """Second-order central difference approximation of f'(x)."""
    if not (h > 0.0):
        raise DomainError(f"central_diff requires h > 0, got {h}")
    num = f(x + h) - f(x - h)
    if not math.isfinite(num):
        raise DomainError(f"central_diff: non-finite evaluation near x={x}")
    return num / (2.0 * h)


def central_diff2(f: Callable[[float], float], x: float, h: float) -> float:
    """Second-order central difference approximation of f''(x)."""
    if not (h > 0.0):
        raise DomainError(f"central_diff2 requires h > 0, got {h}")
    num = f(x + h) - 2.0 * f(x) + f(x - h)
    if not math.isfinite(num):
        raise DomainError(f"central_diff2: non-finite evaluation near x={x}")
    return num / (h * h)


def adaptive_quad(f: Callable[[float], float], lo: float, hi: float,
                  tol: float = 1e-12) -> float:
    """Adaptive quadrature of ``f`` over [lo, hi] (scipy's QUADPACK)."""
    value, _ = scipy.integrate.quad(f, lo, hi, epsabs=tol, epsrel=tol, limit=200)
    return value


def maximize_1d(f: Callable[[float], float], iv: Interval, tol: float = 1e-9,
                grid_points: int = 512,
                grid_values: "np.ndarray | None" = None) -> Tuple[float, float]:
    """Maximize ``f`` on ``iv``: coarse grid scan plus golden-section refinement.

    The grid locates the best basin; golden-section search then narrows the
    bracket formed by the neighbours of the best grid point down to ``tol``.
    Ties on the grid resolve to the first (lowest) grid point, and that point
    is returned unless refinement strictly improves on it. Callers that can
    evaluate ``f`` on the uniform grid in bulk may pass the values as
    ``grid_values`` (length ``grid_points``) to skip the scalar grid scan.
    """
    if not (tol > 0.0):
        raise DomainError(f"maximize_1d requires tol > 0, got {tol}")
    if grid_points < 2:
        raise DomainError("maximize_1d requires at least 2 grid points")
    if iv.width == 0.0:
        return iv.lo, f(iv.lo)

    xs = np.linspace(iv.lo, iv.hi, grid_points)
    if grid_values is not None:
        vals = np.asarray(grid_values, dtype=float)
        if vals.shape != xs.shape:
            raise DomainError(
                f"grid_values must have length {grid_points}, got {vals.shape}")
    else:
        vals = np.array([f(float(x)) for x in xs])
    best = int(np.argmax(vals))
    x_best, f_best = float(xs[best]), float(vals[best])

    a = float(xs[max(best - 1, 0)])
    b = float(xs[min(best + 1, grid_points - 1)])

    x1 = b - _GOLDEN * (b - a)
    x2 = a + _GOLDEN * (b - a)
    f1, f2 = f(x1), f(x2)
    while b - a > tol:
        if f1 >= f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - _GOLDEN * (b - a)
            f1 = f(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + _GOLDEN * (b - a)
            f2 = f(x2)
    x_ref = 0.5 * (a + b)
    f_ref = f(x_ref)
    if f_ref > f_best:
        return x_ref, f_ref
    return x_best, f_best
