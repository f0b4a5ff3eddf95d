"""Fans, their vertical projections, cardioids and strips.

An infinite fan ``F_inf(k e^{i phi})`` is the plane of Heisenberg points
``f(a, b) = ((k + i a) e^{i phi}, b - 2 k a)``; its vertical projection is
the line ``x cos(phi) + y sin(phi) = k``. A finite fan ``F_o(k)`` is the
image of ``F_inf(k)`` (``phi = 0``) under the involution swapping o and
infinity; its projection fills a cardioid.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .heisenberg import (
    SQRT2,
    HeisPoint,
    PointCloud,
    from_lift,
)
from .projlinalg import vec


@dataclass(frozen=True)
class InfiniteFan:
    k: float
    phi: float

    def point(self, a: float, b: float) -> HeisPoint:
        return infinite_fan_point(self, a, b)

    def sample(self, rng: np.random.Generator, n: int, extent: float) -> PointCloud:
        a = rng.uniform(-extent, extent, n)
        b = rng.uniform(-extent * extent, extent * extent, n)
        return PointCloud.finite((self.k + 1j * a) * np.exp(1j * self.phi), b - 2 * self.k * a)

    def signed_offset(self, cloud: PointCloud) -> np.ndarray:
        """``x cos(phi) + y sin(phi) - k`` of each projected point (``nan`` at infinity)."""
        off = (cloud.zeta * np.exp(-1j * self.phi)).real - self.k
        return np.where(cloud.inf, np.nan, off)


@dataclass(frozen=True)
class FiniteFan:
    k: float

    def __post_init__(self):
        if self.k == 0:
            raise ValueError("a finite fan needs k != 0")

    def point(self, a: float, b: float) -> HeisPoint:
        return finite_fan_point(self.k, a, b)


@dataclass(frozen=True)
class Cardioid:
    """Cardioid ``r = (1 - sign cos t) / (2k)``; ``sign=+1`` is the projection
    boundary of ``F_o(k)``, ``sign=-1`` that of ``F_o(-k)``."""

    k: float
    sign: int = 1

    def __post_init__(self):
        if not self.k > 0:
            raise ValueError("cardioid parameter k must be positive")
        if self.sign not in (1, -1):
            raise ValueError("cardioid sign must be +1 or -1")

    def radius(self, theta):
        return (1 - self.sign * np.cos(theta)) / (2 * self.k)

    def polyline(self, n: int, rotation: float = 0.0) -> np.ndarray:
        """``n`` boundary points as complex numbers, rotated by ``rotation``."""
        theta = np.linspace(0.0, 2 * math.pi, n)
        return self.radius(theta) * np.exp(1j * (theta + rotation))


@dataclass(frozen=True)
class Strip:
    """``{(x, y) : lo <= x cos(phi) + y sin(phi) <= hi}``."""

    phi: float
    lo: float
    hi: float

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError("strip needs lo <= hi")

    def coordinate(self, zeta):
        return (np.asarray(zeta) * np.exp(-1j * self.phi)).real

    def contains(self, zeta, tol: float = 0.0):
        c = self.coordinate(zeta)
        return (c >= self.lo - tol) & (c <= self.hi + tol)

    def margin(self, zeta):
        """Distance to the nearer boundary line, negative outside."""
        c = self.coordinate(zeta)
        return np.minimum(c - self.lo, self.hi - c)


def infinite_fan_point(F: InfiniteFan, a: float, b: float) -> HeisPoint:
    return HeisPoint((F.k + 1j * a) * cmath.exp(1j * F.phi), b - 2 * F.k * a)


def fan_translate_by_A(F: InfiniteFan, params) -> InfiniteFan:
    """Image of ``F`` under the generator ``A``: the fan with ``k + s1``.

    ``A`` moves the point with coordinates ``(a, b)`` to the point with
    coordinates ``(a, b + t1)`` of the image fan.
    """
    if params.s1 != 0 and not math.isclose(math.remainder(F.phi - params.theta1, 2 * math.pi), 0.0,
                                           abs_tol=1e-12):
        raise ValueError("fan direction must match theta1 of the generator")
    return InfiniteFan(F.k + params.s1, F.phi)


def _finite_fan_parts(k, a, b):
    P = k * k + a * a
    Q = b - 2 * k * a
    D = P * P + Q * Q
    return P, Q, D


def finite_fan_point(k: float, a: float, b: float) -> HeisPoint:
    """Point of ``F_o(k)`` with coordinates ``(a, b)``."""
    if k == 0:
        raise ValueError("a finite fan needs k != 0")
    P, Q, D = _finite_fan_parts(k, a, b)
    x = (-k * P + a * Q) / D
    y = (-a * P - k * Q) / D
    return HeisPoint(complex(x, y), -Q / D)


def finite_fan_jacobian(k: float, a: float, b: float) -> np.ndarray:
    """Derivative of ``(a, b) -> (x, y, v)`` for :func:`finite_fan_point`, shape ``(3, 2)``."""
    P, Q, D = _finite_fan_parts(k, a, b)
    dD = np.array([4 * a * P - 4 * k * Q, 2 * Q])
    nums = np.array([-k * P + a * Q, -a * P - k * Q, -Q])
    dnums = np.array([[Q - 4 * k * a, a],
                      [-P - 2 * a * a + 2 * k * k, -k],
                      [2 * k, -1.0]])
    return (dnums * D - np.outer(nums, dD)) / (D * D)


def projection_jacobian(k: float, a: float, b: float) -> float:
    """Determinant of ``(a, b) -> (x, y)``; vanishes exactly on the fold curve."""
    P, Q, D = _finite_fan_parts(k, a, b)
    return (-a * P + k * Q) / (D * D)


def fold_curve_b(k: float, a):
    """The ``b`` of the fold curve ``b = 2ka + (a/k)(k^2 + a^2)``."""
    return 2 * k * a + (a / k) * (k * k + a * a)


def cardioid_radius(C: Cardioid, theta: float) -> float:
    return float(C.radius(theta))


def cardioid_expression(C: Cardioid, x, y):
    """``y^2 - sign 4kx(x^2+y^2) - 4k^2(x^2+y^2)^2``: nonnegative on the filled cardioid."""
    r2 = x * x + y * y
    return y * y - C.sign * 4 * C.k * x * r2 - 4 * C.k * C.k * r2 * r2


def cardioid_contains(C: Cardioid, x, y, tol: float = 1e-12):
    """Closed-region membership; the tolerance is relative to the size of the terms."""
    r2 = x * x + y * y
    scale = y * y + 4 * C.k * np.abs(x) * r2 + 4 * C.k * C.k * r2 * r2
    return cardioid_expression(C, x, y) >= -tol * scale


def cardioid_strip_halfwidth(k: float, phi: float) -> float:
    """Half-width ``cos^3(phi/3) / k`` of the thinnest strip at angle ``phi`` holding both cardioids."""
    if not k > 0:
        raise ValueError("k must be positive")
    if abs(phi) > math.pi / 2 + 1e-15:
        raise ValueError("phi must lie in [-pi/2, pi/2]")
    return math.cos(phi / 3) ** 3 / k


def cardioid_support_angle(phi: float, sign: int) -> float:
    """Polar angle of the cardioid point extremal in direction ``phi``."""
    return 2 * phi / 3 + (math.pi if sign == 1 else 0.0)


def fan_strip_extreme_lifts(k: float, phi: float) -> tuple[np.ndarray, np.ndarray]:
    """Lifts of the points of ``F_o(k)`` and ``F_o(-k)`` projecting to the strip boundary."""
    if not k > 0:
        raise ValueError("k must be positive")
    c = math.cos(phi / 3)
    z1 = -c ** 3 * cmath.exp(1j * phi / 3) / k ** 2
    z2 = SQRT2 * c * c * cmath.exp(2j * phi / 3) / k
    return vec(z1, -z2, 1), vec(z1, z2, 1)


def fan_strip_extreme_points(k: float, phi: float) -> tuple[HeisPoint, HeisPoint]:
    lo, hi = fan_strip_extreme_lifts(k, phi)
    return from_lift(lo), from_lift(hi)


@dataclass(frozen=True)
class FanInversion:
    a: float
    b: float
    residual: float
    iterations: int


def invert_finite_fan(k: float, target: HeisPoint, grid: int = 41, extent: float = 4.0,
                      max_iter: int = 100, tol: float = 1e-13) -> FanInversion:
    """Find ``(a, b)`` with ``finite_fan_point(k, a, b) = target``.

    Coarse grid search for a start, then damped Gauss-Newton with the
    analytic Jacobian.
    """
    goal = np.array([target.zeta.real, target.zeta.imag, target.v])

    def residual(a, b):
        p = finite_fan_point(k, a, b)
        return np.array([p.zeta.real, p.zeta.imag, p.v]) - goal

    # (a, b) scale like (k, k^2) under dilation
    avals = np.linspace(-extent * abs(k), extent * abs(k), grid)
    bvals = np.linspace(-extent * k * k, extent * k * k, grid)
    best = min(((float(np.linalg.norm(residual(a, b))), a, b) for a in avals for b in bvals))
    _, a, b = best
    r = residual(a, b)
    it = 0
    for it in range(1, max_iter + 1):
        J = finite_fan_jacobian(k, a, b)
        step, *_ = np.linalg.lstsq(J, -r, rcond=None)
        lam = 1.0
        base = np.linalg.norm(r)
        while lam > 1e-6:
            r_new = residual(a + lam * step[0], b + lam * step[1])
            if np.linalg.norm(r_new) < base:
                break
            lam *= 0.5
        else:
            break
        a, b, r = a + lam * step[0], b + lam * step[1], r_new
        if np.linalg.norm(r) <= tol:
            break
    return FanInversion(float(a), float(b), float(np.linalg.norm(r)), it)
