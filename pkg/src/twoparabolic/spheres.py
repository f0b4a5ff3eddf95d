"""Cygan spheres, isometric spheres and geographic coordinates."""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .heisenberg import (
    INFINITY,
    ORIGIN,
    SQRT2,
    BoundaryPoint,
    HeisPoint,
    PointCloud,
    cygan_distance,
    heis_inverse,
    heis_mul,
)
from .projlinalg import entries


class Side(Enum):
    INTERIOR = "interior"
    BOUNDARY = "boundary"
    EXTERIOR = "exterior"


@dataclass(frozen=True)
class CyganSphere:
    center: HeisPoint
    radius: float

    def __post_init__(self):
        if not self.radius > 0:
            raise ValueError(f"sphere radius must be positive, got {self.radius}")

    def boundary_band(self) -> float:
        return 1e-9 * (1.0 + self.radius)

    def sample(self, rng: np.random.Generator, n: int, scale: float = 1.0) -> PointCloud:
        """``n`` points uniform in geographic coordinates on the concentric
        sphere of radius ``scale * radius``."""
        alpha = rng.uniform(0.0, math.pi / 2, n)
        beta = rng.uniform(0.0, 2 * math.pi, n)
        return self.sample_at(alpha, beta, scale)

    def sample_at(self, alpha, beta, scale=1.0) -> PointCloud:
        """Points with geographic coordinates ``(alpha, beta)`` about the centre."""
        zeta, v = geographic_arrays(self.radius * np.asarray(scale), alpha, beta)
        return PointCloud.finite(zeta, v).left_translate(self.center)

    def signed_margin(self, cloud: PointCloud) -> np.ndarray:
        """``(radius - distance) / radius``: positive inside, ``-inf`` at infinity."""
        d = cloud.distance_to(self.center)
        return (self.radius - d) / self.radius


def isometric_sphere(P) -> CyganSphere:
    """Isometric sphere of ``P``: centre ``P^{-1}(inf)``, radius ``1/sqrt|g|``."""
    e = entries(P)
    if e.g == 0:
        raise ValueError("matrix fixes infinity, so it has no isometric sphere")
    center = HeisPoint(e.h.conjugate() / (SQRT2 * e.g.conjugate()), -(e.j / e.g).imag)
    return CyganSphere(center, 1.0 / math.sqrt(abs(e.g)))


def image_of_infinity(P) -> BoundaryPoint:
    """``P(inf) = (d/(sqrt2 g), Im(a/g))``, or infinity when ``g = 0``."""
    e = entries(P)
    if e.g == 0:
        return INFINITY
    return HeisPoint(e.d / (SQRT2 * e.g), (e.a / e.g).imag)


def sphere_side(S: CyganSphere, p: BoundaryPoint, tol: float | None = None) -> Side:
    if p is INFINITY:
        return Side.EXTERIOR
    band = S.boundary_band() if tol is None else tol
    d = cygan_distance(p, S.center)
    if abs(d - S.radius) <= band:
        return Side.BOUNDARY
    return Side.INTERIOR if d < S.radius else Side.EXTERIOR


def geographic_point(r: float, alpha: float, beta: float) -> HeisPoint:
    """Point ``(r sqrt(sin 2a) e^{i(a+b)}, r^2 cos 2a)`` on the sphere of radius ``r`` about o."""
    if not r > 0:
        raise ValueError("radius must be positive")
    s2a = max(math.sin(2 * alpha), 0.0)
    return HeisPoint(r * math.sqrt(s2a) * complex(math.cos(alpha + beta), math.sin(alpha + beta)),
                     r * r * math.cos(2 * alpha))


def geographic_arrays(r, alpha, beta):
    """Vectorized :func:`geographic_point`; returns ``(zeta, v)`` arrays."""
    alpha = np.asarray(alpha, dtype=np.float64)
    s2a = np.clip(np.sin(2 * alpha), 0.0, None)
    zeta = r * np.sqrt(s2a) * np.exp(1j * (alpha + beta))
    v = r * r * np.cos(2 * alpha)
    return zeta, v


def geographic_coords(p: HeisPoint, center: HeisPoint = ORIGIN) -> tuple[float, float, float]:
    """Invert the geographic chart: ``(r, alpha, beta)`` with ``beta`` in ``[0, 2pi)``.

    At the poles ``beta`` is undefined and returned as 0.
    """
    q = heis_mul(heis_inverse(center), p)
    r = cygan_distance(q, ORIGIN)
    if r == 0:
        raise ValueError("the centre itself has no geographic coordinates")
    c = min(1.0, max(-1.0, q.v / (r * r)))
    alpha = 0.5 * math.acos(c)
    if abs(q.zeta) <= 1e-15 * r:
        return r, alpha, 0.0
    beta = (math.atan2(q.zeta.imag, q.zeta.real) - alpha) % (2 * math.pi)
    return r, alpha, beta


def sphere_point(S: CyganSphere, alpha: float, beta: float) -> HeisPoint:
    """Geographic point on ``S`` (left translate of the chart about o)."""
    return heis_mul(S.center, geographic_point(S.radius, alpha, beta))
