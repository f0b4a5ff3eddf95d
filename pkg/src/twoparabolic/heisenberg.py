"""Heisenberg group, standard lifts, Cygan metric and boundary action.

The boundary of complex hyperbolic 2-space is the Heisenberg group
``C x R`` together with a point at infinity. Finite points are
:class:`HeisPoint` instances; infinity is the singleton :data:`INFINITY`.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from . import kernels
from .projlinalg import (
    MATRIX_TOL,
    Signature,
    classify_vector,
    hermitian_inner,
    mat,
    vec,
)

SQRT2 = math.sqrt(2.0)
LIFT_TOL = 1e-12
CARTAN_TOL = 1e-9

IOTA = np.array([[0, 0, 1], [0, 1, 0], [1, 0, 0]], dtype=np.complex128)


@dataclass(frozen=True)
class HeisPoint:
    zeta: complex
    v: float

    def __post_init__(self):
        object.__setattr__(self, "zeta", complex(self.zeta))
        object.__setattr__(self, "v", float(self.v))
        if not (math.isfinite(self.zeta.real) and math.isfinite(self.zeta.imag)
                and math.isfinite(self.v)):
            raise ValueError(f"non-finite Heisenberg coordinates {self.zeta}, {self.v}")

    def __repr__(self):
        return f"HeisPoint({self.zeta!r}, {self.v!r})"


class Infinity:
    """The distinguished boundary point fixed by upper triangular matrices."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITY"

    def __reduce__(self):
        return (Infinity, ())


INFINITY = Infinity()
ORIGIN = HeisPoint(0j, 0.0)

BoundaryPoint = Union[HeisPoint, Infinity]


def is_infinity(p) -> bool:
    return p is INFINITY


def heis_mul(p: HeisPoint, q: HeisPoint) -> HeisPoint:
    """Group law ``(z1,v1)(z2,v2) = (z1+z2, v1+v2+2 Im(z1 conj(z2)))``."""
    return HeisPoint(p.zeta + q.zeta,
                     p.v + q.v + 2.0 * (p.zeta * q.zeta.conjugate()).imag)


def heis_inverse(p: HeisPoint) -> HeisPoint:
    return HeisPoint(-p.zeta, -p.v)


def vertical_projection(p: HeisPoint) -> complex:
    return p.zeta


def standard_lift(p: BoundaryPoint) -> np.ndarray:
    if p is INFINITY:
        return vec(1, 0, 0)
    return vec(-abs(p.zeta) ** 2 + 1j * p.v, SQRT2 * p.zeta, 1)


def from_lift(z, tol: float = LIFT_TOL, null_tol: float = MATRIX_TOL) -> BoundaryPoint:
    """Boundary point represented by the null vector ``z``.

    Returns :data:`INFINITY` when ``|z3| <= tol * ||z||``.
    """
    z = np.asarray(z, dtype=np.complex128)
    if classify_vector(z, null_tol) is not Signature.NULL:
        raise ValueError("vector is not null, so it is not a boundary point")
    if abs(z[2]) <= tol * np.linalg.norm(z):
        return INFINITY
    return HeisPoint(z[1] / (SQRT2 * z[2]), (z[0] / z[2]).imag)


def cygan_distance(p: HeisPoint, q: HeisPoint) -> float:
    """Cygan distance ``| |z1-z2|^2 - i v1 + i v2 - 2i Im(z1 conj z2) |^(1/2)``."""
    dz = p.zeta - q.zeta
    re = dz.real * dz.real + dz.imag * dz.imag
    im = -p.v + q.v - 2.0 * (p.zeta * q.zeta.conjugate()).imag
    return math.sqrt(math.hypot(re, im))


def cygan_distance_via_lift(p: BoundaryPoint, q: BoundaryPoint) -> float:
    """Cygan distance as ``|<p, q>|^(1/2)`` on standard lifts."""
    if p is INFINITY or q is INFINITY:
        raise ValueError("the Cygan distance is only defined between finite points")
    return math.sqrt(abs(hermitian_inner(standard_lift(p), standard_lift(q))))


def translation_matrix(tau: complex, t: float) -> np.ndarray:
    """Upper triangular unipotent matrix acting as left translation by ``(tau, t)``."""
    tau = complex(tau)
    return mat([[1, -SQRT2 * tau.conjugate(), -abs(tau) ** 2 + 1j * t],
                [0, 1, SQRT2 * tau],
                [0, 0, 1]])


def rotation_matrix(psi: float) -> np.ndarray:
    """Heisenberg rotation ``(zeta, v) -> (e^{i psi} zeta, v)`` fixing o and infinity."""
    return np.diag([1, cmath.exp(1j * psi), 1]).astype(np.complex128)


def dilation_matrix(k: float) -> np.ndarray:
    """Heisenberg dilation ``(zeta, v) -> (k zeta, k^2 v)``."""
    return np.diag([k, 1.0, 1.0 / k]).astype(np.complex128)


def cartan_invariant(z1: BoundaryPoint, z2: BoundaryPoint, z3: BoundaryPoint,
                     tol: float = CARTAN_TOL) -> float:
    """Cartan angular invariant ``arg(-<z1,z2><z2,z3><z3,z1>)`` in ``(-pi, pi]``."""
    l1, l2, l3 = standard_lift(z1), standard_lift(z2), standard_lift(z3)
    a = hermitian_inner(l1, l2)
    b = hermitian_inner(l2, l3)
    c = hermitian_inner(l3, l1)
    n1, n2, n3 = (float(np.linalg.norm(x)) for x in (l1, l2, l3))
    # distinct null vectors have nonzero inner product
    if abs(a) <= tol * n1 * n2 or abs(b) <= tol * n2 * n3 or abs(c) <= tol * n3 * n1:
        raise ValueError("Cartan invariant needs three distinct points")
    angle = cmath.phase(-a * b * c)
    return math.pi if angle == -math.pi else angle


def apply_boundary(M, p: BoundaryPoint, tol: float = LIFT_TOL) -> BoundaryPoint:
    """Projective action of ``M`` on a boundary point."""
    w = np.asarray(M, dtype=np.complex128) @ standard_lift(p)
    return from_lift(w, tol=tol, null_tol=1e-8)


def iota_boundary(p: BoundaryPoint) -> BoundaryPoint:
    """The involution swapping o and infinity, in Heisenberg coordinates."""
    if p is INFINITY:
        return ORIGIN
    if p.zeta == 0 and p.v == 0:
        return INFINITY
    w = complex(-abs(p.zeta) ** 2, p.v)
    return HeisPoint(p.zeta / w, -p.v / (abs(w) ** 2))


# -- batches ---------------------------------------------------------------

@dataclass
class PointCloud:
    """A batch of boundary points as parallel arrays.

    ``inf[i]`` marks the point at infinity, in which case ``zeta[i]`` and
    ``v[i]`` are ignored (kept at zero).
    """

    zeta: np.ndarray
    v: np.ndarray
    inf: np.ndarray

    def __post_init__(self):
        self.zeta = np.ascontiguousarray(self.zeta, dtype=np.complex128)
        self.v = np.ascontiguousarray(self.v, dtype=np.float64)
        if self.inf is None:
            self.inf = np.zeros(self.zeta.shape, dtype=bool)
        self.inf = np.ascontiguousarray(self.inf, dtype=bool)

    @classmethod
    def finite(cls, zeta, v) -> "PointCloud":
        return cls(zeta, v, None)

    @classmethod
    def from_points(cls, points: Sequence[BoundaryPoint]) -> "PointCloud":
        zeta = [0j if p is INFINITY else p.zeta for p in points]
        v = [0.0 if p is INFINITY else p.v for p in points]
        inf = [p is INFINITY for p in points]
        return cls(zeta, v, inf)

    def __len__(self):
        return self.zeta.shape[0]

    def point(self, i: int) -> BoundaryPoint:
        if self.inf[i]:
            return INFINITY
        return HeisPoint(self.zeta[i], self.v[i])

    def take(self, index) -> "PointCloud":
        return PointCloud(self.zeta[index], self.v[index], self.inf[index])

    def concat(self, other: "PointCloud") -> "PointCloud":
        return PointCloud(np.concatenate([self.zeta, other.zeta]),
                          np.concatenate([self.v, other.v]),
                          np.concatenate([self.inf, other.inf]))

    def act(self, M, tol: float = LIFT_TOL) -> "PointCloud":
        zeta, v, inf = kernels.act(np.asarray(M, dtype=np.complex128),
                                   self.zeta, self.v, self.inf, tol)
        return PointCloud(zeta, v, inf)

    def iota(self) -> "PointCloud":
        return self.act(IOTA)

    def left_translate(self, c: HeisPoint) -> "PointCloud":
        """Left-translate every finite point by ``c``."""
        zeta = c.zeta + self.zeta
        v = c.v + self.v + 2.0 * (c.zeta * np.conj(self.zeta)).imag
        zeta = np.where(self.inf, 0j, zeta)
        v = np.where(self.inf, 0.0, v)
        return PointCloud(zeta, v, self.inf.copy())

    def distance_to(self, c: HeisPoint) -> np.ndarray:
        """Cygan distance to ``c``; ``inf`` for the point at infinity."""
        d = kernels.cygan_to(self.zeta, self.v, c.zeta, c.v)
        d[self.inf] = np.inf
        return d
