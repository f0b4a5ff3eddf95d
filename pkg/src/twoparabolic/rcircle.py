"""Finite R-circles in normal position and their Cygan diameter.

The normalized R-circle of radius ``r`` is the set of points

    p(alpha, eps) = (eps r sqrt(sin 2 alpha) e^{i alpha}, r^2 cos 2 alpha),

``alpha in [0, pi/2]``, ``eps = +-1``. It is a meridian of the Cygan sphere
of radius ``r`` about the origin and is fixed by the anti-holomorphic
involution :func:`iota_R`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from . import kernels
from .heisenberg import HeisPoint
from .projlinalg import AntiHolMap, mat

HALF_PI = math.pi / 2


@dataclass(frozen=True)
class NormalizedRCircle:
    r: float

    def __post_init__(self):
        if not self.r > 0:
            raise ValueError("R-circle radius must be positive")

    def point(self, alpha: float, eps: int) -> HeisPoint:
        return rcircle_point(self.r, alpha, eps)

    def involution(self) -> AntiHolMap:
        return iota_R(self.r)

    def diameter(self, alpha: float) -> float:
        return diameter(self.r, alpha)


def _check_alpha(alpha: float) -> None:
    if not (0.0 <= alpha <= HALF_PI):
        raise ValueError(f"alpha must lie in [0, pi/2], got {alpha}")


def _cos_sin(alpha: float) -> tuple[float, float]:
    """``(cos a, sin a)`` clipped at 0; the cosine is taken as ``sin(pi/2 - a)``,
    which is exact at ``a = pi/2`` where the cube roots below are steepest."""
    return max(math.sin(HALF_PI - alpha), 0.0), max(math.sin(alpha), 0.0)


def rcircle_point(r: float, alpha: float, eps: int) -> HeisPoint:
    if not r > 0:
        raise ValueError("radius must be positive")
    if eps not in (1, -1):
        raise ValueError("eps must be +1 or -1")
    s = math.sqrt(max(math.sin(2 * alpha), 0.0))
    return HeisPoint(eps * r * s * complex(math.cos(alpha), math.sin(alpha)),
                     r * r * math.cos(2 * alpha))


def rcircle_lift(r: float, alpha: float, eps: int) -> np.ndarray:
    """The lift ``(r^2 i e^{2i alpha}, eps r sqrt(2 sin 2alpha) e^{i alpha}, 1)``."""
    s = math.sqrt(max(2 * math.sin(2 * alpha), 0.0))
    return np.array([1j * r * r * np.exp(2j * alpha), eps * r * s * np.exp(1j * alpha), 1.0],
                    dtype=np.complex128)


def iota_R(r: float) -> AntiHolMap:
    """``(z1, z2, z3) -> (conj(z3) r^2, -i conj(z2), conj(z1) / r^2)``."""
    if not r > 0:
        raise ValueError("radius must be positive")
    return AntiHolMap(mat([[0, 0, r * r], [0, -1j, 0], [1.0 / (r * r), 0, 0]]))


def pair_distance(r: float, alpha: float, eps: int, theta: float, eta: int) -> float:
    """Closed-form Cygan distance between ``p(alpha, eps)`` and ``p(theta, eta)``."""
    sa, ca = math.sin(alpha), math.cos(alpha)
    st, ct = math.sin(theta), math.cos(theta)
    root = lambda x: math.sqrt(max(x, 0.0))  # noqa: E731
    return math.sqrt(2.0) * r * abs(root(sa) * root(ct) - eta * eps * root(ca) * root(st))


def diameter(r: float, alpha: float) -> float:
    """Largest Cygan distance from ``p(alpha, +-1)`` to the rest of the circle."""
    if not r > 0:
        raise ValueError("radius must be positive")
    _check_alpha(alpha)
    c, s = _cos_sin(alpha)
    return math.sqrt(2.0) * r * (c ** (2 / 3) + s ** (2 / 3)) ** 0.75


def f_alpha_max(alpha: float) -> tuple[float, float]:
    """Maximizer and maximum of ``sin^(1/2)a cos^(1/2)t + cos^(1/2)a sin^(1/2)t`` over ``t``.

    The critical point satisfies ``cos^(1/2) t0 ~ sin^(1/6) a`` and
    ``sin^(1/2) t0 ~ cos^(1/6) a``, so ``t0 = atan2(cos^(1/3) a, sin^(1/3) a)``.
    """
    _check_alpha(alpha)
    c, s = _cos_sin(alpha)
    theta0 = math.atan2(c ** (1 / 3), s ** (1 / 3))
    return theta0, (s ** (2 / 3) + c ** (2 / 3)) ** 0.75


@dataclass(frozen=True)
class FarthestPoint:
    theta: float
    eta: int
    distance: float


def _circle_arrays(r, theta, eta):
    s = np.sqrt(np.clip(np.sin(2 * theta), 0.0, None))
    return eta * r * s * np.exp(1j * theta), r * r * np.cos(2 * theta)


def farthest_point(r: float, alpha: float, n: int = 10_000, eps: int = 1) -> FarthestPoint:
    """Brute-force search for the point of the circle farthest from ``p(alpha, eps)``.

    Evaluates the Cygan distance on a uniform ``theta`` grid for both signs,
    then refines the best cell of each sign with a bounded scalar search.
    """
    if n < 100:
        raise ValueError("need at least 100 grid samples")
    _check_alpha(alpha)
    p = rcircle_point(r, alpha, eps)
    grid = np.linspace(0.0, HALF_PI, n)
    h = grid[1] - grid[0]

    def dist(theta, eta):
        zeta, v = _circle_arrays(r, np.atleast_1d(theta), eta)
        return kernels.cygan_to(zeta, v, p.zeta, p.v)

    best = FarthestPoint(0.0, 1, -1.0)
    for eta in (1, -1):
        d = dist(grid, eta)
        k = int(np.argmax(d))
        cand = FarthestPoint(float(grid[k]), eta, float(d[k]))
        lo, hi = max(0.0, grid[k] - h), min(HALF_PI, grid[k] + h)
        res = minimize_scalar(lambda t: -dist(t, eta)[0], bounds=(lo, hi),
                              method="bounded", options={"xatol": 1e-13})
        if -res.fun > cand.distance:
            cand = FarthestPoint(float(res.x), eta, float(-res.fun))
        if cand.distance > best.distance:
            best = cand
    return best


def diameter_bruteforce(r: float, alpha: float, n: int = 10_000) -> float:
    """Independent numerical maximum of the Cygan distance from ``p(alpha, +1)``."""
    return farthest_point(r, alpha, n).distance
