"""Discreteness criteria for the group generated by two Heisenberg translations.

``A`` is the Heisenberg translation by ``(s1 e^{i theta1}, t1)`` fixing
infinity and ``B`` its lower triangular counterpart by
``(s2 e^{i theta2}, t2)`` fixing the origin. Each criterion is evaluated as
a margin ``lhs - rhs``; a nonnegative margin is a sufficient condition for
``<A, B>`` to be free and discrete.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from enum import Enum

import numpy as np

from .heisenberg import IOTA, SQRT2
from .projlinalg import IDENTITY, mat, sup_norm

HALF_PI = math.pi / 2
EQUALITY_REL = 1e-9
CRITERIA = ("C1", "C2", "C3", "C4", "W1", "W2", "W3", "Vert")


class NormalizationError(ValueError):
    """Raised when ``theta1 - theta2`` is outside ``[-pi/2, pi/2]``."""


def wrap_angle(theta: float) -> float:
    """Representative of ``theta`` in ``(-pi, pi]``."""
    w = math.remainder(theta, 2 * math.pi)
    return math.pi if w == -math.pi else w


@dataclass(frozen=True)
class GeneratorParams:
    s1: float
    t1: float
    theta1: float
    s2: float
    t2: float
    theta2: float

    def __post_init__(self):
        vals = [float(x) for x in (self.s1, self.t1, self.theta1, self.s2, self.t2, self.theta2)]
        if not all(math.isfinite(x) for x in vals):
            raise ValueError("generator parameters must be finite")
        s1, t1, th1, s2, t2, th2 = vals
        # s e^{i theta} = (-s) e^{i (theta + pi)}
        if s1 < 0:
            s1, th1 = -s1, th1 + math.pi
        if s2 < 0:
            s2, th2 = -s2, th2 + math.pi
        th1 = wrap_angle(th1) if s1 != 0 else 0.0
        th2 = wrap_angle(th2) if s2 != 0 else 0.0
        # also catches s so small that s^2 underflows
        if math.hypot(s1 * s1, t1) == 0:
            raise ValueError("A is the identity: (s1, t1) must not be (0, 0)")
        if math.hypot(s2 * s2, t2) == 0:
            raise ValueError("B is the identity: (s2, t2) must not be (0, 0)")
        for name, val in zip(("s1", "t1", "theta1", "s2", "t2", "theta2"),
                             (s1, t1, th1, s2, t2, th2)):
            object.__setattr__(self, name, val)

    @property
    def m1(self) -> float:
        """``|s1^2 + i t1|``."""
        return math.hypot(self.s1 * self.s1, self.t1)

    @property
    def m2(self) -> float:
        return math.hypot(self.s2 * self.s2, self.t2)

    @property
    def delta_theta(self) -> float:
        """``theta1 - theta2`` in ``(-pi, pi]``; 0 when either angle is undefined."""
        if self.s1 == 0 or self.s2 == 0:
            return 0.0
        return wrap_angle(self.theta1 - self.theta2)

    def is_normalized(self, tol: float = 1e-12) -> bool:
        return abs(self.delta_theta) <= HALF_PI + tol

    def as_tuple(self) -> tuple[float, ...]:
        return (self.s1, self.t1, self.theta1, self.s2, self.t2, self.theta2)

    def swapped(self) -> "GeneratorParams":
        """Parameters of ``(iota B iota, iota A iota)``."""
        return GeneratorParams(self.s2, self.t2, self.theta2, self.s1, self.t1, self.theta1)


def generator_A(s: float, t: float, theta: float) -> np.ndarray:
    u = s * complex(math.cos(theta), math.sin(theta))
    return mat([[1, -SQRT2 * u.conjugate(), -s * s + 1j * t],
                [0, 1, SQRT2 * u],
                [0, 0, 1]])


def generator_B(s: float, t: float, theta: float) -> np.ndarray:
    u = s * complex(math.cos(theta), math.sin(theta))
    return mat([[1, 0, 0],
                [SQRT2 * u, 1, 0],
                [-s * s + 1j * t, -SQRT2 * u.conjugate(), 1]])


def build_generators(params: GeneratorParams) -> tuple[np.ndarray, np.ndarray]:
    return (generator_A(params.s1, params.t1, params.theta1),
            generator_B(params.s2, params.t2, params.theta2))


def conjugate_by_iota(M) -> np.ndarray:
    return IOTA @ np.asarray(M, dtype=np.complex128) @ IOTA


def normalize_delta_theta(params: GeneratorParams) -> tuple[GeneratorParams, str | None]:
    """Replace ``B`` by ``B^{-1}`` when ``|theta1 - theta2| > pi/2``.

    ``B^{-1}`` has parameters ``(s2, -t2, theta2 + pi)``. Returns the new
    parameters and ``"B"`` if an inversion happened, else ``None``.
    """
    if params.s1 == 0 or params.s2 == 0 or abs(params.delta_theta) <= HALF_PI:
        return params, None
    return replace(params, t2=-params.t2, theta2=params.theta2 + math.pi), "B"


def stabiliser_transform(params: GeneratorParams, k: float, psi: float) -> GeneratorParams:
    """Conjugate by the dilation ``k`` and rotation ``psi`` fixing o and infinity."""
    if not k > 0:
        raise ValueError("dilation factor k must be positive")
    return GeneratorParams(params.s1 * k, params.t1 * k * k, params.theta1 + psi,
                           params.s2 / k, params.t2 / (k * k), params.theta2 + psi)


def _half_angle_cs(s: float, t: float) -> tuple[float, float, float]:
    """``(cos a, sin a, m)`` for ``s^2 + it = m e^{2ia}``, ``a`` in ``[0, pi/2]``.

    Uses ``m -+ t = s^4 / (m +- t)`` so neither square is formed by cancellation.
    """
    m = math.hypot(s * s, t)
    if m == 0:
        raise ValueError("(s, t) must not be (0, 0)")
    s4 = (s * s) ** 2
    if t >= 0:
        plus = m + t
        minus = s4 / plus
    else:
        minus = m - t
        plus = s4 / minus
    return math.sqrt(plus / (2 * m)), math.sqrt(minus / (2 * m)), m


def _cube_root_factor(s: float, t: float) -> float:
    """``((1 - t/m)^(1/3) + (1 + t/m)^(1/3))^(3/4)`` with ``m = |s^2 + it|``."""
    c, sn, _ = _half_angle_cs(s, t)
    return ((2 * sn * sn) ** (1 / 3) + (2 * c * c) ** (1 / 3)) ** 0.75


def ball_radius(s: float, t: float) -> float:
    """Radius of the smallest Cygan ball about o holding the isometric spheres of
    ``B(s, t)`` and ``B(s, t)^{-1}``."""
    m = math.hypot(s * s, t)
    if m == 0:
        raise ValueError("(s, t) must not be (0, 0)")
    return 2 ** 0.25 / math.sqrt(m) * _cube_root_factor(s, t)


class Status(Enum):
    SATISFIED = "S"
    EQUALITY = "E"
    VIOLATED = "V"


class EqualityClass(Enum):
    SCREW_PARABOLIC_PI = "ScrewParabolicPi"
    UNIPOTENT = "Unipotent"
    NONE = "None"


@dataclass(frozen=True)
class CriterionResult:
    id: str
    applicable: bool
    margin: float = math.nan
    lhs: float = math.nan
    rhs: float = math.nan
    status: Status | None = None

    @property
    def code(self) -> str:
        return self.status.value if self.applicable else "NA"

    @property
    def holds(self) -> bool:
        return self.applicable and self.status is not Status.VIOLATED


def status_of(lhs: float, rhs: float) -> Status:
    margin = lhs - rhs
    if abs(margin) <= EQUALITY_REL * (1 + abs(lhs)):
        return Status.EQUALITY
    return Status.SATISFIED if margin > 0 else Status.VIOLATED


def _result(cid: str, lhs: float, rhs: float) -> CriterionResult:
    return CriterionResult(cid, True, lhs - rhs, lhs, rhs, status_of(lhs, rhs))


@dataclass
class Verdict:
    results: list[CriterionResult]
    equality_class: EqualityClass = EqualityClass.NONE
    any_satisfied: bool = field(init=False)

    def __post_init__(self):
        self.any_satisfied = any(r.holds for r in self.results)

    def __getitem__(self, cid: str) -> CriterionResult:
        for r in self.results:
            if r.id == cid:
                return r
        raise KeyError(cid)

    @property
    def summary_code(self) -> str:
        """``S`` if some criterion is strictly satisfied, else ``E`` on equality, else ``V``."""
        codes = {r.code for r in self.results}
        if "S" in codes:
            return "S"
        return "E" if "E" in codes else "V"


def evaluate_criteria(params: GeneratorParams) -> Verdict:
    if not params.is_normalized():
        raise NormalizationError("theta1 - theta2 must lie in [-pi/2, pi/2]; "
                                 "apply normalize_delta_theta first")
    s1, t1, s2, t2 = params.s1, params.t1, params.s2, params.t2
    m1, m2 = params.m1, params.m2
    dth = params.delta_theta
    cos_d = math.cos(dth)
    results = []

    lhs1 = math.sqrt(m1) * math.sqrt(m2)
    rhs1 = SQRT2 * _cube_root_factor(s2, t2) * _cube_root_factor(s1, t1)
    results.append(_result("C1", lhs1, rhs1))

    if s1 != 0:
        rhs = 2 * s2 ** 3 / m2 ** 1.5 * cos_d + 2 if s2 != 0 else 2.0
        results.append(_result("C2", s1 * math.sqrt(m2), rhs))
    else:
        results.append(CriterionResult("C2", False))

    if s2 != 0:
        rhs = 2 * s1 ** 3 / m1 ** 1.5 * cos_d + 2 if s1 != 0 else 2.0
        results.append(_result("C3", math.sqrt(m1) * s2, rhs))
    else:
        results.append(CriterionResult("C3", False))

    if s1 != 0 and s2 != 0:
        results.append(_result("C4", s1 * s2, 4 * math.cos(dth / 3) ** 3))
    else:
        results.append(CriterionResult("C4", False))

    weak_rhs = 4 * math.cos(dth / 2) ** 2
    results.append(_result("W1", lhs1, 4.0))
    results.append(_result("W2", s1 * math.sqrt(m2), weak_rhs) if s1 != 0
                   else CriterionResult("W2", False))
    results.append(_result("W3", math.sqrt(m1) * s2, weak_rhs) if s2 != 0
                   else CriterionResult("W3", False))

    if s1 == 0 and s2 == 0:
        results.append(_result("Vert", math.sqrt(abs(t1)) * math.sqrt(abs(t2)), 2.0))
    else:
        results.append(CriterionResult("Vert", False))

    return Verdict(results, classify_equality(params))


def implication_check(params: GeneratorParams) -> bool:
    """``C4 => C2 and C3`` for these parameters (vacuously true when C4 fails)."""
    v = evaluate_criteria(params)
    if not v["C4"].holds:
        return True
    return v["C2"].holds and v["C3"].holds


def weak_forms_imply_strong(params: GeneratorParams) -> bool:
    """Each weak criterion ``Wj`` implies its counterpart ``Cj`` (j = 1, 2, 3).

    The weak conditions bound the right hand sides of C1-C3 from above, so a
    parameter set meeting ``Wj`` also meets ``Cj``.
    """
    v = evaluate_criteria(params)
    for weak, strong in (("W1", "C1"), ("W2", "C2"), ("W3", "C3")):
        if v[weak].holds and not v[strong].holds:
            return False
    return True


# -- equality cases ----------------------------------------------------------

@dataclass(frozen=True)
class EqualityData:
    alpha1: float
    phi1: float
    alpha2: float
    phi2: float
    dA: float
    dB: float
    p_plus: np.ndarray
    p_minus: np.ndarray
    q_plus: np.ndarray
    q_minus: np.ndarray

    @property
    def b_multiplier(self) -> complex:
        """``B p_+ = mu p_-`` with ``mu = e^{-2i phi2 + 2i alpha2}``."""
        return complex(np.exp(-2j * self.phi2 + 2j * self.alpha2))


@dataclass(frozen=True)
class _Tangency:
    alpha: float
    phi: float
    cos_phi_minus_alpha: float
    d: float


def _tangency(s: float, t: float) -> _Tangency:
    ca, sa, m = _half_angle_cs(s, t)
    u, w = sa ** (1 / 3), ca ** (1 / 3)
    h = math.hypot(u, w)
    cphi, sphi = u / h, w / h
    d = (math.sqrt(2 * cphi * sa) + math.sqrt(2 * sphi * ca)) / math.sqrt(m)
    return _Tangency(math.atan2(sa, ca), math.atan2(w, u), cphi * ca + sphi * sa, d)


def tangency_angles(s: float, t: float) -> tuple[float, float, float]:
    """``(alpha, phi, d)`` for ``-s^2 + it = i r^2 e^{2i alpha}``.

    ``phi`` maximizes the distance along the meridian through o and ``d`` is
    the resulting ball radius.
    """
    tg = _tangency(s, t)
    return tg.alpha, tg.phi, tg.d


def equality_data(params: GeneratorParams) -> EqualityData:
    tg2, tg1 = _tangency(params.s2, params.t2), _tangency(params.s1, params.t1)
    a2, f2, dB = tg2.alpha, tg2.phi, tg2.d
    a1, f1, dA = tg1.alpha, tg1.phi, tg1.d
    th1, th2 = params.theta1, params.theta2

    c2 = math.sqrt(2 * tg2.cos_phi_minus_alpha)
    p_plus = np.array([-dB * dB * np.exp(-1j * f2 + 1j * a2),
                       dB * c2 * np.exp(-2j * f2 + 2j * a2 + 1j * th2), 1])
    p_minus = np.array([-dB * dB * np.exp(1j * f2 - 1j * a2),
                        -dB * c2 * np.exp(2j * f2 - 2j * a2 + 1j * th2), 1])

    c1 = math.sqrt(2 * tg1.cos_phi_minus_alpha)
    q_plus = np.array([-np.exp(1j * f1 - 1j * a1) / (dA * dA),
                       -c1 / dA * np.exp(-1j * f1 + 1j * a1 + 1j * th1), 1])
    q_minus = np.array([-np.exp(-1j * f1 + 1j * a1) / (dA * dA),
                        c1 / dA * np.exp(1j * f1 - 1j * a1 + 1j * th1), 1])
    return EqualityData(a1, f1, a2, f2, dA, dB, p_plus, p_minus, q_plus, q_minus)


@dataclass(frozen=True)
class Spectrum:
    """Closed-form characteristic data of a 3x3 matrix ``M``.

    ``char_coeffs = (c1, c2, c3)`` with characteristic polynomial
    ``x^3 - c1 x^2 + c2 x - c3``.
    """

    trace: complex
    char_coeffs: tuple[complex, complex, complex]
    eigenvalues: np.ndarray
    screw_defect: float
    screw_split: float
    unipotent_defect: float


def spectrum(M) -> Spectrum:
    M = np.asarray(M, dtype=np.complex128)
    c1 = complex(np.trace(M))
    c2 = complex((c1 * c1 - np.trace(M @ M)) / 2)
    c3 = complex(np.linalg.det(M))
    eig = np.roots([1, -c1, c2, -c3])
    # screw parabolic with angle pi: char poly (x + 1)^2 (x - 1) = x^3 + x^2 - x - 1
    screw_defect = max(abs(c1 + 1), abs(c2 + 1), abs(c3 - 1))
    screw_split = sup_norm((M + IDENTITY) @ (M - IDENTITY))
    N = M - IDENTITY
    unipotent_defect = sup_norm(N @ N @ N)
    return Spectrum(c1, (c1, c2, c3), eig, screw_defect, screw_split, unipotent_defect)


def classify_equality(params: GeneratorParams, tol: float = 1e-9) -> EqualityClass:
    """Which tangency case (if any) the parameters realize.

    Screw parabolic with angle pi: ``s1 = s2 = 0`` and ``t1 t2 = 4``.
    Unipotent: ``t1 = t2 = 0``, ``theta1 = theta2`` and ``s1 s2 = 4``.
    The answer is cross-checked against the spectrum of ``AB``.
    """
    p = params
    A, B = build_generators(p)
    if p.s1 == 0 and p.s2 == 0 and abs(p.t1 * p.t2 - 4) <= tol * (1 + abs(p.t1 * p.t2)):
        sp = spectrum(A @ B)
        if sp.screw_defect > 1e3 * tol or sp.screw_split <= tol:
            raise ArithmeticError("screw parabolic case failed its spectral check")
        return EqualityClass.SCREW_PARABOLIC_PI
    if (abs(p.t1) <= tol and abs(p.t2) <= tol and p.s1 != 0 and p.s2 != 0
            and abs(wrap_angle(p.theta1 - p.theta2)) <= tol
            and abs(p.s1 * p.s2 - 4) <= tol * (1 + p.s1 * p.s2)):
        sp = spectrum(A @ B)
        if abs(sp.trace - 3) > 1e3 * tol or sp.unipotent_defect > 1e3 * tol * (1 + p.s1 * p.s2) ** 3:
            raise ArithmeticError("unipotent case failed its spectral check")
        return EqualityClass.UNIPOTENT
    return EqualityClass.NONE
