"""Sampling verifier for ping-pong (Klein combination) configurations.

Regions of the boundary are described by a signed *margin*: positive in
the interior, zero on the bounding surface, negative outside. Closed
membership is ``margin >= -tol`` and interior membership ``margin > tol``.
A passing report is evidence, not proof; a failing report always carries a
concrete witness point.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .criteria import (
    GeneratorParams,
    ball_radius,
    build_generators,
    conjugate_by_iota,
    evaluate_criteria,
)
from .fans import InfiniteFan, Strip
from .heisenberg import (
    INFINITY,
    ORIGIN,
    BoundaryPoint,
    HeisPoint,
    PointCloud,
    standard_lift,
)
from .projlinalg import u21_inverse
from .spheres import CyganSphere, isometric_sphere

TOL = 1e-8


# -- regions -----------------------------------------------------------------

class Region:
    def margin(self, cloud: PointCloud) -> np.ndarray:
        raise NotImplementedError

    def point_margin(self, p: BoundaryPoint) -> float:
        return float(self.margin(PointCloud.from_points([p]))[0])

    def contains(self, p: BoundaryPoint, tol: float = TOL) -> bool:
        return self.point_margin(p) >= -tol

    def interior_contains(self, p: BoundaryPoint, tol: float = TOL) -> bool:
        return self.point_margin(p) > tol

    def shell(self, rng: np.random.Generator, n: int) -> PointCloud | None:
        """Points near the boundary of the region, for sampling."""
        return None

    def scale(self) -> float:
        return 1.0


@dataclass(frozen=True)
class CyganBallInterior(Region):
    sphere: CyganSphere

    def margin(self, cloud):
        return self.sphere.signed_margin(cloud)

    def shell(self, rng, n):
        return self.sphere.sample(rng, n, rng.uniform(0.8, 1.2, n))

    def scale(self):
        return self.sphere.radius + abs(self.sphere.center.zeta) + math.sqrt(abs(self.sphere.center.v))


@dataclass(frozen=True)
class CyganBallExterior(Region):
    sphere: CyganSphere

    def margin(self, cloud):
        return -self.sphere.signed_margin(cloud)

    def shell(self, rng, n):
        return CyganBallInterior(self.sphere).shell(rng, n)

    def scale(self):
        return CyganBallInterior(self.sphere).scale()


@dataclass(frozen=True)
class SlabViaProjection(Region):
    """Points whose vertical projection lies in the strip, plus infinity.

    Infinity is on the boundary: it lies in the closure but not the interior.
    """

    strip: Strip

    def margin(self, cloud):
        width = max(self.strip.hi - self.strip.lo, 1e-300)
        m = self.strip.margin(cloud.zeta) / width
        return np.where(cloud.inf, 0.0, m)

    def shell(self, rng, n):
        width = self.strip.hi - self.strip.lo
        side = np.where(rng.random(n) < 0.5, self.strip.lo, self.strip.hi)
        c = side + width * rng.uniform(-0.2, 0.2, n)
        L = self.scale()
        across = rng.uniform(-3 * L, 3 * L, n)
        zeta = (c + 1j * across) * np.exp(1j * self.strip.phi)
        return PointCloud.finite(zeta, rng.uniform(-9 * L * L, 9 * L * L, n))

    def scale(self):
        return max(abs(self.strip.lo), abs(self.strip.hi), self.strip.hi - self.strip.lo)


@dataclass(frozen=True)
class PullbackByIota(Region):
    """``{p : iota(p) in inner}``, i.e. the image of ``inner`` under iota."""

    inner: Region

    def margin(self, cloud):
        return self.inner.margin(cloud.iota())

    def shell(self, rng, n):
        s = self.inner.shell(rng, n)
        return None if s is None else s.iota()

    def scale(self):
        return 1.0 / self.inner.scale()


@dataclass(frozen=True)
class Intersection(Region):
    parts: tuple[Region, ...]

    def margin(self, cloud):
        return np.min([r.margin(cloud) for r in self.parts], axis=0)

    def shell(self, rng, n):
        return _shells(self.parts, rng, n)

    def scale(self):
        return max(r.scale() for r in self.parts)


def region_contains(R: Region, p: BoundaryPoint, tol: float = TOL) -> bool:
    """Closed membership of ``p`` (infinity included) in ``R``."""
    return R.contains(p, tol)


def _shells(regions: Sequence[Region], rng, n) -> PointCloud | None:
    clouds = [s for s in (r.shell(rng, max(1, n // len(regions))) for r in regions) if s is not None]
    if not clouds:
        return None
    out = clouds[0]
    for c in clouds[1:]:
        out = out.concat(c)
    return out


# -- surfaces for side pairings -----------------------------------------------

class Surface:
    def sample(self, rng: np.random.Generator, n: int) -> PointCloud:
        raise NotImplementedError

    def residual(self, cloud: PointCloud) -> np.ndarray:
        """Relative distance of each point from the surface."""
        raise NotImplementedError


@dataclass(frozen=True)
class SphereSurface(Surface):
    sphere: CyganSphere

    def sample(self, rng, n):
        return self.sphere.sample(rng, n)

    def residual(self, cloud):
        return np.abs(self.sphere.signed_margin(cloud))


@dataclass(frozen=True)
class FanSurface(Surface):
    fan: InfiniteFan
    extent: float

    def sample(self, rng, n):
        return self.fan.sample(rng, n, self.extent)

    def residual(self, cloud):
        off = np.abs(self.fan.signed_offset(cloud)) / max(self.extent, 1e-300)
        return np.where(cloud.inf, np.inf, off)


@dataclass(frozen=True)
class IotaSurface(Surface):
    inner: Surface

    def sample(self, rng, n):
        return self.inner.sample(rng, n).iota()

    def residual(self, cloud):
        return self.inner.residual(cloud.iota())


@dataclass(frozen=True)
class FundamentalDomain:
    """A fundamental domain for the cyclic group generated by ``generator``.

    ``pairings`` lists ``(source, target)`` surfaces of the boundary with
    ``generator(source) = target``.
    """

    name: str
    region: Region
    generator: np.ndarray
    pairings: tuple[tuple[Surface, Surface], ...] = ()

    def conjugated_by_iota(self, name: str) -> "FundamentalDomain":
        return FundamentalDomain(
            name, PullbackByIota(self.region), conjugate_by_iota(self.generator),
            tuple((IotaSurface(s), IotaSurface(t)) for s, t in self.pairings))


# -- reports -----------------------------------------------------------------

@dataclass
class HypothesisResult:
    passed: bool
    worst_margin: float
    witness: BoundaryPoint | None = None
    detail: str = ""


@dataclass
class VerifyReport:
    hypothesis_results: dict[str, HypothesisResult]
    samples_used: int
    seed: int
    info: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(h.passed for h in self.hypothesis_results.values())

    def failures(self) -> dict[str, HypothesisResult]:
        return {k: h for k, h in self.hypothesis_results.items() if not h.passed}


# -- sampling ----------------------------------------------------------------

def sample_boundary(rng: np.random.Generator, n: int, scale: float) -> PointCloud:
    """Half uniform in a Heisenberg box of size ``3 scale``, half iota-images
    of a box of size ``3 / scale`` (covering a neighbourhood of infinity)."""
    n_near = n // 2
    n_far = n - n_near

    def box(m, L):
        zeta = rng.uniform(-L, L, m) + 1j * rng.uniform(-L, L, m)
        return PointCloud.finite(zeta, rng.uniform(-L * L, L * L, m))

    near = box(n_near, 3 * scale)
    far = box(n_far, 3 / scale).iota()
    return near.concat(far)


def _cloud_for(regions: Sequence[Region], rng, n: int) -> PointCloud:
    scale = max(r.scale() for r in regions)
    n_shell = n // 2
    cloud = sample_boundary(rng, n - n_shell, scale)
    shell = _shells(regions, rng, n_shell)
    if shell is not None:
        cloud = cloud.concat(shell)
    extra = PointCloud.from_points([ORIGIN, INFINITY])
    return cloud.concat(extra)


def _check_pairings(domain: FundamentalDomain, rng, n: int, tol: float) -> HypothesisResult:
    worst, witness = 0.0, None
    for src, dst in domain.pairings:
        pts = src.sample(rng, n)
        res = dst.residual(pts.act(domain.generator))
        k = int(np.argmax(res))
        if res[k] > worst:
            worst, witness = float(res[k]), pts.point(k)
    return HypothesisResult(worst <= tol, -worst, witness if worst > tol else None,
                            f"{len(domain.pairings)} side pairing(s)")


def _check_translates(domain: FundamentalDomain, cloud: PointCloud, tol: float) -> HypothesisResult:
    """Interior points of the domain must leave the interior under g and g^{-1}."""
    m = domain.region.margin(cloud)
    inside = cloud.take(m > tol)
    worst, witness = -np.inf, None
    if len(inside):
        for g in (domain.generator, u21_inverse(domain.generator)):
            mi = domain.region.margin(inside.act(g))
            k = int(np.argmax(mi))
            if mi[k] > worst:
                worst, witness = float(mi[k]), inside.point(k)
    passed = worst <= tol
    return HypothesisResult(passed, -worst, None if passed else witness,
                            f"{len(inside)} interior samples")


def verify_klein(D_A: FundamentalDomain, D_B: FundamentalDomain, A=None, B=None,
                 n: int = 10_000, seed: int = 0, tol: float = TOL) -> VerifyReport:
    """Check the two-domain combination hypotheses on seeded samples.

    * ``cover``: every sample lies in the closure of ``D_A`` or ``D_B``;
    * ``overlap``: some sample lies in both interiors;
    * ``pairing_A``/``pairing_B``: side pairings map onto their partners;
    * ``translates_A``/``translates_B``: interior samples leave the domain
      under the generator and its inverse.
    """
    if n < 100:
        raise ValueError("need at least 100 samples")
    if A is not None:
        D_A = FundamentalDomain(D_A.name, D_A.region, np.asarray(A), D_A.pairings)
    if B is not None:
        D_B = FundamentalDomain(D_B.name, D_B.region, np.asarray(B), D_B.pairings)
    rng = np.random.default_rng(seed)
    cloud = _cloud_for([D_A.region, D_B.region], rng, n)
    mA = D_A.region.margin(cloud)
    mB = D_B.region.margin(cloud)

    covered = np.maximum(mA, mB)
    k = int(np.argmin(covered))
    cover = HypothesisResult(bool(covered[k] >= -tol), float(covered[k]),
                             cloud.point(k) if covered[k] < -tol else None)

    both = np.minimum(mA, mB)
    k = int(np.argmax(both))
    overlap = HypothesisResult(bool(both[k] > tol), float(both[k]), cloud.point(k))

    n_pair = max(100, n // 10)
    results = {
        "cover": cover,
        "overlap": overlap,
        "pairing_A": _check_pairings(D_A, rng, n_pair, tol),
        "pairing_B": _check_pairings(D_B, rng, n_pair, tol),
        "translates_A": _check_translates(D_A, cloud, tol),
        "translates_B": _check_translates(D_B, cloud, tol),
    }
    return VerifyReport(results, len(cloud), seed, {"D_A": D_A.name, "D_B": D_B.name})


@dataclass(frozen=True)
class FourSpheres:
    """Interiors of the spheres ``S_A+, S_A-, S_B+, S_B-``.

    ``A`` maps the exterior of ``S_A-`` onto the interior of ``S_A+`` and
    ``B`` the exterior of ``S_B-`` onto the interior of ``S_B+``.
    """

    a_plus: Region
    a_minus: Region
    b_plus: Region
    b_minus: Region

    def named(self) -> dict[str, Region]:
        return {"A+": self.a_plus, "A-": self.a_minus, "B+": self.b_plus, "B-": self.b_minus}

    def for_letter(self, letter: str) -> Region:
        return {"A": self.a_plus, "a": self.a_minus, "B": self.b_plus, "b": self.b_minus}[letter]


def verify_four_spheres(S_A_plus: Region, S_A_minus: Region, S_B_plus: Region,
                        S_B_minus: Region, A, B, n: int = 10_000, seed: int = 0,
                        tol: float = TOL) -> VerifyReport:
    """Check disjointness of the four interiors and the four mapping contracts."""
    if n < 100:
        raise ValueError("need at least 100 samples")
    spheres = FourSpheres(S_A_plus, S_A_minus, S_B_plus, S_B_minus).named()
    rng = np.random.default_rng(seed)
    cloud = _cloud_for(list(spheres.values()), rng, n)
    margins = {k: r.margin(cloud) for k, r in spheres.items()}
    results: dict[str, HypothesisResult] = {}

    for a, b in itertools.combinations(spheres, 2):
        both = np.minimum(margins[a], margins[b])
        k = int(np.argmax(both))
        bad = both[k] > tol
        results[f"disjoint {a} {b}"] = HypothesisResult(not bad, float(-both[k]),
                                                        cloud.point(k) if bad else None)

    A = np.asarray(A, dtype=np.complex128)
    B = np.asarray(B, dtype=np.complex128)
    contracts = (("A", A, "A-", "A+"), ("A^-1", u21_inverse(A), "A+", "A-"),
                 ("B", B, "B-", "B+"), ("B^-1", u21_inverse(B), "B+", "B-"))
    for name, g, src, dst in contracts:
        outside = cloud.take(margins[src] < -tol)
        img = spheres[dst].margin(outside.act(g))
        if len(img) == 0:
            results[f"maps {name}"] = HypothesisResult(False, -np.inf, None, "no exterior samples")
            continue
        k = int(np.argmin(img))
        bad = img[k] < -tol
        results[f"maps {name}"] = HypothesisResult(not bad, float(img[k]),
                                                   outside.point(k) if bad else None,
                                                   f"{len(outside)} exterior samples")
    return VerifyReport(results, len(cloud), seed)


# -- reduced words -------------------------------------------------------------

INVERSE_LETTER = {"A": "a", "a": "A", "B": "b", "b": "B"}


@dataclass(frozen=True)
class ReducedWord:
    """Word in ``A, a = A^-1, B, b = B^-1``; the leftmost letter is applied last."""

    letters: str

    def __post_init__(self):
        if any(c not in INVERSE_LETTER for c in self.letters):
            raise ValueError(f"letters must be among A, a, B, b: {self.letters!r}")
        for x, y in zip(self.letters, self.letters[1:]):
            if INVERSE_LETTER[x] == y:
                raise ValueError(f"word {self.letters!r} is not reduced")

    def __len__(self):
        return len(self.letters)

    def matrix(self, A, B) -> np.ndarray:
        mats = {"A": A, "a": u21_inverse(A), "B": B, "b": u21_inverse(B)}
        out = np.eye(3, dtype=np.complex128)
        for c in self.letters:
            out = out @ mats[c]
        return out


def reduced_words(max_len: int):
    """All nonempty reduced words up to ``max_len``, shortest first."""
    level = [""]
    for _ in range(max_len):
        nxt = []
        for w in level:
            for c in "AaBb":
                if w and INVERSE_LETTER[c] == w[0]:
                    continue
                nxt.append(c + w)
        yield from (ReducedWord(w) for w in nxt)
        level = nxt


def find_basepoint(spheres: FourSpheres, seed: int = 0, n: int = 20_000) -> BoundaryPoint:
    """A sample point deepest inside the common exterior of the four spheres."""
    regions = list(spheres.named().values())
    rng = np.random.default_rng(seed)
    cloud = _cloud_for(regions, rng, n)
    depth = np.min([-r.margin(cloud) for r in regions], axis=0)
    depth[cloud.inf] = -np.inf
    return cloud.point(int(np.argmax(depth)))


def word_nesting_test(params: GeneratorParams, regions: FourSpheres, max_len: int,
                      basepoint: BoundaryPoint | None = None, seed: int = 0,
                      tol: float = TOL) -> VerifyReport:
    """Each reduced word must move the basepoint into the interior attached to
    its last-applied (leftmost) letter."""
    if max_len < 1:
        raise ValueError("max_len must be at least 1")
    if basepoint is None:
        basepoint = find_basepoint(regions, seed)
    for name, r in regions.named().items():
        if r.point_margin(basepoint) >= -tol:
            raise ValueError(f"basepoint is not in the common exterior (meets {name})")

    A, B = build_generators(params)
    mats = {"A": A, "a": u21_inverse(A), "B": B, "b": u21_inverse(B)}
    checked = 0
    worst, witness, first_bad = np.inf, None, None
    # depth-first over reduced words, applying each new letter on the left
    stack = [("", standard_lift(basepoint))]
    while stack:
        word, z = stack.pop()
        if len(word) == max_len:
            continue
        for c in "AaBb":
            if word and INVERSE_LETTER[c] == word[0]:
                continue
            w = mats[c] @ z
            w = w / w[np.argmax(np.abs(w))]
            new = c + word
            img = PointCloud.from_points([_point_from_vector(w)])
            m = float(regions.for_letter(c).margin(img)[0])
            checked += 1
            if m < worst:
                worst = m
            if m <= tol and first_bad is None:
                first_bad, witness = new, img.point(0)
            stack.append((new, w))
    expected = sum(4 * 3 ** (k - 1) for k in range(1, max_len + 1))
    result = HypothesisResult(first_bad is None and checked == expected, float(worst), witness,
                              f"{checked} words" + (f"; first violation {first_bad}" if first_bad else ""))
    return VerifyReport({"nesting": result}, checked, seed,
                        {"basepoint": basepoint, "words": checked, "first_violation": first_bad})


def _point_from_vector(w) -> BoundaryPoint:
    if abs(w[2]) <= 1e-14 * np.max(np.abs(w)):
        return INFINITY
    return HeisPoint(w[1] / (math.sqrt(2) * w[2]), (w[0] / w[2]).imag)


# -- constructions -------------------------------------------------------------

def _isometric_pair(M) -> tuple[CyganSphere, CyganSphere]:
    return isometric_sphere(M), isometric_sphere(u21_inverse(M))


def four_spheres(params: GeneratorParams) -> FourSpheres:
    """Isometric spheres of ``B, B^-1`` and iota-images of those of ``iota A iota``."""
    A, B = build_generators(params)
    IB, IBinv = _isometric_pair(B)
    IA, IAinv = _isometric_pair(conjugate_by_iota(A))
    return FourSpheres(a_plus=PullbackByIota(CyganBallInterior(IAinv)),
                       a_minus=PullbackByIota(CyganBallInterior(IA)),
                       b_plus=CyganBallInterior(IBinv),
                       b_minus=CyganBallInterior(IB))


def _sphere_domain(name, M) -> FundamentalDomain:
    S, Sinv = _isometric_pair(M)
    region = Intersection((CyganBallExterior(S), CyganBallExterior(Sinv)))
    return FundamentalDomain(name, region, M, ((SphereSurface(S), SphereSurface(Sinv)),))


def condition1_domains(params: GeneratorParams) -> tuple[FundamentalDomain, FundamentalDomain]:
    """Domains bounded by isometric spheres (and their iota-images for ``A``)."""
    A, B = build_generators(params)
    D_B = _sphere_domain("exterior of I_B and I_B^-1", B)
    D_A = _sphere_domain("", conjugate_by_iota(A)).conjugated_by_iota(
        "iota-image of the exterior of I_iAi and I_iA^-1i")
    return D_A, D_B


def ball_domains(params: GeneratorParams) -> tuple[FundamentalDomain, FundamentalDomain]:
    """Cygan balls about o of radii ``1/d_A`` and ``d_B`` (regions only, no pairings)."""
    A, B = build_generators(params)
    dA = ball_radius(params.s1, params.t1)
    dB = ball_radius(params.s2, params.t2)
    return (FundamentalDomain("ball of radius 1/d_A", CyganBallInterior(CyganSphere(ORIGIN, 1 / dA)), A),
            FundamentalDomain("exterior of ball of radius d_B", CyganBallExterior(CyganSphere(ORIGIN, dB)), B))


def _projection_range(spheres: Sequence[CyganSphere], phi: float) -> tuple[float, float]:
    coords = [(s.center.zeta * complex(math.cos(phi), -math.sin(phi))).real for s in spheres]
    r = max(s.radius for s in spheres)
    return min(coords) - r, max(coords) + r


def condition2_domains(params: GeneratorParams) -> tuple[FundamentalDomain, FundamentalDomain]:
    """Slab between two infinite fans for ``A``; isometric spheres for ``B``."""
    if params.s1 == 0:
        raise ValueError("condition (2) needs s1 != 0")
    A, B = build_generators(params)
    D_B = _sphere_domain("exterior of I_B and I_B^-1", B)
    lo, hi = _projection_range(_isometric_pair(B), params.theta1)
    k = 0.5 * (lo + hi) - 0.5 * params.s1
    extent = max(params.s1, hi - lo, 1.0)
    strip = Strip(params.theta1, k, k + params.s1)
    D_A = FundamentalDomain(
        "slab between fans", SlabViaProjection(strip), A,
        ((FanSurface(InfiniteFan(k, params.theta1), extent),
          FanSurface(InfiniteFan(k + params.s1, params.theta1), extent)),))
    return D_A, D_B


def condition3_domains(params: GeneratorParams) -> tuple[FundamentalDomain, FundamentalDomain]:
    """Condition (2) for ``(iota B iota, iota A iota)``, moved back by iota."""
    if params.s2 == 0:
        raise ValueError("condition (3) needs s2 != 0")
    D_Ap, D_Bp = condition2_domains(params.swapped())
    return (D_Bp.conjugated_by_iota("iota-image of " + D_Bp.name),
            D_Ap.conjugated_by_iota("iota-image of " + D_Ap.name))


def condition4_domains(params: GeneratorParams) -> tuple[FundamentalDomain, FundamentalDomain]:
    """Slab of infinite fans for ``A``; iota-image of a slab (finite fans) for ``B``."""
    if params.s1 == 0 or params.s2 == 0:
        raise ValueError("condition (4) needs s1, s2 != 0")
    A, B = build_generators(params)
    h1, h2 = params.s1 / 2, params.s2 / 2
    ext1, ext2 = max(params.s1, 1.0), max(params.s2, 1.0)
    D_A = FundamentalDomain(
        "slab between infinite fans", SlabViaProjection(Strip(params.theta1, -h1, h1)), A,
        ((FanSurface(InfiniteFan(-h1, params.theta1), ext1),
          FanSurface(InfiniteFan(h1, params.theta1), ext1)),))
    iBi = conjugate_by_iota(B)
    D_iBi = FundamentalDomain(
        "", SlabViaProjection(Strip(params.theta2, -h2, h2)), iBi,
        ((FanSurface(InfiniteFan(-h2, params.theta2), ext2),
          FanSurface(InfiniteFan(h2, params.theta2), ext2)),))
    return D_A, D_iBi.conjugated_by_iota("exterior of finite fans")


CONSTRUCTIONS = {
    "C1": condition1_domains,
    "C2": condition2_domains,
    "C3": condition3_domains,
    "C4": condition4_domains,
    "balls": ball_domains,
}


def auto_construction(params: GeneratorParams) -> str:
    """First of C1-C4 that holds for ``params``, falling back to C1."""
    verdict = evaluate_criteria(params)
    for cid in ("C1", "C2", "C3", "C4"):
        if verdict[cid].holds:
            return cid
    return "C1"
