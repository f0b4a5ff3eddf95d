import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import generator_params, random_params, random_word_matrix
from twoparabolic.criteria import build_generators, generator_A, generator_B
from twoparabolic.heisenberg import (
    INFINITY,
    ORIGIN,
    HeisPoint,
    PointCloud,
    apply_boundary,
    cygan_distance,
)
from twoparabolic.projlinalg import entries, u21_inverse
from twoparabolic.spheres import (
    CyganSphere,
    Side,
    geographic_coords,
    geographic_point,
    image_of_infinity,
    isometric_sphere,
    sphere_point,
    sphere_side,
)


def test_isometric_sphere_of_vertical_B():
    S = isometric_sphere(generator_B(0, 4, 0))
    assert S.radius == pytest.approx(0.5)
    assert abs(S.center.zeta) < 1e-15 and S.center.v == pytest.approx(0.25)


@given(generator_params())
def test_isometric_sphere_of_B_general(p):
    _, B = build_generators(p)
    S = isometric_sphere(B)
    w = complex(p.s2 ** 2, p.t2)
    assert S.radius == pytest.approx(abs(w) ** -0.5, rel=1e-12)
    expected = p.s2 * np.exp(1j * p.theta2) / w
    assert abs(S.center.zeta - expected) <= 1e-12 * (1 + abs(expected))
    assert S.center.v == pytest.approx(p.t2 / abs(w) ** 2, rel=1e-12, abs=1e-14)


def test_isometric_sphere_rejects_matrix_fixing_infinity():
    with pytest.raises(ValueError):
        isometric_sphere(generator_A(1, 1, 0))
    assert image_of_infinity(generator_A(1, 1, 0)) is INFINITY


def test_sphere_radius_must_be_positive():
    with pytest.raises(ValueError):
        CyganSphere(ORIGIN, 0.0)


def test_sphere_side_examples():
    S = CyganSphere(ORIGIN, 1.0)
    assert sphere_side(S, ORIGIN) is Side.INTERIOR
    assert sphere_side(S, INFINITY) is Side.EXTERIOR
    assert sphere_side(S, HeisPoint(0, 1.0)) is Side.BOUNDARY
    assert sphere_side(isometric_sphere(generator_B(0, 4, 0)), ORIGIN) is Side.BOUNDARY


def test_geographic_point_examples():
    r = 1.7
    north = geographic_point(r, 0, 0)
    south = geographic_point(r, math.pi / 2, 0)
    assert abs(north.zeta) < 1e-15 and north.v == pytest.approx(r * r)
    assert abs(south.zeta) < 1e-7 and south.v == pytest.approx(-r * r)
    eq = geographic_point(1, math.pi / 4, 0)
    assert abs(eq.zeta - np.exp(1j * math.pi / 4)) < 1e-15 and abs(eq.v) < 1e-15
    assert cygan_distance(eq, ORIGIN) == pytest.approx(1.0)


@given(st.floats(0.01, 50), st.floats(0, math.pi / 2), st.floats(0, 2 * math.pi))
def test_geographic_points_lie_on_sphere(r, alpha, beta):
    assert cygan_distance(geographic_point(r, alpha, beta), ORIGIN) == pytest.approx(r, rel=1e-12)


@given(st.floats(0.1, 10), st.floats(0.001, math.pi / 2 - 0.001), st.floats(0, 2 * math.pi - 1e-6))
def test_geographic_chart_inverts(r, alpha, beta):
    r2, a2, b2 = geographic_coords(geographic_point(r, alpha, beta))
    assert r2 == pytest.approx(r, rel=1e-12)
    assert a2 == pytest.approx(alpha, abs=1e-9)
    assert abs(math.remainder(b2 - beta, 2 * math.pi)) <= 1e-9


def test_geographic_chart_poles_and_centre():
    assert geographic_coords(HeisPoint(0, 4))[1:] == (0.0, 0.0)
    with pytest.raises(ValueError):
        geographic_coords(ORIGIN)


def test_geographic_coverage_of_random_points(rng):
    c = HeisPoint(0.5 - 0.2j, 1.5)
    for _ in range(200):
        p = HeisPoint(complex(*rng.normal(size=2)), rng.normal())
        r, a, b = geographic_coords(p, c)
        q = sphere_point(CyganSphere(c, r), a, b)
        assert abs(q.zeta - p.zeta) <= 1e-9 and abs(q.v - p.v) <= 1e-9


def test_inversion_law_random_words(rng):
    checked = 0
    while checked < 300:
        P = random_word_matrix(rng, random_params(rng, 2, 2), int(rng.integers(1, 5)))
        if abs(entries(P).g) < 1e-6:
            continue
        S = isometric_sphere(P)
        z = HeisPoint(complex(*rng.normal(size=2)), rng.normal())
        Pz = apply_boundary(P, z)
        if Pz is INFINITY or cygan_distance(z, S.center) < 1e-6:
            continue
        lhs = cygan_distance(Pz, image_of_infinity(P)) * cygan_distance(z, S.center)
        assert lhs == pytest.approx(S.radius ** 2, rel=1e-9)
        checked += 1


def test_isometric_sphere_exchange(rng):
    for _ in range(20):
        P = random_word_matrix(rng, random_params(rng, 2, 2), 3)
        if abs(entries(P).g) < 1e-6:
            continue
        S, T = isometric_sphere(P), isometric_sphere(u21_inverse(P))
        assert S.radius == pytest.approx(T.radius, rel=1e-12)
        on = S.sample(rng, 200)
        img = on.act(P)
        assert np.allclose(img.distance_to(T.center), T.radius, rtol=1e-9)
        out = S.sample(rng, 200, rng.uniform(1.01, 5, 200)).act(P)
        assert np.all(T.signed_margin(out) > 0)


def test_signed_margin_signs():
    S = CyganSphere(HeisPoint(1, 1), 2.0)
    cloud = PointCloud.from_points([HeisPoint(1, 1), INFINITY, sphere_point(S, 0.3, 1.0)])
    m = S.signed_margin(cloud)
    assert m[0] == 1 and m[1] == -math.inf and abs(m[2]) < 1e-12
