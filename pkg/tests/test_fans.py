import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import generator_params, strip_extent
from twoparabolic.criteria import build_generators
from twoparabolic.fans import (
    Cardioid,
    FiniteFan,
    InfiniteFan,
    Strip,
    cardioid_contains,
    cardioid_expression,
    cardioid_radius,
    cardioid_strip_halfwidth,
    cardioid_support_angle,
    fan_strip_extreme_lifts,
    fan_strip_extreme_points,
    fan_translate_by_A,
    finite_fan_jacobian,
    finite_fan_point,
    fold_curve_b,
    infinite_fan_point,
    invert_finite_fan,
    projection_jacobian,
)
from twoparabolic.heisenberg import ORIGIN, HeisPoint, iota_boundary
from twoparabolic.projlinalg import Signature, classify_vector

ks = st.floats(0.05, 20)
coords = st.floats(-10, 10)


def test_infinite_fan_point_examples():
    assert infinite_fan_point(InfiniteFan(0, 0), 0, 0) == ORIGIN
    p = infinite_fan_point(InfiniteFan(1, 0), 1, 0)
    assert p.zeta == pytest.approx(1 + 1j) and p.v == pytest.approx(-2)


@given(st.floats(-5, 5), st.floats(-math.pi, math.pi), coords, coords)
def test_infinite_fan_projects_to_line(k, phi, a, b):
    p = infinite_fan_point(InfiniteFan(k, phi), a, b)
    assert (p.zeta * np.exp(-1j * phi)).real == pytest.approx(k, abs=1e-12 * (1 + abs(a) + abs(k)))


def test_fan_translate_examples():
    from twoparabolic.criteria import GeneratorParams
    p = GeneratorParams(3, 1.5, 0.4, 1, 1, 0)
    assert fan_translate_by_A(InfiniteFan(-1.5, 0.4), p).k == pytest.approx(1.5)
    q = GeneratorParams(0, 2, 0, 1, 1, 0)
    assert fan_translate_by_A(InfiniteFan(0.7, 1.0), q) == InfiniteFan(0.7, 1.0)
    with pytest.raises(ValueError):
        fan_translate_by_A(InfiniteFan(0, 0.0), p)


@given(generator_params(), st.floats(-3, 3))
def test_A_pushes_fans_forward(p, k):
    A, _ = build_generators(p)
    F = InfiniteFan(k, p.theta1)
    G = fan_translate_by_A(F, p)
    rng = np.random.default_rng(0)
    img = F.sample(rng, 50, 3.0).act(A)
    scale = 1 + abs(k) + p.s1 + abs(p.t1)
    assert np.all(np.abs(G.signed_offset(img)) <= 1e-10 * scale ** 2)


def test_finite_fan_examples():
    p = finite_fan_point(1, 0, 0)
    assert p.zeta == pytest.approx(-1) and abs(p.v) < 1e-15
    with pytest.raises(ValueError):
        FiniteFan(0)


@given(st.floats(-5, 5).filter(lambda k: abs(k) > 0.05), coords, coords)
def test_finite_fan_is_iota_image(k, a, b):
    p = finite_fan_point(k, a, b)
    q = iota_boundary(infinite_fan_point(InfiniteFan(k, 0), a, b))
    assert abs(p.zeta - q.zeta) <= 1e-12 * (1 + abs(p.zeta)) and p.v == pytest.approx(q.v, abs=1e-12)
    back = iota_boundary(p)
    f = infinite_fan_point(InfiniteFan(k, 0), a, b)
    assert abs(back.zeta - f.zeta) <= 1e-8 * (1 + abs(f.zeta)) and back.v == pytest.approx(f.v, rel=1e-8, abs=1e-8)


def test_cardioid_radius_examples():
    assert cardioid_radius(Cardioid(1, 1), 0) == 0
    assert cardioid_radius(Cardioid(1, 1), math.pi) == pytest.approx(1)
    assert cardioid_radius(Cardioid(2, -1), 0) == pytest.approx(0.5)
    with pytest.raises(ValueError):
        Cardioid(-1)
    with pytest.raises(ValueError):
        Cardioid(1, 0)


def test_cardioid_contains_examples():
    k = 1.7
    C = Cardioid(k, 1)
    assert cardioid_contains(C, 0.0, 0.0)
    assert cardioid_contains(C, -1 / (2 * k), 0.0)
    assert not cardioid_contains(C, 1 / k, 0.0)


def test_cardioid_polar_and_cartesian_agree(rng):
    for sign in (1, -1):
        C = Cardioid(0.8, sign)
        theta = rng.uniform(0, 2 * math.pi, 1000)
        z = C.radius(theta) * np.exp(1j * theta)
        assert np.all(np.abs(cardioid_expression(C, z.real, z.imag)) <= 1e-12)
        inside = 0.98 * z
        outside = 1.02 * z
        keep = np.abs(z) > 1e-3
        assert np.all(cardioid_contains(C, inside.real[keep], inside.imag[keep]))
        assert not np.any(cardioid_contains(C, outside.real[keep], outside.imag[keep], tol=0))


def test_finite_fan_projection_fills_cardioid(rng):
    for k in (0.3, 1.0, 4.0):
        C = Cardioid(k, 1)
        a = rng.uniform(-20, 20, 10_000) * k
        b = rng.uniform(-400, 400, 10_000) * k * k
        pts = [finite_fan_point(k, x, y) for x, y in zip(a, b)]
        x = np.array([p.zeta.real for p in pts])
        y = np.array([p.zeta.imag for p in pts])
        assert np.all(cardioid_contains(C, x, y, tol=1e-9))


def test_points_outside_cardioid_are_not_hit(rng):
    k = 1.0
    C = Cardioid(k, 1)
    a, b = np.meshgrid(np.linspace(-30, 30, 601), np.linspace(-300, 300, 601))
    pts = [finite_fan_point(k, x, y) for x, y in zip(a.ravel(), b.ravel())]
    hit = np.array([p.zeta for p in pts])
    theta = rng.uniform(0, 2 * math.pi, 50)
    outside = 1.1 * C.radius(theta) * np.exp(1j * theta) + 0.02 * np.exp(1j * theta)
    for z in outside:
        assert np.min(np.abs(hit - z)) > 1e-3


def test_jacobian_matches_finite_differences(rng):
    for _ in range(50):
        k, a, b = rng.uniform(0.3, 2), rng.normal(), rng.normal()
        J = finite_fan_jacobian(k, a, b)
        h = 1e-6
        for j, (da, db) in enumerate(((h, 0), (0, h))):
            p1, p0 = finite_fan_point(k, a + da, b + db), finite_fan_point(k, a - da, b - db)
            fd = np.array([p1.zeta.real - p0.zeta.real, p1.zeta.imag - p0.zeta.imag, p1.v - p0.v]) / (2 * h)
            assert np.allclose(J[:, j], fd, atol=1e-6)
        assert projection_jacobian(k, a, b) == pytest.approx(np.linalg.det(J[:2]), rel=1e-9, abs=1e-12)


@given(st.floats(0.1, 5), st.floats(-5, 5))
def test_fold_curve_maps_to_cardioid_boundary(k, a):
    b = fold_curve_b(k, a)
    # the determinant carries 1/D^2, so compare its numerator -aP + kQ to the size of its terms
    P, Q = k * k + a * a, b - 2 * k * a
    D = P * P + Q * Q
    assert abs(projection_jacobian(k, a, b)) * D * D <= 1e-12 * (abs(a) * P + k * abs(Q))
    p = finite_fan_point(k, a, b)
    x, y = p.zeta.real, p.zeta.imag
    r2 = x * x + y * y
    scale = y * y + 4 * k * abs(x) * r2 + 4 * k * k * r2 * r2
    assert abs(cardioid_expression(Cardioid(k, 1), x, y)) <= 1e-12 * scale


def test_strip_halfwidth_examples():
    assert cardioid_strip_halfwidth(1, 0) == 1
    assert cardioid_strip_halfwidth(1, math.pi / 2) == pytest.approx(3 * math.sqrt(3) / 8)
    assert cardioid_strip_halfwidth(1, math.pi / 2) == pytest.approx(strip_extent(1, math.pi / 2), abs=1e-9)
    with pytest.raises(ValueError):
        cardioid_strip_halfwidth(1, 2.0)
    with pytest.raises(ValueError):
        cardioid_strip_halfwidth(0, 0.0)


@pytest.mark.parametrize("phi", [0.0, 0.4, -1.2, math.pi / 2])
def test_support_angle_is_maximizer(phi):
    k = 1.3
    t = cardioid_support_angle(phi, 1)
    C = Cardioid(k, 1)
    assert abs(C.radius(t) * math.cos(t - phi)) == pytest.approx(cardioid_strip_halfwidth(k, phi), rel=1e-12)


@given(st.floats(0.1, 10), st.floats(-math.pi / 2, math.pi / 2))
def test_extreme_points_on_strip_boundary(k, phi):
    lo, hi = fan_strip_extreme_lifts(k, phi)
    assert classify_vector(lo) is Signature.NULL and classify_vector(hi) is Signature.NULL
    w = cardioid_strip_halfwidth(k, phi)
    for p, sign in zip(fan_strip_extreme_points(k, phi), (-1, 1)):
        assert (p.zeta * np.exp(-1j * phi)).real == pytest.approx(sign * w, rel=1e-12)


def test_extreme_points_at_phi_zero():
    lo, hi = fan_strip_extreme_lifts(1.0, 0.0)
    assert np.allclose(lo, [-1, -math.sqrt(2), 1]) and np.allclose(hi, [-1, math.sqrt(2), 1])
    p, q = fan_strip_extreme_points(1.0, 0.0)
    assert p.zeta == pytest.approx(-1) and q.zeta == pytest.approx(1)


def test_extreme_points_lie_on_finite_fans(rng):
    for _ in range(20):
        k, phi = rng.uniform(0.2, 5), rng.uniform(-math.pi / 2, math.pi / 2)
        p_lo, p_hi = fan_strip_extreme_points(k, phi)
        for target, kk in ((p_lo, k), (p_hi, -k)):
            sol = invert_finite_fan(kk, target)
            assert sol.residual <= 1e-8 * (1 + 1 / k ** 2)
        assert invert_finite_fan(k, p_lo).a == pytest.approx(k * math.tan(phi / 3), rel=1e-6, abs=1e-8)


def test_strip_margin_and_membership():
    S = Strip(0.0, -1.0, 1.0)
    z = np.array([0.0, 2.0, 1.0, -0.5 + 3j])
    assert list(S.contains(z)) == [True, False, True, True]
    assert np.allclose(S.margin(z), [1, -1, 0, 0.5])
    with pytest.raises(ValueError):
        Strip(0, 1, -1)


def test_infinite_fan_offset_is_nan_at_infinity():
    from twoparabolic.heisenberg import INFINITY, PointCloud
    off = InfiniteFan(1, 0).signed_offset(PointCloud.from_points([INFINITY, HeisPoint(3, 0)]))
    assert math.isnan(off[0]) and off[1] == pytest.approx(2)
