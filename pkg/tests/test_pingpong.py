import math

import numpy as np
import pytest

from conftest import random_params
from twoparabolic.criteria import GeneratorParams, build_generators, evaluate_criteria
from twoparabolic.fans import Strip
from twoparabolic.heisenberg import INFINITY, ORIGIN, HeisPoint, apply_boundary
from twoparabolic.pingpong import (
    CONSTRUCTIONS,
    CyganBallExterior,
    CyganBallInterior,
    Intersection,
    PullbackByIota,
    ReducedWord,
    SlabViaProjection,
    auto_construction,
    ball_domains,
    condition2_domains,
    find_basepoint,
    four_spheres,
    reduced_words,
    region_contains,
    verify_four_spheres,
    verify_klein,
    word_nesting_test,
)
from twoparabolic.projlinalg import u21_inverse
from twoparabolic.spheres import CyganSphere


def P(s1, t1, s2, t2, th1=0.0, th2=0.0):
    return GeneratorParams(s1, t1, th1, s2, t2, th2)


def verify_spheres(params, n=10_000, seed=0):
    A, B = build_generators(params)
    S = four_spheres(params)
    return verify_four_spheres(S.a_plus, S.a_minus, S.b_plus, S.b_minus, A, B, n=n, seed=seed)


def test_region_contains_examples():
    assert region_contains(CyganBallExterior(CyganSphere(ORIGIN, 1.0)), INFINITY)
    assert not region_contains(CyganBallInterior(CyganSphere(ORIGIN, 1.0)), INFINITY)
    slab = SlabViaProjection(Strip(0.0, -1.0, 1.0))
    assert not region_contains(slab, HeisPoint(2, 0))
    assert region_contains(slab, INFINITY) and not slab.interior_contains(INFINITY)
    s2 = 1.5
    assert region_contains(PullbackByIota(SlabViaProjection(Strip(0.0, -s2 / 2, s2 / 2))), ORIGIN)


def test_region_complements_and_intersections():
    S = CyganSphere(HeisPoint(1j, 0.5), 0.7)
    inside, outside = CyganBallInterior(S), CyganBallExterior(S)
    p = HeisPoint(1j, 0.5)
    assert inside.interior_contains(p) and not outside.contains(p)
    both = Intersection((outside, CyganBallExterior(CyganSphere(ORIGIN, 0.1))))
    assert both.contains(INFINITY) and not both.contains(ORIGIN)


def test_pullback_matches_iota_image():
    S = CyganSphere(HeisPoint(0.3, 0.2), 0.5)
    R = PullbackByIota(CyganBallInterior(S))
    from twoparabolic.heisenberg import iota_boundary
    for q in (HeisPoint(0.3, 0.2), HeisPoint(0.1 + 0.2j, 0.25)):
        assert R.contains(iota_boundary(q)) == CyganBallInterior(S).contains(q)


def test_reduced_words():
    assert ReducedWord("ABab").letters == "ABab"
    with pytest.raises(ValueError):
        ReducedWord("Aa")
    with pytest.raises(ValueError):
        ReducedWord("AX")
    words = list(reduced_words(4))
    assert [sum(len(w) == k for w in words) for k in (1, 2, 3, 4)] == [4, 12, 36, 108]
    assert len({w.letters for w in words}) == 160
    A, B = build_generators(P(1, 1, 1, 1))
    assert np.allclose(ReducedWord("Ab").matrix(A, B), A @ u21_inverse(B))


def test_klein_balls_pass_and_fail():
    A, B = build_generators(P(0, 3, 0, 3))
    D_A, D_B = ball_domains(P(0, 3, 0, 3))
    report = verify_klein(D_A, D_B, A, B, n=10_000, seed=1)
    assert report.passed and report.seed == 1 and report.samples_used >= 10_000
    A, B = build_generators(P(0, 1, 0, 1))
    D_A, D_B = ball_domains(P(0, 1, 0, 1))
    report = verify_klein(D_A, D_B, A, B, n=10_000, seed=1)
    cover = report.hypothesis_results["cover"]
    assert not cover.passed and cover.witness is not None
    w = cover.witness
    assert not D_A.region.contains(w) and not D_B.region.contains(w)


def test_klein_rejects_small_samples():
    D_A, D_B = ball_domains(P(0, 3, 0, 3))
    with pytest.raises(ValueError):
        verify_klein(D_A, D_B, n=50)


@pytest.mark.parametrize("cid", ["C1", "C2", "C3", "C4"])
def test_klein_constructions_pass_where_their_condition_holds(cid):
    rng = np.random.default_rng({"C1": 1, "C2": 2, "C3": 3, "C4": 4}[cid])
    done = 0
    while done < 4:
        p = random_params(rng, 4, 5)
        if evaluate_criteria(p)[cid].margin <= 0.05:
            continue
        A, B = build_generators(p)
        D_A, D_B = CONSTRUCTIONS[cid](p)
        report = verify_klein(D_A, D_B, A, B, n=4000, seed=done)
        assert report.passed, (p, report.failures())
        done += 1


def test_slab_construction_fails_when_spheres_do_not_fit():
    p = P(1.0, 0.0, 1.0, 0.5)
    assert not evaluate_criteria(p)["C2"].holds
    A, B = build_generators(p)
    report = verify_klein(*condition2_domains(p), A, B, n=5000, seed=0)
    assert not report.hypothesis_results["cover"].passed


def test_auto_construction_picks_a_holding_condition():
    assert auto_construction(P(0, 3, 0, 3)) == "C1"
    p = P(3, 0, 3, 0)
    assert evaluate_criteria(p)[auto_construction(p)].holds


def test_klein_deterministic():
    A, B = build_generators(P(0, 3, 0, 3))
    D_A, D_B = CONSTRUCTIONS["C1"](P(0, 3, 0, 3))
    a = verify_klein(D_A, D_B, A, B, n=2000, seed=7)
    b = verify_klein(D_A, D_B, A, B, n=2000, seed=7)
    assert {k: h.worst_margin for k, h in a.hypothesis_results.items()} == \
           {k: h.worst_margin for k, h in b.hypothesis_results.items()}


def test_four_spheres_pass_for_condition1():
    assert verify_spheres(P(0, 3, 0, 3)).passed


def test_four_spheres_overlap_witness_reverifies():
    report = verify_spheres(P(0, 1, 0, 1), seed=2)
    assert not report.passed
    S = four_spheres(P(0, 1, 0, 1)).named()
    for name, h in report.failures().items():
        assert h.witness is not None
        if name.startswith("disjoint"):
            _, a, b = name.split()
            assert S[a].interior_contains(h.witness) and S[b].interior_contains(h.witness)


def test_B_maps_exterior_of_its_sphere_inside_partner():
    p = random_params(np.random.default_rng(11))
    A, B = build_generators(p)
    S = four_spheres(p)
    rng = np.random.default_rng(0)
    from twoparabolic.spheres import isometric_sphere
    IB = isometric_sphere(B)
    pts = IB.sample(rng, 500, rng.uniform(1.001, 10, 500))
    assert np.all(S.b_plus.margin(pts.act(B)) > 0)


def test_word_nesting_free_example():
    p = P(0, 3, 0, 3)
    report = word_nesting_test(p, four_spheres(p), 4, seed=0)
    assert report.passed and report.info["words"] == 160


def test_word_nesting_single_letter_and_basepoint():
    p = P(0, 3, 0, 3)
    S = four_spheres(p)
    base = find_basepoint(S)
    assert all(not r.contains(base) for r in S.named().values())
    A, _ = build_generators(p)
    assert S.a_plus.interior_contains(apply_boundary(A, base))
    with pytest.raises(ValueError):
        word_nesting_test(p, S, 2, basepoint=ORIGIN)
    with pytest.raises(ValueError):
        word_nesting_test(p, S, 0)


def test_word_images_stay_in_closed_interiors():
    p = GeneratorParams(2.5, 1.0, 0.3, 2.5, -0.5, 0.1)
    assert evaluate_criteria(p)["C1"].holds
    report = word_nesting_test(p, four_spheres(p), 5, seed=3)
    assert report.passed and report.info["words"] == 4 + 12 + 36 + 108 + 324


def test_consistency_with_condition1(rng):
    done = 0
    while done < 15:
        p = random_params(rng, 3, 6)
        if evaluate_criteria(p)["C1"].margin <= 0.1:
            continue
        assert verify_spheres(p, n=5000, seed=done).passed
        done += 1
