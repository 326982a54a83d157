import random
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from celeste import corpus
from celeste.chow import (ChowClass, cycle_class, degree, divisor_class, equal,
                          log_chern, multiply, pullback_divisor, pushforward,
                          total_chern)
from celeste.errors import ModelMismatch, NotComplete, NotSmooth, NotSNC, UnknownCone
from celeste.fan import star_subdivide
from celeste.models import QUADRANT

import oracles

P2 = corpus.projective_plane()
BL, BL_SUB = star_subdivide(P2, (1, 1))
P1P1 = corpus.p1_times_p1()
H = cycle_class(P2, ((1, 0),))
PT = cycle_class(P2, ((0, 1), (1, 0)))


def test_cycle_class_basics():
    assert cycle_class(P2, ()) == ChowClass.one(P2)
    assert H.terms == {((1, 0),): 1}
    with pytest.raises(UnknownCone):
        cycle_class(P2, ((1, 0), (0, 1), (-1, -1)))


def test_hyperplane_powers():
    assert equal(multiply(H, H), PT)
    assert degree(multiply(H, H)) == 1
    assert not multiply(multiply(H, H), H)


def test_exceptional_self_intersection():
    E = cycle_class(BL, ((1, 1),))
    assert degree(multiply(E, E)) == -1


def test_degree_reads_point_coefficients():
    assert degree(H.scale(2) + PT.scale(3)) == 3
    assert degree(ChowClass.zero(P2)) == 0


def test_equal():
    assert equal(multiply(H, H), PT)
    assert not equal(H.scale(2), H)
    assert equal(H, cycle_class(P2, ((-1, -1),)))
    with pytest.raises(NotComplete):
        equal(ChowClass.one(QUADRANT), ChowClass.one(QUADRANT))
    with pytest.raises(ModelMismatch):
        equal(H, ChowClass.one(BL))


def test_multiply_requires_smooth():
    W = corpus.weighted_plane_112()
    with pytest.raises(NotSmooth):
        multiply(ChowClass.one(W), ChowClass.one(W))


def test_total_chern_plane():
    c = total_chern(P2)
    assert equal(c, ChowClass.one(P2) + H.scale(3) + PT.scale(3))
    assert degree(c) == 3


def test_total_chern_p1p1():
    c = total_chern(P1P1)
    F1 = cycle_class(P1P1, ((1, 0),))
    F2 = cycle_class(P1P1, ((0, 1),))
    pt = cycle_class(P1P1, ((0, 1), (1, 0)))
    assert equal(c, ChowClass.one(P1P1) + F1.scale(2) + F2.scale(2) + pt.scale(4))


def test_total_chern_p3():
    assert degree(total_chern(corpus.projective_space3())) == 4


def test_log_chern_examples():
    assert equal(log_chern(P2, P2.rays), ChowClass.one(P2))
    assert equal(log_chern(P2, [(1, 0), (0, 1)]), ChowClass.one(P2) + H)
    assert log_chern(P2, []) == total_chern(P2)
    with pytest.raises(NotSNC):
        log_chern(P2, [(1, 0), (1, 0)])
    with pytest.raises(NotSNC):
        log_chern(P2, [(1, 1)])


def test_pushforward_examples():
    E = cycle_class(BL, ((1, 1),))
    assert not pushforward(BL_SUB, E)
    for c in BL.max_cones:
        assert degree(pushforward(BL_SUB, cycle_class(BL, c))) == 1
    pushed = pushforward(BL_SUB, total_chern(BL))
    assert degree(pushed) == 4
    with pytest.raises(ModelMismatch):
        pushforward(BL_SUB, H)


def test_pullback_examples():
    assert pullback_divisor(BL_SUB, {(1, 0): 1}) == {(1, 0): 1, (1, 1): 1}
    assert pullback_divisor(BL_SUB, {}) == {}
    W = corpus.weighted_plane_112()
    _, sub = star_subdivide(W, (0, -1))
    pb = pullback_divisor(sub, {r: 1 for r in W.rays})
    assert pb == {(1, 0): 1, (0, 1): 1, (-1, -2): 1, (0, -1): 1}


# -- properties ----------------------------------------------------------------

def _random_class(model, rng, max_terms=4):
    cones = model.cones
    return ChowClass(model, {rng.choice(cones): rng.randint(-3, 3)
                             for _ in range(rng.randint(1, max_terms))})


@pytest.mark.parametrize("name", ["P2", "Bl_pt P2", "F2", "P3", "Bl_pt P3"])
def test_confluence_under_permutation(name):
    model = corpus.SMOOTH_COMPLETE[name]()
    rng = random.Random(name)
    for _ in range(15):
        a, b, c = (_random_class(model, rng) for _ in range(3))
        lhs = multiply(multiply(a, b), c)
        rhs = multiply(c, multiply(b, a))
        assert lhs == rhs
        assert multiply(a, b + c) == multiply(a, b) + multiply(a, c)


@pytest.mark.parametrize("name", sorted(corpus.SMOOTH_COMPLETE))
def test_log_identity(name):
    model = corpus.SMOOTH_COMPLETE[name]()
    rng = random.Random(name)
    for _ in range(5):
        E = rng.sample(model.rays, rng.randint(0, len(model.rays)))
        prod = log_chern(model, E)
        for r in E:
            prod = multiply(prod, ChowClass.one(model) + cycle_class(model, (r,)))
        assert equal(prod, total_chern(model))


@pytest.mark.parametrize("name", ["P2", "P1xP1", "F3", "P3", "P2xP1"])
def test_bridge_against_fixed_point_count(name):
    model = corpus.SMOOTH_COMPLETE[name]()
    for k in range(len(model.rays) + 1):
        for E in combinations(model.rays, k):
            lc = log_chern(model, E)
            for I in model.cones:
                if set(I) <= set(E):
                    got = degree(multiply(lc, cycle_class(model, I)))
                    assert got == oracles.open_stratum_points(model.max_cones, E, I)


@pytest.mark.parametrize("name", ["P2", "P1xP1", "P3"])
@pytest.mark.parametrize("v_index", [0, 1, 2])
def test_projection_formula(name, v_index):
    model = corpus.SMOOTH_COMPLETE[name]()
    big = [c for c in model.cones if len(c) >= 2]
    cone = big[v_index % len(big)]
    new, sub = star_subdivide(model, tuple(map(sum, zip(*cone))))
    rng = random.Random(f"{name}{v_index}")
    for _ in range(5):
        d = {r: rng.randint(-2, 2) for r in model.rays}
        a = divisor_class(model, d)
        a_up = divisor_class(new, pullback_divisor(sub, d))
        b = _random_class(new, rng)
        lhs = degree(pushforward(sub, multiply(a_up, b)))
        rhs = degree(multiply(a, pushforward(sub, b)))
        assert lhs == rhs


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["P2", "Bl_pt P2", "P1xP1", "P3"]), st.randoms(use_true_random=False))
def test_equal_modulo_linear_relations(name, rng):
    model = corpus.SMOOTH_COMPLETE[name]()
    a = _random_class(model, rng)
    m = [rng.randint(-2, 2) for _ in range(model.rank)]
    relation = divisor_class(model, {r: sum(x * y for x, y in zip(m, r)) for r in model.rays})
    b = a + multiply(relation, _random_class(model, rng))
    assert equal(a, b)
    c = _random_class(model, rng)
    assert degree(multiply(a, c)) == degree(multiply(b, c))
    assert equal(b, a) and equal(a, a)
