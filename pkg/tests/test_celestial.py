from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from celeste import corpus
from celeste.celestial import (additivity_check, check_change_of_variables,
                               evaluate_manifestation, fiber_strata, integrate,
                               local_value, resolution_independence)
from celeste.chow import ChowClass, cycle_class, equal, log_chern, multiply, total_chern
from celeste.errors import NonConvergent, NonToricAtom, NotDisjoint
from celeste.models import (BoundaryAtom, ConstructibleSet, HypersurfaceAtom,
                            NewtonPolygon, QUADRANT, ResolutionTower, SystemDivisor,
                            newton_resolution, resolve, restrict_to_point)
from celeste.scalar import Scalar

import oracles

m = Scalar.m()
P2 = corpus.projective_plane()
P1P1 = corpus.p1_times_p1()
BL_TOWER = ResolutionTower.build(P2, [(1, 1)])
AMB = ConstructibleSet.ambient()
ORIGIN = QUADRANT.max_cones[0]
PT = ((0, 1), (1, 0))


def lines(*rays):
    return ConstructibleSet(BoundaryAtom(r) for r in rays)


def test_manifestation_plane():
    rd = resolve(ResolutionTower(P2), SystemDivisor(), AMB)
    assert equal(evaluate_manifestation(rd), total_chern(P2))


def test_manifestation_two_lines():
    rd = resolve(ResolutionTower(P2), SystemDivisor(), lines((1, 0), (0, 1)))
    a = evaluate_manifestation(rd)
    H = cycle_class(P2, ((1, 0),))
    assert equal(a, H.scale(2) + cycle_class(P2, PT).scale(3))
    assert a.degree() == 3


def test_manifestation_blowup():
    rd = resolve(BL_TOWER, SystemDivisor(), AMB)
    model = BL_TOWER.top
    E = cycle_class(model, ((1, 1),))
    expected = multiply(log_chern(model, [(1, 1)]), ChowClass.one(model) + E.scale(Fraction(1, 2)))
    a = evaluate_manifestation(rd)
    assert equal(a, expected)
    assert a.degree() == 3


def test_manifestation_rejects_germs():
    g = HypersurfaceAtom("f", corpus.CUSP)
    rd = resolve(corpus.cusp_tower(), SystemDivisor({g: m}), AMB)
    with pytest.raises(NonToricAtom):
        evaluate_manifestation(rd)


def test_integrate_blowup_pushes_to_chern_class():
    cc = integrate(BL_TOWER, SystemDivisor(), AMB)
    assert equal(cc.identity, total_chern(P2))
    assert cc.verify_compatibility().passed
    assert cc.degree() == 3


def test_integrate_p1p1():
    assert integrate(ResolutionTower(P1P1), SystemDivisor(), AMB).degree() == 4


def test_integrate_never_returns_partial_value():
    with pytest.raises(NonConvergent):
        integrate(BL_TOWER, SystemDivisor({BoundaryAtom((1, 1)): -2}), AMB)


def test_change_of_variables_examples():
    assert check_change_of_variables(BL_TOWER, SystemDivisor(), AMB, 0, 1).passed
    g = HypersurfaceAtom("f", corpus.CUSP)
    rep = check_change_of_variables(corpus.cusp_tower(), SystemDivisor({g: m}), AMB, 1, 3)
    assert rep.passed
    assert check_change_of_variables(BL_TOWER, SystemDivisor(), AMB, 1, 1).passed


def test_local_value_examples():
    f = HypersurfaceAtom("x", corpus.SMOOTH_GERM)
    t = ResolutionTower.build(QUADRANT, [(1, 1)])
    assert local_value(t, SystemDivisor({f: m}), AMB, ORIGIN) == 1 / (m + 1)
    g = HypersurfaceAtom("f", corpus.CUSP)
    z = local_value(corpus.cusp_tower(), SystemDivisor({g: m}), AMB, ORIGIN)
    assert z == (m * 4 + 5) / ((m + 1) * (m * 6 + 5))
    assert local_value(BL_TOWER, SystemDivisor(), AMB, PT) == 1


def test_cusp_strata_match_stated_sum():
    g = HypersurfaceAtom("f", corpus.CUSP)
    rd = resolve(corpus.cusp_tower(), SystemDivisor({g: m}), AMB)
    fiber = restrict_to_point(rd.tower, AMB, ORIGIN)
    terms = sorted(str(s.contribution) for s in fiber_strata(rd, ORIGIN, fiber))
    one = Scalar.const(1)
    expected = [one / (m * 2 + 2), one / (m * 3 + 3), -one / (m * 6 + 5),
                one / ((m * 2 + 2) * (m * 6 + 5)), one / ((m * 3 + 3) * (m * 6 + 5)),
                one / ((m + 1) * (m * 6 + 5))]
    assert terms == sorted(str(e) for e in expected)


def test_additivity_examples():
    rep = additivity_check(ResolutionTower(P1P1), SystemDivisor(), lines((1, 0)), lines((-1, 0)))
    assert rep.passed
    whole = integrate(ResolutionTower(P1P1), SystemDivisor(), lines((1, 0), (-1, 0)))
    assert whole.degree() == 4
    with pytest.raises(NotDisjoint):
        additivity_check(ResolutionTower(P2), SystemDivisor(), lines((1, 0)), lines((0, 1)))
    with pytest.raises(NotDisjoint):
        additivity_check(ResolutionTower(P2), SystemDivisor(), AMB, lines((0, 1)))


def test_normalization_on_invariant_curves():
    for name in ["P2", "P1xP1", "F2", "Bl_pt P2"]:
        model = corpus.SMOOTH_COMPLETE[name]()
        for r in model.rays:
            assert integrate(ResolutionTower(model), SystemDivisor(), lines(r)).degree() == 2


def test_resolution_independence_blowup():
    t = ResolutionTower.build(P2, [(1, 1), (1, 2)])
    D = SystemDivisor({BoundaryAtom((1, 0)): Fraction(1, 2)})
    assert resolution_independence(t, D, AMB).passed


# -- randomized checks against independent oracles -----------------------------

def _smooth_tower(base, rng, steps):
    t = ResolutionTower(base)
    for _ in range(steps):
        cone = rng.choice([c for c in t.top.cones if len(c) >= 2])
        t = t.extend(tuple(map(sum, zip(*cone))))
    return t


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(["P2", "P3", "P1xP1", "F2"]), st.randoms(use_true_random=False),
       st.integers(0, 3))
def test_degree_matches_fixed_point_oracle(name, rng, steps):
    base = corpus.SMOOTH_COMPLETE[name]()
    t = _smooth_tower(base, rng, steps)
    coeffs = {r: Fraction(rng.randint(0, 3), rng.randint(1, 2)) for r in base.rays}
    D = SystemDivisor({BoundaryAtom(r): c for r, c in coeffs.items()})
    cc = integrate(t, D, AMB)
    weights = {r: oracles.one_plus_m(base.max_cones, coeffs, r) for r in t.top.rays}
    weights = {r: w for r, w in weights.items() if w != 1}
    assert cc.degree() == oracles.ambient_degree(t.top.max_cones, weights)
    for k in range(t.height + 1):
        assert cc[k].degree() == cc.degree()


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(["P2", "P3", "P1xP1"]), st.randoms(use_true_random=False),
       st.integers(0, 3))
def test_set_degree_matches_oracle(name, rng, steps):
    base = corpus.SMOOTH_COMPLETE[name]()
    t = _smooth_tower(base, rng, steps)
    chosen = rng.sample(base.rays, rng.randint(1, len(base.rays) - 1))
    S = lines(*chosen)
    cc = integrate(t, SystemDivisor(), S)

    def over_chosen(r):
        cone, c = oracles.base_coordinates(base.max_cones, r)
        return any(x > 0 and b in chosen for b, x in zip(cone, c))

    pre = {r for r in t.top.rays if over_chosen(r)}
    weights = {r: oracles.one_plus_m(base.max_cones, {}, r) for r in t.top.rays}
    weights = {r: w for r, w in weights.items() if w != 1 or r in pre}
    assert cc.degree() == oracles.set_degree(t.top.max_cones, weights, pre)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 7), st.integers(0, 7)).filter(lambda e: e != (0, 0)),
                min_size=1, max_size=4))
def test_germ_zeta_matches_resolution_graph_oracle(points):
    poly = NewtonPolygon(points)
    t = newton_resolution(poly)
    if t.height == 0:
        t = t.extend((1, 1))
    g = HypersurfaceAtom("f", poly)
    z = local_value(t, SystemDivisor({g: m}), AMB, ORIGIN)
    for x in (Fraction(0), Fraction(1, 3), Fraction(2), Fraction(5, 11)):
        expected = oracles.germ_zeta(t.top.rays, points, x)
        assert z(x) == expected


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(["P2", "P3"]), st.randoms(use_true_random=False), st.integers(1, 4))
def test_change_of_variables_random(name, rng, steps):
    base = corpus.SMOOTH_COMPLETE[name]()
    t = _smooth_tower(base, rng, steps)
    D = SystemDivisor({BoundaryAtom(r): Fraction(rng.randint(0, 3), rng.randint(1, 2))
                       for r in base.rays})
    i = rng.randint(0, t.height - 1)
    j = rng.randint(i + 1, t.height)
    assert check_change_of_variables(t, D, AMB, i, j).passed
