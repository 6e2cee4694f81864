import random
from functools import lru_cache

import pytest
from hypothesis import given
from hypothesis import strategies as st

from mulnpoly.curves import (
    NonField,
    NotOnCurve,
    ProjPoint,
    SingularPoint,
    TripleSource,
    WeierstrassCurve,
    affine_multiple,
    curve_contains,
    curve_discriminant,
    is_smooth_affine,
    is_smooth_curve,
    is_smooth_point,
    is_Zn_embedding,
    mul_point,
    oracle_add,
    oracle_mul,
    oracle_multiples,
    oracle_neg,
    points_over_prime_field,
    proj_equal,
    random_smooth_curve,
)
from mulnpoly.divpoly import DivPolyLadder, b_invariants, discriminant_from_b
from mulnpoly.rings import QQ, ZZ, CapabilityError, PolynomialRing, ResidueRing

Z16 = ResidueRing(16)
F5 = ResidueRing(5)
E16 = WeierstrassCurve(Z16, (0, 0, 0, 0, 1))
E5 = WeierstrassCurve(F5, (0, 0, 0, 0, 1))


def test_membership_examples():
    assert curve_contains(E16, (2, 1, 8))
    assert curve_contains(E16, (0, 1, 0))
    assert not curve_contains(E16, (1, 1, 1))
    assert not curve_contains(E16, (2, 2, 8))
    weird = WeierstrassCurve(ResidueRing(7), (1, 2, 3, 4, 5))
    assert curve_contains(weird, (0, 1, 0))


def test_smoothness_examples():
    assert is_smooth_point(E16, E16.point(2, 1, 8))
    assert is_smooth_point(E16, E16.zero())
    cusp = WeierstrassCurve(F5, (0, 0, 0, 0, 0))
    assert not is_smooth_point(cusp, cusp.point(0, 0, 1))


def test_discriminant_examples():
    E = WeierstrassCurve(QQ, (0, 0, 0, 0, 1))
    assert curve_discriminant(E) == QQ(-432)
    assert is_smooth_curve(E)
    assert curve_discriminant(E16) == Z16(0)
    assert not is_smooth_curve(E16)
    assert is_smooth_point(E16, E16.point(2, 1, 8))
    for R in (ZZ, QQ, F5, Z16):
        assert curve_discriminant(WeierstrassCurve(R, (0, 0, 0, 0, 0))) == R(0)


@given(st.lists(st.integers(-30, 30), min_size=5, max_size=5))
def test_discriminant_matches_b_formula(a):
    assert curve_discriminant(WeierstrassCurve(ZZ, tuple(a))).value == discriminant_from_b(*b_invariants(*a))


def test_discriminant_against_singular_point_scan():
    rng = random.Random(5)
    for p in (5, 7, 11, 13):
        R = ResidueRing(p)
        for _ in range(25):
            c = WeierstrassCurve(R, tuple(rng.randrange(p) for _ in range(5)))
            singular = any(not is_smooth_point(c, P) for P in points_over_prime_field(c))
            # over F_p a singular Weierstrass cubic has its singular point rational
            assert singular == (not is_smooth_curve(c))


def test_unit_ideal_capability():
    R = PolynomialRing(ZZ, ("u",))
    c = WeierstrassCurve(R, (0, 0, 0, 0, 1))
    with pytest.raises(CapabilityError):
        curve_contains(c, (0, 1, 0))


def test_oracle_examples():
    P = E5.point(0, 1, 1)
    assert oracle_add(E5, P, E5.zero()) == P
    assert oracle_add(E5, P, P) == E5.point(0, 4, 1)
    assert oracle_mul(E5, P, 3) == E5.zero()
    assert oracle_add(E5, E5.point(2, 2), E5.point(2, 2)) == E5.point(0, 4, 1)
    assert len(points_over_prime_field(E5)) == 6


def test_oracle_needs_field():
    with pytest.raises(NonField):
        oracle_add(E16, E16.zero(), E16.zero())


def test_oracle_rejects_bad_points():
    cusp = WeierstrassCurve(F5, (0, 0, 0, 0, 0))
    with pytest.raises(SingularPoint):
        oracle_add(cusp, cusp.point(0, 0, 1), cusp.zero())
    with pytest.raises(NotOnCurve):
        oracle_add(E5, E5.point(1, 1, 1), E5.zero())


def test_mul_point_examples():
    P = E16.point(2, 1, 8)
    chain = []
    for _ in range(3):
        P = mul_point(E16, P, 2)
        chain.append(P)
    assert chain == [E16.point(4, 1, 0), E16.point(8, 1, 0), E16.zero()]
    assert str(chain[0]) == "(4 : 1 : 0)"
    assert mul_point(E16, E16.point(2, 1, 8), 8) == E16.zero()
    assert mul_point(E16, E16.point(2, 1, 8), 1) == E16.point(2, 1, 8)
    assert mul_point(E5, E5.point(2, 2), 2) == E5.point(0, 4, 1)


def test_mul_point_refuses_bad_input():
    with pytest.raises(NotOnCurve):
        mul_point(E16, E16.point(1, 1, 1), 2)
    cusp = WeierstrassCurve(F5, (0, 0, 0, 0, 0))
    with pytest.raises(SingularPoint):
        mul_point(cusp, cusp.point(0, 0, 1), 2)


def test_mul_point_over_integers():
    E = WeierstrassCurve(ZZ, (0, 0, 1, -1, 0))
    P = E.point(0, 0, 1)
    assert is_smooth_point(E, P)
    Q = mul_point(E, P, 2)
    assert curve_contains(E, Q)
    assert Q == E.point(1, 0, 1)
    assert mul_point(E, P, 3) == E.point(-1, -1, 1)
    Eq = WeierstrassCurve(QQ, E.a)
    assert mul_point(Eq, Eq.point(0, 0, 1), 3).affine() == (-1, -1)


def test_projective_equality():
    assert E16.point(4, 1, 0) == ProjPoint(Z16, (12, 3, 0))
    assert E16.point(4, 1, 0) != ProjPoint(Z16, (8, 1, 0))
    Z6 = ResidueRing(6)
    assert proj_equal(ProjPoint(Z6, (2, 3, 0)), ProjPoint(Z6, (4, 3, 0)))
    assert not proj_equal(ProjPoint(Z6, (2, 3, 0)), ProjPoint(Z6, (3, 2, 0)))
    with pytest.raises(ValueError):
        ProjPoint(Z16, (2, 4, 8))


def test_zn_embedding_examples():
    P = E5.point(0, 1, 1)
    assert is_Zn_embedding(E5, P, 3)
    assert not is_Zn_embedding(E5, P, 6)
    for n in range(2, 8):
        assert not is_Zn_embedding(E5, E5.zero(), n)


def test_generic_and_specialized_sources_agree():
    gen = TripleSource("generic")
    rng = random.Random(11)
    for _ in range(4):
        c = random_smooth_curve(ResidueRing(13), rng)
        for P in points_over_prime_field(c)[:6]:
            for n in range(-4, 5):
                assert mul_point(c, P, n, gen) == mul_point(c, P, n)


def test_composite_modulus_closure():
    rng = random.Random(3)
    for N in (16, 15, 45, 77):
        R = ResidueRing(N)
        found = 0
        for _ in range(4000):
            a = tuple(rng.randrange(N) for _ in range(4))
            x, y = rng.randrange(N), rng.randrange(N)
            a6 = (y * y + a[0] * x * y + a[2] * y - x ** 3 - a[1] * x * x - a[3] * x) % N
            c = WeierstrassCurve(R, a + (a6,))
            P = c.point(x, y, 1)
            if not is_smooth_point(c, P):
                continue
            found += 1
            for n in range(-6, 7):
                Q = mul_point(c, P, n)
                assert curve_contains(c, Q) and is_smooth_point(c, Q)
            if found == 5:
                break
        assert found == 5


@lru_cache(maxsize=None)
def _samples(p, seed):
    rng = random.Random(seed)
    c = random_smooth_curve(ResidueRing(p), rng)
    return c, points_over_prime_field(c)


curve_keys = st.tuples(st.sampled_from([7, 11, 13, 17, 101]), st.integers(0, 5))


@given(curve_keys, st.integers(0, 10 ** 6), st.integers(0, 10 ** 6), st.integers(0, 10 ** 6))
def test_group_laws(key, i, j, k):
    c, pts = _samples(*key)
    P, Q, R = (pts[v % len(pts)] for v in (i, j, k))
    assert oracle_add(c, P, Q) == oracle_add(c, Q, P)
    assert oracle_add(c, oracle_add(c, P, Q), R) == oracle_add(c, P, oracle_add(c, Q, R))
    assert oracle_add(c, P, oracle_neg(c, P)) == c.zero()


@given(curve_keys, st.integers(0, 10 ** 6))
def test_mul_point_matches_repeated_addition(key, i):
    c, pts = _samples(*key)
    P = pts[i % len(pts)]
    mult = oracle_multiples(c, P, 12)
    for n in range(-12, 13):
        want = mult[n] if n >= 0 else oracle_neg(c, mult[-n])
        assert mul_point(c, P, n) == want
        assert oracle_mul(c, P, n) == want


@given(curve_keys, st.integers(0, 10 ** 6))
def test_torsion_criterion(key, i):
    c, pts = _samples(*key)
    P = pts[i % len(pts)]
    if P.raw[2] == 0:
        return
    L = DivPolyLadder.over(c.a, c.ring)
    X, Y = P.affine()
    mult = oracle_multiples(c, P, 12)
    for n in range(1, 13):
        assert (L.psi_value(n, X, Y) == 0) == (mult[n].raw[2] == 0)
        # point-level coprimality of Phi_n and Psi_n
        assert not (L.phi(n)(X, Y) == 0 and L.psi(n)(X, Y) == 0)


@given(curve_keys, st.integers(0, 10 ** 6))
def test_affine_formula_matches_triple(key, i):
    c, pts = _samples(*key)
    P = pts[i % len(pts)]
    if P.raw[2] == 0:
        return
    for n in range(-9, 10):
        Q = affine_multiple(c, P, n)
        if mul_point(c, P, n).raw[2] != 0:
            assert Q == mul_point(c, P, n)


@given(curve_keys, st.integers(0, 10 ** 6))
def test_two_generator_smoothness(key, i):
    c, pts = _samples(*key)
    P = pts[i % len(pts)]
    if P.raw[2] != 0:
        assert is_smooth_affine(c, *P.affine()) == is_smooth_point(c, P)


def test_two_generator_smoothness_on_singular_curves():
    for p in (5, 7, 11):
        R = ResidueRing(p)
        for a in ((0, 0, 0, 0, 0), (0, 1, 0, 0, 0), (1, 0, 0, 0, 0), (0, 0, 0, p - 3, 2)):
            c = WeierstrassCurve(R, a)
            for P in points_over_prime_field(c)[1:]:
                assert is_smooth_affine(c, *P.affine()) == is_smooth_point(c, P)


@given(curve_keys, st.integers(0, 10 ** 6), st.integers(0, 10 ** 6), st.integers(1, 100))
def test_projective_equality_is_equivalence(key, i, j, u):
    c, pts = _samples(*key)
    R = c.ring
    P, Q = pts[i % len(pts)], pts[j % len(pts)]
    u = u % R.modulus or 1
    Pu = ProjPoint(R, tuple(R.mul(u, v) for v in P.raw))
    assert proj_equal(P, P)
    assert proj_equal(P, Pu) and proj_equal(Pu, P)
    assert proj_equal(Pu, Q) == proj_equal(P, Q) == proj_equal(Q, P)


def test_point_json():
    assert E16.to_json(E16.point(2, 1, 8)) == {"ring": "zmod:16", "a": ["0", "0", "0", "0", "1"],
                                               "point": ["2", "1", "8"]}
