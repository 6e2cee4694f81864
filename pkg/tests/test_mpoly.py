import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from mulnpoly.mpoly import (
    GENERIC,
    TATE,
    MPoly,
    NotDivisible,
    NotHomogeneous,
    VarMismatch,
    parse_poly,
    poly_add,
    poly_divexact,
    poly_homogeneous_degree,
    poly_mul,
    poly_neg,
    poly_pow,
    poly_substitute,
)
from mulnpoly.rings import ZZ, ResidueRing

from .conftest import mpolys

VARS8 = ("v1", "v2", "v3", "v4", "v5", "v6", "v7", "v8")
x, y, z = MPoly.gens(("x", "y", "z"))


def test_examples():
    assert poly_mul(x + y, x - y) == x ** 2 - y ** 2
    p = x * y + 3
    assert poly_add(p, poly_neg(p)) == MPoly.zero(p.vars)
    assert not poly_add(p, poly_neg(p)).terms
    assert poly_pow(x + 1, 3) == x ** 3 + 3 * x ** 2 + 3 * x + 1


def test_square_in_affine_variables():
    a1, a2, a3, a4, a6, X, Y = MPoly.gens(GENERIC[:5] + ("X", "Y"))
    got = (2 * Y + a1 * X + a3) ** 2
    want = 4 * Y ** 2 + 4 * a1 * X * Y + 4 * a3 * Y + a1 ** 2 * X ** 2 + 2 * a1 * a3 * X + a3 ** 2
    assert got == want


def test_divexact_examples():
    assert poly_divexact(x ** 2 - y ** 2, x - y) == x + y
    s, t = MPoly.gens(TATE)
    assert poly_divexact(s * t ** 5, t) == s * t ** 4
    with pytest.raises(NotDivisible) as info:
        poly_divexact(x, y)
    assert info.value.leading_term is not None
    with pytest.raises(ZeroDivisionError):
        poly_divexact(x, MPoly.zero(x.vars))


def test_divexact_over_composite_modulus():
    R = ResidueRing(16)
    X, Y = MPoly.gens(("X", "Y"), R)
    q = X ** 2 + 3 * Y
    assert poly_divexact(q * (X + 5), X + 5) == q


def test_variable_mismatch():
    with pytest.raises(VarMismatch):
        x + MPoly.gen(("x", "w"), "x")


def test_substitute_examples():
    R = ResidueRing(7)
    gamma2 = 8 * MPoly.gen(GENERIC, "y") ** 3 * MPoly.gen(GENERIC, "z")
    binds = dict(zip(GENERIC[:5], [0, 0, 0, 0, 1]))
    assert poly_substitute(gamma2, binds) == gamma2.substitute(binds)
    assert str(gamma2.substitute(binds)) == "8*y^3*z"
    assert poly_substitute(x + y, {}) == x + y
    assert (x * y + 2).substitute({"x": R(3), "y": R(4)}) == R(0)


def test_tate_substitution_of_psi2():
    vars_ = GENERIC[:5] + ("X", "Y")
    a1, a2, a3, a4, a6, X, Y = MPoly.gens(vars_)
    s, t = MPoly.gens(TATE)
    psi2 = 2 * Y + a1 * X + a3
    at_origin = psi2.substitute({"X": 0, "Y": 0})
    img = at_origin.substitute({"a1": 1 + s, "a2": t, "a3": t, "a4": MPoly.zero(TATE), "a6": MPoly.zero(TATE)})
    assert img == t


def test_homogeneous_degree():
    assert poly_homogeneous_degree(x ** 3 + y ** 2 * z, (1, 1, 1)) == 3
    u, v = MPoly.gens(("u", "v"))
    with pytest.raises(NotHomogeneous):
        poly_homogeneous_degree(u + v ** 2, (1, 1))
    with pytest.raises(ValueError):
        poly_homogeneous_degree(MPoly.zero(("u",)), (1,))
    beta2 = parse_poly("y^4 + a1*x*y^3 + (a1*a2 - 2*a3)*y^3*z - 27*a6^2*z^4", GENERIC)
    assert poly_homogeneous_degree(beta2, (0, 0, 0, 0, 0, 1, 1, 1)) == 4


def test_serialization_order():
    p = x ** 3 + y ** 2 * z + x * y * z + 5 + x ** 2 * z
    exps = [t["e"] for t in p.to_json()["terms"]]
    assert exps == [[3, 0, 0], [2, 0, 1], [1, 1, 1], [0, 2, 1], [0, 0, 0]]


def test_json_carries_ring():
    R = ResidueRing(11)
    p = MPoly(("x",), {(2,): 13, (0,): -1}, R)
    data = p.to_json()
    assert data["ring"] == "zmod:11"
    assert data["terms"] == [{"c": "2", "e": [2]}, {"c": "10", "e": [0]}]
    assert MPoly.from_json(data) == p


def test_parse_exponents_are_integers():
    R = ResidueRing(7)
    assert parse_poly("t^8", ("t",), R) == MPoly.gen(("t",), "t", R) ** 8
    with pytest.raises(ValueError):
        parse_poly("t^t", ("t",))


def test_parse_forms():
    assert parse_poly("x**2 - -y", ("x", "y")) == parse_poly("x^2+y", ("x", "y"))
    assert parse_poly("(2*x + 2)^2/4", ("x",)) == parse_poly("x^2 + 2*x + 1", ("x",))
    with pytest.raises(NotDivisible):
        parse_poly("x/2", ("x",))
    with pytest.raises(ValueError):
        parse_poly("x/y", ("x", "y"))
    with pytest.raises(VarMismatch):
        parse_poly("w + 1", ("x",))


small = mpolys(VARS8, max_terms=30, max_exp=3)


@given(small, small, small)
def test_ring_axioms(p, q, r):
    zero, one = MPoly.zero(VARS8), MPoly.constant(VARS8, 1)
    assert (p + q) + r == p + (q + r)
    assert p + q == q + p
    assert (p * q) * r == p * (q * r)
    assert p * q == q * p
    assert p * (q + r) == p * q + p * r
    assert p + zero == p and p * one == p
    assert p - p == zero
    assert all(c != 0 for c in (p * q).terms.values())


@given(mpolys(max_terms=12), mpolys(max_terms=12).filter(bool))
def test_divexact_inverts_mul(p, q):
    assert poly_divexact(p * q, q) == p


@given(mpolys(max_terms=12, coeffs=st.integers(0, 12)), mpolys(max_terms=12, coeffs=st.integers(0, 12)))
def test_divexact_over_prime_field(p, q):
    R = ResidueRing(13)
    p, q = p.change_ring(R), q.change_ring(R)
    if q:
        assert poly_divexact(p * q, q) == p


@given(mpolys(max_terms=10), mpolys(max_terms=10), mpolys(("s", "t"), max_terms=5, max_exp=2),
       mpolys(("s", "t"), max_terms=5, max_exp=2))
def test_substitution_is_morphism(p, q, img_x, img_y):
    binds = {"x": img_x, "y": img_y, "z": img_x * img_y + 1}
    sub = lambda f: f.substitute(binds)
    assert sub(p + q) == sub(p) + sub(q)
    assert sub(p * q) == sub(p) * sub(q)


@given(mpolys(max_terms=10), mpolys(max_terms=10), st.integers(-20, 20), st.integers(-20, 20), st.integers(-20, 20))
def test_evaluation_is_morphism(p, q, a, b, c):
    R = ResidueRing(101)
    binds = {"x": R(a), "y": R(b), "z": R(c)}
    assert (p + q).substitute(binds) == p.substitute(binds) + q.substitute(binds)
    assert (p * q).substitute(binds) == p.substitute(binds) * q.substitute(binds)


@given(small)
def test_json_round_trip(p):
    text = json.dumps(p.to_json(), sort_keys=True)
    assert MPoly.from_json(json.loads(text)) == p
    assert json.dumps(MPoly.from_json(json.loads(text)).to_json(), sort_keys=True) == text


@given(small)
def test_print_parse_round_trip(p):
    assert parse_poly(str(p), VARS8) == p


def test_ring_is_kept():
    R = ResidueRing(16)
    p = MPoly(("x",), {(1,): 9}, R) + MPoly(("x",), {(1,): 7}, R)
    assert not p
    assert p.ring == R
    assert MPoly(("x",), {(0,): 3}).change_ring(R).ring == R
    assert MPoly(("x",), {(0,): 3}).ring == ZZ
