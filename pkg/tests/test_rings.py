from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given
from hypothesis import strategies as st

from mulnpoly.mpoly import MPoly
from mulnpoly.rings import (
    QQ,
    ZZ,
    CapabilityError,
    NotAUnit,
    PolynomialRing,
    ResidueRing,
    RingMismatch,
    parse_element,
    parse_ring,
    ring_add,
    ring_inverse,
    ring_mul,
    ring_neg,
    unit_ideal_test,
)

from .conftest import mpolys

Z16 = ResidueRing(16)


def test_examples():
    assert ring_add(Z16(9), Z16(9)) == Z16(2)
    assert ring_mul(ZZ(-3), ZZ(4)) == ZZ(-12)
    assert ring_add(QQ(Fraction(1, 2)), QQ(Fraction(1, 3))) == QQ(Fraction(5, 6))
    assert ring_inverse(Z16(1)) == Z16(1)
    assert ring_inverse(ResidueRing(15)(2)) == ResidueRing(15)(8)


def test_not_a_unit_carries_gcd():
    with pytest.raises(NotAUnit) as info:
        ring_inverse(Z16(8))
    assert info.value.witness == 8


def test_unit_ideal_examples():
    assert unit_ideal_test([Z16(0), Z16(0), Z16(1)])
    assert not unit_ideal_test([Z16(4), Z16(8), Z16(12)])
    assert unit_ideal_test([ZZ(6), ZZ(10), ZZ(15)])
    assert not unit_ideal_test([ZZ(6), ZZ(10), ZZ(14)])
    assert unit_ideal_test([QQ(0), QQ(Fraction(1, 7))])
    assert not unit_ideal_test([QQ(0), QQ(0)])


def test_unit_ideal_unavailable_for_multivariate():
    R = PolynomialRing(ZZ, ("u", "v"))
    u, v = R.gens()
    with pytest.raises(CapabilityError):
        unit_ideal_test([u, v])


def test_mismatch():
    with pytest.raises(RingMismatch):
        ring_add(Z16(1), ResidueRing(15)(1))
    with pytest.raises(RingMismatch):
        unit_ideal_test([Z16(1), ZZ(1)])


def test_canonical_forms():
    assert Z16(-1).value == 15
    assert QQ(Fraction(2, -4)).value == Fraction(-1, 2)
    with pytest.raises(ValueError):
        ResidueRing(1)
    with pytest.raises(ValueError):
        PolynomialRing(ZZ, ("u", "u"))


@pytest.mark.parametrize("text", ["zz", "qq", "zmod:16", "zmod:1009", "poly:zz:s,t", "poly:zmod:7:u,v"])
def test_descriptor_round_trip(text):
    assert str(parse_ring(text)) == text


@pytest.mark.parametrize("text", ["", "zmod:x", "poly:zz", "reals"])
def test_bad_descriptors(text):
    with pytest.raises(ValueError):
        parse_ring(text)


moduli = st.integers(2, 60)
rationals = st.fractions(max_denominator=50).filter(lambda q: abs(q.numerator) < 10 ** 6)


def _axioms(a, b, c):
    zero, one = a.ring.zero, a.ring.one
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert a + zero == a and a * one == a
    assert a + ring_neg(a) == zero


@given(st.integers(), st.integers(), st.integers())
def test_axioms_zz(a, b, c):
    _axioms(ZZ(a), ZZ(b), ZZ(c))


@given(rationals, rationals, rationals)
def test_axioms_qq(a, b, c):
    _axioms(QQ(a), QQ(b), QQ(c))


@given(moduli, st.integers(), st.integers(), st.integers())
def test_axioms_zmod(n, a, b, c):
    R = ResidueRing(n)
    _axioms(R(a), R(b), R(c))
    assert 0 <= R(a).value < n


@given(mpolys(("u", "v"), max_terms=6, max_exp=3), mpolys(("u", "v"), max_terms=6, max_exp=3),
       mpolys(("u", "v"), max_terms=6, max_exp=3))
def test_axioms_poly(p, q, r):
    R = PolynomialRing(ZZ, ("u", "v"))
    _axioms(R(p), R(q), R(r))


@given(moduli, st.integers())
def test_inverse_iff_unit_ideal(n, a):
    R = ResidueRing(n)
    x = R(a)
    unit = unit_ideal_test([x])
    assert unit == (gcd(a, n) == 1)
    if unit:
        assert x * ring_inverse(x) == R.one
    else:
        with pytest.raises(NotAUnit) as info:
            ring_inverse(x)
        assert info.value.witness == gcd(a, n)


@given(st.integers())
def test_inverse_iff_unit_ideal_zz(a):
    x = ZZ(a)
    assert unit_ideal_test([x]) == (abs(a) == 1)
    if abs(a) != 1:
        with pytest.raises(NotAUnit):
            ring_inverse(x)


@given(moduli, st.integers())
def test_parse_print_zmod(n, a):
    R = ResidueRing(n)
    assert parse_element(R, str(R(a))) == R(a)


@given(rationals)
def test_parse_print_qq(q):
    assert parse_element(QQ, str(QQ(q))) == QQ(q)


@given(st.integers())
def test_parse_print_zz(a):
    assert parse_element(ZZ, str(ZZ(a))) == ZZ(a)


@given(mpolys(("u", "v"), max_terms=10))
def test_parse_print_poly(p):
    R = PolynomialRing(ZZ, ("u", "v"))
    assert parse_element(R, str(R(p))) == R(p)


def test_poly_ring_over_residues():
    R = parse_ring("poly:zmod:7:u,v")
    u, v = R.gens()
    assert (u + v) ** 7 == u ** 7 + v ** 7
    assert isinstance((u * v).value, MPoly)
