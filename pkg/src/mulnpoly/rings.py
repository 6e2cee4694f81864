"""Coefficient rings: ZZ, QQ, ZZ/NZ (N composite allowed) and polynomial rings over them.

A ring object knows how to put raw Python values into canonical form and how
to combine them.  ``RingElement`` pairs a ring with one canonical value and
overloads the arithmetic operators, so user code can write ``R(9) + R(9)``.

Raw values are: ``int`` for ZZ, ``Fraction`` for QQ, ``int`` in ``[0, N)`` for
ZZ/NZ and ``MPoly`` for polynomial rings.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd

import flint


class RingError(Exception):
    pass


class RingMismatch(RingError, TypeError):
    """Operands live in different rings (a usage error)."""


class NotAUnit(RingError, ArithmeticError):
    """Raised by inverse(); ``witness`` is gcd(a, N) for residue rings."""

    def __init__(self, value, ring, witness=None):
        self.value = value
        self.ring = ring
        self.witness = witness
        msg = f"{ring.format(value)} is not a unit in {ring}"
        if witness is not None:
            msg += f" (gcd = {witness})"
        super().__init__(msg)


class CapabilityError(RingError, NotImplementedError):
    """The requested decision procedure does not exist for this ring."""


class Ring:
    """Base class; subclasses are frozen dataclasses so equal rings compare equal."""

    is_field = False

    def __call__(self, value) -> RingElement:
        if isinstance(value, RingElement):
            if value.ring == self:
                return value
            return RingElement(self, self.coerce(value))
        return RingElement(self, self.coerce(value))

    # raw-value protocol ------------------------------------------------

    def coerce(self, value):
        raise NotImplementedError

    def add(self, a, b):
        return self.coerce(a + b)

    def sub(self, a, b):
        return self.coerce(a - b)

    def mul(self, a, b):
        return self.coerce(a * b)

    def neg(self, a):
        return self.coerce(-a)

    def is_zero(self, a) -> bool:
        return a == 0

    def inverse(self, a):
        raise NotImplementedError

    def is_unit(self, a) -> bool:
        try:
            self.inverse(a)
        except NotAUnit:
            return False
        return True

    def unit_ideal(self, values) -> bool:
        raise CapabilityError(f"unit ideal test is not available over {self}")

    def format(self, a) -> str:
        return str(a)

    def parse(self, text: str):
        raise NotImplementedError

    @property
    def zero(self) -> RingElement:
        return self(0)

    @property
    def one(self) -> RingElement:
        return self(1)

    @property
    def descriptor(self) -> str:
        return str(self)


@dataclass(frozen=True)
class Integers(Ring):

    def __str__(self):
        return "zz"

    def coerce(self, value):
        if isinstance(value, RingElement):
            value = value.value
        if isinstance(value, bool):
            return int(value)
        if isinstance(value, (int, flint.fmpz)):
            return int(value)
        if isinstance(value, Fraction) and value.denominator == 1:
            return int(value.numerator)
        raise RingMismatch(f"cannot interpret {value!r} as an integer")

    def inverse(self, a):
        if a in (1, -1):
            return a
        raise NotAUnit(a, self, witness=abs(a))

    def unit_ideal(self, values) -> bool:
        return reduce(gcd, values, 0) == 1

    def parse(self, text):
        return int(text.strip())


@dataclass(frozen=True)
class Rationals(Ring):
    is_field = True

    def __str__(self):
        return "qq"

    def coerce(self, value):
        if isinstance(value, RingElement):
            value = value.value
        if isinstance(value, flint.fmpq):
            return Fraction(int(value.p), int(value.q))
        if isinstance(value, (int, flint.fmpz)):
            return Fraction(int(value))
        if isinstance(value, Fraction):
            return value
        raise RingMismatch(f"cannot interpret {value!r} as a rational")

    def inverse(self, a):
        if a == 0:
            raise NotAUnit(a, self)
        return 1 / a

    def unit_ideal(self, values) -> bool:
        return any(v != 0 for v in values)

    def format(self, a):
        return str(a)

    def parse(self, text):
        return Fraction(text.strip())


@dataclass(frozen=True)
class ResidueRing(Ring):
    modulus: int

    def __post_init__(self):
        if not isinstance(self.modulus, int) or self.modulus < 2:
            raise ValueError(f"residue ring modulus must be an integer >= 2, got {self.modulus!r}")

    def __str__(self):
        return f"zmod:{self.modulus}"

    @property
    def is_field(self):
        return _is_prime(self.modulus)

    def coerce(self, value):
        if isinstance(value, RingElement):
            if isinstance(value.ring, ResidueRing):
                if value.ring.modulus % self.modulus:
                    raise RingMismatch(f"no map {value.ring} -> {self}")
            value = value.value
        if isinstance(value, bool):
            value = int(value)
        if isinstance(value, (int, flint.fmpz, flint.fmpz_mod)):
            return int(value) % self.modulus
        if isinstance(value, Fraction):
            return value.numerator * self.inverse(value.denominator % self.modulus) % self.modulus
        raise RingMismatch(f"cannot interpret {value!r} in {self}")

    def add(self, a, b):
        return (a + b) % self.modulus

    def sub(self, a, b):
        return (a - b) % self.modulus

    def mul(self, a, b):
        return (a * b) % self.modulus

    def neg(self, a):
        return -a % self.modulus

    def inverse(self, a):
        g = gcd(a, self.modulus)
        if g != 1:
            raise NotAUnit(a, self, witness=g)
        return pow(a, -1, self.modulus)

    def is_unit(self, a):
        return gcd(a, self.modulus) == 1

    def unit_ideal(self, values) -> bool:
        return reduce(gcd, values, self.modulus) == 1

    def parse(self, text):
        return int(text.strip()) % self.modulus


@dataclass(frozen=True)
class PolynomialRing(Ring):
    """base[v1, ..., vk]; the base must be ZZ, QQ or ZZ/NZ."""

    base: Ring
    variables: tuple

    def __post_init__(self):
        vs = tuple(self.variables)
        object.__setattr__(self, "variables", vs)
        if isinstance(self.base, PolynomialRing):
            raise ValueError("nested polynomial rings are not supported; list all variables at once")
        if not vs or len(set(vs)) != len(vs) or not all(isinstance(v, str) and v for v in vs):
            raise ValueError(f"polynomial ring variables must be distinct nonempty names, got {vs!r}")

    def __str__(self):
        return f"poly:{self.base}:{','.join(self.variables)}"

    def coerce(self, value):
        from .mpoly import MPoly

        if isinstance(value, RingElement):
            if value.ring == self.base:
                value = value.value
            elif value.ring == self:
                return value.value
            else:
                raise RingMismatch(f"cannot map {value.ring} into {self}")
        if isinstance(value, MPoly):
            if value.vars != self.variables or value.ring != self.base:
                raise RingMismatch(f"polynomial over {value.ring}{list(value.vars)} is not in {self}")
            return value
        return MPoly.constant(self.variables, value, self.base)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def is_zero(self, a):
        return not a

    def inverse(self, a):
        if self.is_unit(a):
            return self.coerce(self.base.inverse(self.base.coerce(a.constant_value())))
        raise NotAUnit(a, self)

    def is_unit(self, a):
        # units of a reduced base ring's polynomial ring are the constant units;
        # over ZZ/NZ with N not squarefree, 1 + (nilpotent) is a nonconstant unit
        if not a.is_constant():
            if isinstance(self.base, ResidueRing) and not _is_squarefree(self.base.modulus):
                raise CapabilityError(f"unit test in {self} needs nilpotent analysis")
            return False
        return self.base.is_unit(self.base.coerce(a.constant_value()))

    def format(self, a):
        return str(a)

    def parse(self, text):
        from .mpoly import parse_poly

        return parse_poly(text, self.variables, self.base)

    def gens(self):
        from .mpoly import MPoly

        return [RingElement(self, g) for g in MPoly.gens(self.variables, self.base)]


ZZ = Integers()
QQ = Rationals()


def GF(p: int) -> ResidueRing:
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    return ResidueRing(p)


def _is_prime(n: int) -> bool:
    return n >= 2 and bool(flint.fmpz(n).is_prime())


def _is_squarefree(n: int) -> bool:
    return all(e == 1 for _, e in flint.fmpz(n).factor())


def parse_ring(text: str) -> Ring:
    """Parse a descriptor: ``zz``, ``qq``, ``zmod:<N>``, ``poly:<base>:<v1,v2,...>``."""
    text = text.strip()
    if text == "zz":
        return ZZ
    if text == "qq":
        return QQ
    if text.startswith("zmod:"):
        try:
            n = int(text[5:])
        except ValueError:
            raise ValueError(f"bad residue ring descriptor {text!r}") from None
        return ResidueRing(n)
    if text.startswith("poly:"):
        rest = text[5:]
        base, sep, names = rest.rpartition(":")
        if not sep:
            raise ValueError(f"bad polynomial ring descriptor {text!r}")
        return PolynomialRing(parse_ring(base), tuple(v.strip() for v in names.split(",")))
    raise ValueError(f"unknown ring descriptor {text!r}")


@dataclass(frozen=True, slots=True)
class RingElement:
    ring: Ring
    value: object

    def _other(self, other):
        if isinstance(other, RingElement):
            if other.ring != self.ring:
                raise RingMismatch(f"{self.ring} vs {other.ring}")
            return other.value
        return self.ring.coerce(other)

    def __add__(self, other):
        return RingElement(self.ring, self.ring.add(self.value, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return RingElement(self.ring, self.ring.sub(self.value, self._other(other)))

    def __rsub__(self, other):
        return RingElement(self.ring, self.ring.sub(self._other(other), self.value))

    def __mul__(self, other):
        return RingElement(self.ring, self.ring.mul(self.value, self._other(other)))

    __rmul__ = __mul__

    def __neg__(self):
        return RingElement(self.ring, self.ring.neg(self.value))

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = self.ring.one
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __truediv__(self, other):
        other = RingElement(self.ring, self._other(other))
        return self * other.inverse()

    def __eq__(self, other):
        if isinstance(other, RingElement):
            return self.ring == other.ring and self.value == other.value
        try:
            return self.value == self.ring.coerce(other)
        except (RingMismatch, NotAUnit):
            return NotImplemented

    def __hash__(self):
        return hash((self.ring, self.value))

    def __bool__(self):
        return not self.ring.is_zero(self.value)

    def __str__(self):
        return self.ring.format(self.value)

    def __repr__(self):
        return f"{self.ring}({self.ring.format(self.value)})"

    def inverse(self) -> RingElement:
        return RingElement(self.ring, self.ring.inverse(self.value))

    def is_unit(self) -> bool:
        return self.ring.is_unit(self.value)

    def is_zero(self) -> bool:
        return self.ring.is_zero(self.value)


def ring_add(a: RingElement, b: RingElement) -> RingElement:
    return a + b


def ring_mul(a: RingElement, b: RingElement) -> RingElement:
    return a * b


def ring_neg(a: RingElement) -> RingElement:
    return -a


def ring_inverse(a: RingElement) -> RingElement:
    return a.inverse()


def unit_ideal_test(values) -> bool:
    """True iff the elements generate the unit ideal of their (shared) ring."""
    values = list(values)
    if not values:
        raise ValueError("unit_ideal_test needs at least one element")
    ring = values[0].ring
    for v in values:
        if v.ring != ring:
            raise RingMismatch(f"{ring} vs {v.ring}")
    return ring.unit_ideal([v.value for v in values])


def parse_element(ring: Ring, text: str) -> RingElement:
    return RingElement(ring, ring.parse(text))
