"""Exact sparse multivariate polynomials.

``MPoly`` is an immutable polynomial in an ordered tuple of named variables
with coefficients in ZZ, QQ or ZZ/NZ.  Arithmetic is delegated to FLINT
(``fmpz_mpoly``, ``fmpq_mpoly``, ``fmpz_mod_mpoly``); this module adds the
variable bookkeeping, exact division with verification, ring-morphism
substitution, weighted homogeneity and a deterministic serialization.

Canonical term order (used for printing and JSON): graded lexicographic,
descending, with the declared variable order.
"""

from __future__ import annotations

import operator
import re
from fractions import Fraction
from functools import lru_cache

import flint

from .rings import (
    ZZ,
    CapabilityError,
    NotAUnit,
    PolynomialRing,
    Rationals,
    Integers,
    ResidueRing,
    Ring,
    RingElement,
    RingMismatch,
    parse_ring,
)

A_VARS = ("a1", "a2", "a3", "a4", "a6")
GENERIC = A_VARS + ("x", "y", "z")
AFFINE = A_VARS + ("X", "Y")
TATE = ("s", "t")


class NotDivisible(ArithmeticError):
    def __init__(self, leading_term):
        self.leading_term = leading_term
        super().__init__(f"division leaves a remainder with leading term {leading_term}")


class NotHomogeneous(ValueError):
    pass


class VarMismatch(RingMismatch):
    pass


@lru_cache(maxsize=None)
def _context(names: tuple, ring: Ring, ordering: str = "deglex"):
    if isinstance(ring, Integers):
        return flint.fmpz_mpoly_ctx.get(names, ordering)
    if isinstance(ring, Rationals):
        return flint.fmpq_mpoly_ctx.get(names, ordering)
    if isinstance(ring, ResidueRing):
        return flint.fmpz_mod_mpoly_ctx.get(names, ordering=ordering, modulus=ring.modulus)
    raise RingMismatch(f"MPoly coefficients must be in zz, qq or zmod:N, not {ring}")


def _flint_divides(ring: Ring) -> bool:
    # FLINT refuses multivariate division over ZZ/NZ with N composite
    return not isinstance(ring, ResidueRing) or ring.is_field


def _to_flint(ring: Ring, c):
    c = ring.coerce(c)
    if isinstance(ring, Rationals):
        return flint.fmpq(c.numerator, c.denominator)
    return c


def _from_flint(ring: Ring, c):
    if isinstance(ring, Rationals):
        return Fraction(int(c.p), int(c.q))
    return int(c)


def order_key(e):
    return (sum(e), tuple(e))


class MPoly:
    """Polynomial over ``ring`` in the variables ``vars``.

    ``terms`` maps exponent tuples to nonzero coefficients.  Two polynomials
    interact only if they share both the variable tuple and the ring.
    """

    __slots__ = ("vars", "ring", "_p")

    def __init__(self, vars, terms=None, ring: Ring = ZZ):
        vars = tuple(vars)
        if len(set(vars)) != len(vars) or not all(isinstance(v, str) and v for v in vars):
            raise ValueError(f"variables must be distinct nonempty names, got {vars!r}")
        ctx = _context(vars, ring)
        d = {}
        for e, c in (terms or {}).items():
            e = tuple(int(k) for k in e)
            if len(e) != len(vars) or min(e, default=0) < 0:
                raise ValueError(f"bad exponent vector {e} for variables {vars}")
            c = ring.coerce(c)
            if c != 0:
                d[e] = _to_flint(ring, c)
        self.vars = vars
        self.ring = ring
        self._p = ctx.from_dict(d)

    @classmethod
    def _wrap(cls, p, vars, ring) -> MPoly:
        obj = cls.__new__(cls)
        obj.vars = vars
        obj.ring = ring
        obj._p = p
        return obj

    @classmethod
    def constant(cls, vars, c, ring: Ring = ZZ) -> MPoly:
        vars = tuple(vars)
        return cls(vars, {(0,) * len(vars): c}, ring)

    @classmethod
    def zero(cls, vars, ring: Ring = ZZ) -> MPoly:
        return cls(vars, None, ring)

    @classmethod
    def gen(cls, vars, name, ring: Ring = ZZ) -> MPoly:
        vars = tuple(vars)
        e = [0] * len(vars)
        e[vars.index(name)] = 1
        return cls(vars, {tuple(e): 1}, ring)

    @classmethod
    def gens(cls, vars, ring: Ring = ZZ) -> list:
        return [cls.gen(vars, v, ring) for v in vars]

    @property
    def ctx(self):
        return _context(self.vars, self.ring)

    # --- inspection -------------------------------------------------------

    @property
    def terms(self) -> dict:
        r = self.ring
        return {tuple(map(int, e)): _from_flint(r, c) for e, c in zip(self._p.monoms(), self._p.coeffs())}

    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda t: order_key(t[0]), reverse=True)

    def __len__(self):
        return len(self._p)

    def __bool__(self):
        return not self._p.is_zero()

    def is_constant(self) -> bool:
        return self._p.is_constant()

    def constant_value(self):
        return self.terms.get((0,) * len(self.vars), self.ring.coerce(0))

    def degree(self, var) -> int:
        """Degree in one variable; -1 for the zero polynomial."""
        if not self:
            return -1
        return int(self._p.degrees()[self._index(var)])

    def total_degree(self) -> int:
        if not self:
            return -1
        return int(self._p.total_degree())

    def coefficient(self, exps) -> object:
        return self.terms.get(tuple(exps), self.ring.coerce(0))

    def leading_term(self):
        if not self:
            return None
        return self.sorted_terms()[0]

    def _index(self, var) -> int:
        if isinstance(var, int):
            return var
        try:
            return self.vars.index(var)
        except ValueError:
            raise VarMismatch(f"{var!r} is not one of {self.vars}") from None

    # --- arithmetic -------------------------------------------------------

    def _operand(self, other):
        if isinstance(other, MPoly):
            if other.vars != self.vars:
                raise VarMismatch(f"variables {self.vars} vs {other.vars}")
            if other.ring != self.ring:
                raise RingMismatch(f"coefficients in {self.ring} vs {other.ring}")
            return other._p
        if isinstance(other, RingElement):
            if isinstance(other.ring, PolynomialRing):
                return self._operand(other.value)
            if other.ring != self.ring and not isinstance(other.ring, Integers):
                raise RingMismatch(f"{other.ring} scalar with {self.ring} polynomial")
            other = other.value
        if isinstance(other, (int, Fraction, flint.fmpz, flint.fmpq)):
            return _to_flint(self.ring, other)
        return NotImplemented

    def _new(self, p) -> MPoly:
        return MPoly._wrap(p, self.vars, self.ring)

    def __add__(self, other):
        o = self._operand(other)
        if o is NotImplemented:
            return o
        return self._new(self._p + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._operand(other)
        if o is NotImplemented:
            return o
        return self._new(self._p - o)

    def __rsub__(self, other):
        o = self._operand(other)
        if o is NotImplemented:
            return o
        return self._new(o - self._p)

    def __mul__(self, other):
        o = self._operand(other)
        if o is NotImplemented:
            return o
        return self._new(self._p * o)

    __rmul__ = __mul__

    def __neg__(self):
        return self._new(-self._p)

    def __pow__(self, k: int):
        k = operator.index(k)
        if k < 0:
            raise ValueError("exponent must be a non-negative integer")
        return self._new(self._p ** k)

    def __eq__(self, other):
        if isinstance(other, MPoly):
            return self.vars == other.vars and self.ring == other.ring and self._p == other._p
        try:
            o = self._operand(other)
        except RingMismatch:
            return False
        if o is NotImplemented:
            return NotImplemented
        return self._p == self.ctx.from_dict({(0,) * len(self.vars): o} if o != 0 else {})

    def __hash__(self):
        return hash((self.vars, self.ring, tuple(self.sorted_terms())))

    def divexact(self, den) -> MPoly:
        """Quotient q with q * den == self, or NotDivisible.

        Division is by the leading term in the canonical order; the result is
        checked by one multiplication before it is returned.
        """
        if not isinstance(den, MPoly):
            den = MPoly.constant(self.vars, den, self.ring)
        self._operand(den)
        if not den:
            raise ZeroDivisionError("division by the zero polynomial")
        if _flint_divides(self.ring):
            q, r = divmod(self._p, den._p)
            q, r = self._new(q), self._new(r)
        else:
            q, r = _divrem_python(self, den)
        if r:
            raise NotDivisible(r.leading_term())
        if q * den != self:
            raise ArithmeticError("exact division failed its multiplication check")
        return q

    def leading_in(self, var):
        """(d, c) with self = c * var**d + (terms of lower degree in var); c is var-free."""
        i = self._index(var)
        d = self.degree(i)
        if d < 0:
            raise ValueError("the zero polynomial has no leading coefficient")
        if _flint_divides(self.ring):
            g = self.ctx.gens()[i]
            return d, self._new(self._p // g ** d)
        terms = {}
        for e, c in self.terms.items():
            if e[i] == d:
                terms[e[:i] + (0,) + e[i + 1:]] = c
        return d, MPoly(self.vars, terms, self.ring)

    # --- change of variables / ring --------------------------------------

    def change_vars(self, new_vars) -> MPoly:
        """Re-express in ``new_vars``; every variable that occurs must be kept."""
        new_vars = tuple(new_vars)
        if new_vars == self.vars:
            return self
        target = _context(new_vars, self.ring)
        if not self.vars:
            return MPoly._wrap(target.from_dict({(0,) * len(new_vars): self._p.coeffs()[0]} if self else {}),
                               new_vars, self.ring)
        degs = self._p.degrees() if self else [0] * len(self.vars)
        images = []
        for v, d in zip(self.vars, degs):
            if v in new_vars:
                images.append(target.gens()[new_vars.index(v)])
            elif d > 0:
                raise VarMismatch(f"variable {v} occurs but is missing from {new_vars}")
            else:
                images.append(target.from_dict({}))
        return MPoly._wrap(self._p.compose(*images, ctx=target), new_vars, self.ring)

    def change_ring(self, ring: Ring) -> MPoly:
        """Image under the canonical map to ``ring`` (reduction, lift of residues, or ZZ -> QQ)."""
        if ring == self.ring:
            return self
        if isinstance(ring, Integers) and isinstance(self.ring, ResidueRing):
            return MPoly(self.vars, self.terms, ring)
        if isinstance(ring, ResidueRing) and isinstance(self.ring, ResidueRing):
            if self.ring.modulus % ring.modulus:
                raise RingMismatch(f"no map {self.ring} -> {ring}")
        if isinstance(ring, ResidueRing) and not isinstance(self.ring, Rationals):
            N = ring.modulus
            d = {}
            for e, c in zip(self._p.monoms(), self._p.coeffs()):
                c = int(c) % N
                if c:
                    d[e] = c
            return MPoly._wrap(_context(self.vars, ring).from_dict(d), self.vars, ring)
        return MPoly(self.vars, self.terms, ring)

    def substitute(self, bindings):
        """Apply the ring morphism sending each bound variable to its image.

        Images are MPolys (sharing variables and ring), RingElements, or ints.
        Unbound variables are kept and must occur among the image variables.
        If every variable is bound to a scalar the result is a RingElement.
        """
        bindings = dict(bindings)
        extra = set(bindings) - set(self.vars)
        if extra:
            raise VarMismatch(f"cannot bind {sorted(extra)}: not among {self.vars}")
        if not bindings:
            return self
        polys = []
        for k, v in bindings.items():
            if isinstance(v, RingElement) and isinstance(v.ring, PolynomialRing):
                bindings[k] = v = v.value
            if isinstance(v, MPoly):
                polys.append(v)
        scalar_rings = {v.ring for v in bindings.values()
                        if isinstance(v, RingElement) and not isinstance(v.ring, Integers)}
        if polys:
            tvars, tring = polys[0].vars, polys[0].ring
            for q in polys:
                if q.vars != tvars or q.ring != tring:
                    raise RingMismatch("substitution images must share variables and ring")
            if scalar_rings - {tring}:
                raise RingMismatch("scalar images must live in the coefficient ring of the polynomial images")
        else:
            tvars = tuple(v for v in self.vars if v not in bindings)
            if len(scalar_rings) > 1:
                raise RingMismatch(f"scalar images in several rings: {scalar_rings}")
            tring = scalar_rings.pop() if scalar_rings else self.ring
        for v in self.vars:
            if v not in bindings and v not in tvars:
                raise VarMismatch(f"variable {v} is neither bound nor retained in {tvars}")

        src = self
        work = tring
        if tring != self.ring:
            if isinstance(self.ring, Integers) and isinstance(tring, ResidueRing):
                work = ZZ      # substitute over ZZ, reduce afterwards
            else:
                src = self.change_ring(tring)

        def image(v):
            if v not in bindings:
                return MPoly.gen(tvars, v, work)
            b = bindings[v]
            if isinstance(b, MPoly):
                return b.change_ring(work)
            if isinstance(b, RingElement):
                b = b.value
            return MPoly.constant(tvars, b, work) if tvars else work.coerce(b)

        images = [image(v) for v in self.vars]
        if not tvars:
            vals = [_to_flint(work, c) for c in images]
            value = src._p(*vals) if self.vars else src.constant_value()
            return RingElement(tring, tring.coerce(_from_flint(work, value) if self.vars else value))
        ctx = _context(tvars, work)
        if self.vars:
            p = src._p.compose(*[q._p for q in images], ctx=ctx)
        else:
            p = MPoly.constant(tvars, src.constant_value(), work)._p
        return MPoly._wrap(p, tvars, work).change_ring(tring)

    def eval(self, *values):
        """Fast full evaluation at raw coefficient-ring values; returns a raw value."""
        if len(values) != len(self.vars):
            raise ValueError(f"expected {len(self.vars)} values")
        if not self.vars:
            return self.constant_value()
        return _from_flint(self.ring, self._p(*[_to_flint(self.ring, v) for v in values]))

    # --- homogeneity -------------------------------------------------------

    def homogeneous_degree(self, weights) -> int:
        """Common weighted degree of all terms; raises NotHomogeneous otherwise."""
        if isinstance(weights, dict):
            weights = [weights.get(v, 0) for v in self.vars]
        weights = [int(w) for w in weights]
        if len(weights) != len(self.vars):
            raise ValueError("one weight per variable is required")
        if any(w < 0 for w in weights):
            raise ValueError("weights must be non-negative")
        if not self:
            raise ValueError("the zero polynomial has no degree")
        w = "w"
        while w in self.vars:
            w += "_"
        big = self.vars + (w,)
        ctx = _context(big, self.ring)
        gens = ctx.gens()
        tw = gens[-1]
        scaled = self._p.compose(*[g * tw ** k for g, k in zip(gens, weights)], ctx=ctx)
        d = int(scaled.degrees()[-1])
        if scaled != self._p.compose(*gens[:-1], ctx=ctx) * tw ** d:
            raise NotHomogeneous(f"terms of different weighted degree (max {d})")
        return d

    # --- serialization ----------------------------------------------------

    def to_json(self) -> dict:
        out = {"vars": list(self.vars),
               "terms": [{"c": str(c), "e": list(e)} for e, c in self.sorted_terms()]}
        if self.ring != ZZ:
            out["ring"] = str(self.ring)
        return out

    @classmethod
    def from_json(cls, data) -> MPoly:
        ring = parse_ring(data.get("ring", "zz"))
        terms = {}
        for t in data["terms"]:
            e = tuple(t["e"])
            if e in terms:
                raise ValueError(f"duplicate exponent {e}")
            c = ring.parse(t["c"])
            if c == 0:
                raise ValueError("zero coefficients are not stored")
            terms[e] = c
        p = cls(data["vars"], terms, ring)
        return p

    def __str__(self):
        if not self:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(v if k == 1 else f"{v}^{k}" for v, k in zip(self.vars, e) if k)
            cs = str(c)
            if not mono:
                body = cs
            elif cs == "1":
                body = mono
            elif cs == "-1":
                body = "-" + mono
            else:
                if isinstance(c, Fraction) and c.denominator != 1:
                    cs = f"({cs})"
                body = f"{cs}*{mono}"
            parts.append(body)
        s = parts[0]
        for b in parts[1:]:
            s += " - " + b[1:] if b.startswith("-") else " + " + b
        return s

    def __repr__(self):
        return f"MPoly({self.ring}[{','.join(self.vars)}]: {self})"


def _divrem_python(num: MPoly, den: MPoly):
    """Division by the leading term over any coefficient ring whose leading coefficient is a unit."""
    ring = num.ring
    dterms = den.terms
    lead = max(dterms, key=order_key)
    try:
        lc_inv = ring.inverse(dterms[lead])
    except NotAUnit:
        raise CapabilityError(f"leading coefficient of the divisor is not a unit in {ring}") from None
    rem = dict(num.terms)
    quo, out = {}, {}
    while rem:
        e = max(rem, key=order_key)
        c = rem.pop(e)
        if all(a >= b for a, b in zip(e, lead)):
            m = tuple(a - b for a, b in zip(e, lead))
            f = ring.mul(c, lc_inv)
            quo[m] = ring.add(quo.get(m, 0), f)
            for de, dc in dterms.items():
                if de == lead:
                    continue
                k = tuple(a + b for a, b in zip(m, de))
                v = ring.sub(rem.get(k, 0), ring.mul(f, dc))
                if v == 0:
                    rem.pop(k, None)
                else:
                    rem[k] = v
        else:
            out[e] = c
    return MPoly(num.vars, quo, ring), MPoly(num.vars, out, ring)


# --- module-level operations -------------------------------------------------

def poly_add(p: MPoly, q: MPoly) -> MPoly:
    return p + q


def poly_mul(p: MPoly, q: MPoly) -> MPoly:
    return p * q


def poly_neg(p: MPoly) -> MPoly:
    return -p


def poly_pow(p: MPoly, k: int) -> MPoly:
    return p ** k


def poly_divexact(num: MPoly, den: MPoly) -> MPoly:
    return num.divexact(den)


def poly_substitute(p: MPoly, bindings):
    return p.substitute(bindings)


def poly_homogeneous_degree(p: MPoly, weights) -> int:
    return p.homogeneous_degree(weights)


# --- parsing ----------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


def parse_poly(text: str, vars, ring: Ring = ZZ) -> MPoly:
    """Parse the plain-text form, e.g. ``2*x*y^3 - 18*x*y*z^2`` or ``1+s``."""
    vars = tuple(vars)
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse {text!r} at position {pos}")
        pos = m.end()
        num, name, op = m.groups()
        if num is not None:
            tokens.append(("num", int(num)))
        elif name is not None:
            if name not in vars:
                raise VarMismatch(f"unknown variable {name!r} (expected one of {vars})")
            tokens.append(("var", name))
        else:
            tokens.append(("op", "^" if op == "**" else op))
    tokens.append(("end", None))
    i = 0

    def peek():
        return tokens[i]

    def take():
        nonlocal i
        i += 1
        return tokens[i - 1]

    def expr():
        acc = term()
        while peek() in (("op", "+"), ("op", "-")):
            op = take()[1]
            rhs = term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term():
        acc = unary()
        while peek() in (("op", "*"), ("op", "/")):
            op = take()[1]
            rhs = unary()
            if op == "*":
                acc = acc * rhs
            else:
                if not rhs.is_constant() or not rhs:
                    raise ValueError("only division by a nonzero constant is supported")
                c = ring.coerce(rhs.constant_value())
                acc = acc * MPoly.constant(vars, ring.inverse(c), ring) if ring.is_unit(c) else acc.divexact(rhs)
        return acc

    def unary():
        if peek() == ("op", "-"):
            take()
            return -unary()
        if peek() == ("op", "+"):
            take()
            return unary()
        return power()

    def power():
        base = atom()
        if peek() == ("op", "^"):
            take()
            # exponents are integers, never elements of the coefficient ring
            kind, k = take()
            if kind != "num":
                raise ValueError("exponents must be non-negative integer literals")
            return base ** k
        return base

    def atom():
        kind, val = take()
        if kind == "num":
            return MPoly.constant(vars, val, ring)
        if kind == "var":
            return MPoly.gen(vars, val, ring)
        if (kind, val) == ("op", "("):
            inner = expr()
            if take() != ("op", ")"):
                raise ValueError(f"unbalanced parentheses in {text!r}")
            return inner
        raise ValueError(f"unexpected token {val!r} in {text!r}")

    result = expr()
    if peek()[0] != "end":
        raise ValueError(f"trailing input in {text!r}")
    return result
