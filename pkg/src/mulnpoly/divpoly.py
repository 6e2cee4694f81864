"""Division polynomials and their companions in the affine coordinate ring.

The ring is R[params][X, Y] / (W') with

    W' = Y^2 + a1*X*Y + a3*Y - X^3 - a2*X^2 - a4*X - a6,

where the five coefficients are polynomials in ``params`` (the universal
case uses params = a1..a6; the Tate family uses params = s, t; a concrete
curve uses no params at all).

Psi_n is kept as a pure-X *core*: Psi_n = core_n for odd n and
Psi_n = Psi_2 * core_n for even n.  Since Psi_2^2 reduces to the cubic
F = 4X^3 + b2 X^2 + 2 b4 X + b6, every recurrence step is a product of
pure-X polynomials and the division by Psi_2 disappears.
"""

from __future__ import annotations

from fractions import Fraction

from .mpoly import A_VARS, TATE, MPoly, _context, _flint_divides
from .rings import ZZ, Integers, Rationals, ResidueRing, Ring


class ExactnessViolation(ArithmeticError):
    """A division that must be exact was not: always an implementation bug."""


def b_invariants(a1, a2, a3, a4, a6):
    b2 = a1 * a1 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3 * a3 + 4 * a6
    b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    return b2, b4, b6, b8


def discriminant_from_b(b2, b4, b6, b8):
    return -b2 * b2 * b8 - 8 * b4 ** 3 - 27 * b6 * b6 + 9 * b2 * b4 * b6


def generic_discriminant() -> MPoly:
    """Delta as a polynomial in a1, a2, a3, a4, a6."""
    return discriminant_from_b(*b_invariants(*MPoly.gens(A_VARS)))


class CoordinateRing:
    """R[params][X, Y]/(W') for a fixed coefficient tuple."""

    def __init__(self, a, params=(), ring: Ring = ZZ):
        self.params = tuple(params)
        self.ring = ring
        self.vars = self.params + ("X", "Y")
        self.a = tuple(self._lift(c) for c in a)
        if len(self.a) != 5:
            raise ValueError("five Weierstrass coefficients a1, a2, a3, a4, a6 are required")
        self.X = MPoly.gen(self.vars, "X", ring)
        self.Y = MPoly.gen(self.vars, "Y", ring)
        a1, a2, a3, a4, a6 = self.a
        X, Y = self.X, self.Y
        self.rhs = X ** 3 + a2 * X ** 2 + a4 * X + a6   # Y^2 + lin*Y = rhs
        self.lin = a1 * X + a3
        self.W = Y ** 2 + self.lin * Y - self.rhs
        self.x_cubed = Y ** 2 + a1 * X * Y + a3 * Y - a2 * X ** 2 - a4 * X - a6
        self.b = tuple(b_invariants(*self.a))
        b2, b4, b6, b8 = self.b
        self.F = 4 * X ** 3 + b2 * X ** 2 + 2 * b4 * X + b6
        self.psi2 = 2 * Y + self.lin

    def _lift(self, c) -> MPoly:
        if isinstance(c, MPoly):
            if c.ring != self.ring:
                c = c.change_ring(self.ring)
            return c.change_vars(self.vars)
        return MPoly.constant(self.vars, c, self.ring)

    def element(self, p, form="yrep") -> AffineCurveElement:
        p = self._lift(p)
        if form == "yrep":
            return AffineCurveElement(self, self.yreduce(p), "yrep")
        return AffineCurveElement(self, canonical_xrep_poly(p, self), "xrep")

    def yreduce(self, p: MPoly) -> MPoly:
        """Rewrite Y^2 -> rhs - lin*Y until the Y-degree is at most 1."""
        while p.degree("Y") > 1:
            d, c = p.leading_in("Y")
            ypow = self.Y ** (d - 2)
            p = p - c * ypow * self.W
        return p


class AffineCurveElement:
    """A residue class stored as YREP (Y-degree <= 1) or XREP (X-degree <= 2)."""

    __slots__ = ("cr", "poly", "form")

    def __init__(self, cr: CoordinateRing, poly: MPoly, form: str):
        self.cr = cr
        self.poly = poly
        self.form = form

    def _coerce(self, other):
        if isinstance(other, AffineCurveElement):
            if other.cr is not self.cr and other.cr.vars != self.cr.vars:
                raise ValueError("elements of different coordinate rings")
            return other.yrep().poly
        return self.cr._lift(other)

    def yrep(self) -> AffineCurveElement:
        if self.form == "yrep":
            return self
        return AffineCurveElement(self.cr, self.cr.yreduce(self.poly), "yrep")

    def xrep(self, method="auto") -> AffineCurveElement:
        if self.form == "xrep":
            return self
        return AffineCurveElement(self.cr, canonical_xrep_poly(self.poly, self.cr, method), "xrep")

    def parts(self) -> list:
        """YREP: [p0, p1] with value p0 + p1*Y; XREP: [q0, q1, q2] with value q0 + q1*X + q2*X^2.

        Each part lives in the variables of the coordinate ring minus the one eliminated.
        """
        var, count = ("Y", 2) if self.form == "yrep" else ("X", 3)
        i = self.cr.vars.index(var)
        vars_ = self.cr.vars[:i] + self.cr.vars[i + 1:]
        buckets = [dict() for _ in range(count)]
        for e, c in self.poly.terms.items():
            buckets[e[i]][e[:i] + e[i + 1:]] = c
        return [MPoly(vars_, b, self.cr.ring) for b in buckets]

    def __add__(self, other):
        return AffineCurveElement(self.cr, self.yrep().poly + self._coerce(other), "yrep")

    __radd__ = __add__

    def __sub__(self, other):
        return AffineCurveElement(self.cr, self.yrep().poly - self._coerce(other), "yrep")

    def __neg__(self):
        return AffineCurveElement(self.cr, -self.poly, self.form)

    def __mul__(self, other):
        return AffineCurveElement(self.cr, self.cr.yreduce(self.yrep().poly * self._coerce(other)), "yrep")

    __rmul__ = __mul__

    def __pow__(self, k):
        out = self.cr.element(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, AffineCurveElement) or isinstance(other, (int, MPoly)):
            return self.yrep().poly == self._coerce(other)
        return NotImplemented

    def __hash__(self):
        return hash(self.yrep().poly)

    def __bool__(self):
        return bool(self.poly)

    def is_zero(self):
        return not self.poly

    def __call__(self, X, Y, *params):
        """Raw value at a point; params first if any (matches the variable order)."""
        return self.poly.eval(*params, X, Y)

    def to_json(self) -> dict:
        return {"form": self.form, "parts": [p.to_json() for p in self.parts()]}

    def __repr__(self):
        return f"<{self.form} {self.poly}>"


# --- canonical X-degree <= 2 representative ---------------------------------

def canonical_xrep_poly(p: MPoly, cr: CoordinateRing, method: str = "auto") -> MPoly:
    """Unique representative of p mod W' with X-degree at most 2.

    ``flint`` divides by W' (monic in X up to sign) in a lex order with X
    first; ``horner`` rewrites X^3 -> x_cubed digit by digit.  ``auto`` uses
    flint where it supports division and horner otherwise.
    """
    if method == "auto":
        method = "flint" if _flint_divides(cr.ring) else "horner"
    if method == "flint":
        return _xrep_flint(p, cr)
    if method == "horner":
        return _xrep_horner(p, cr)
    raise ValueError(f"unknown method {method!r}")


def _lex_ctx(cr: CoordinateRing):
    names = ("X", "Y") + cr.params
    return names, _context(names, cr.ring, "lex")


def _xrep_flint(p: MPoly, cr: CoordinateRing) -> MPoly:
    if p.degree("X") <= 2:
        return p
    names, lex = _lex_ctx(cr)
    g = lex.gens()
    to_lex = [g[names.index(v)] for v in cr.vars]
    back_ctx = _context(cr.vars, cr.ring)
    bg = back_ctx.gens()
    from_lex = [bg[cr.vars.index(v)] for v in names]
    w = cr.W._p.compose(*to_lex, ctx=lex)
    r = p._p.compose(*to_lex, ctx=lex) % w
    return MPoly._wrap(r.compose(*from_lex, ctx=back_ctx), cr.vars, cr.ring)


def _xrep_horner(p: MPoly, cr: CoordinateRing) -> MPoly:
    """Split p into base-X^3 digits D_k (X-degree <= 2) and evaluate sum D_k * T^k by Horner."""
    ix = cr.vars.index("X")
    digits = {}
    for e, c in p.terms.items():
        k, r = divmod(e[ix], 3)
        digits.setdefault(k, {})[e[:ix] + (r,) + e[ix + 1:]] = c
    if not digits:
        return p
    top = max(digits)
    T = cr.x_cubed
    acc = MPoly.zero(cr.vars, cr.ring)
    for k in range(top, -1, -1):
        acc = _reduce_low(acc * T, cr, ix) + MPoly(cr.vars, digits.get(k, {}), cr.ring)
    return acc


def _reduce_low(q: MPoly, cr: CoordinateRing, ix: int) -> MPoly:
    # q has X-degree <= 4 after one multiplication by T; rewrite X^4, then X^3
    while True:
        terms = q.terms
        d = max((e[ix] for e in terms), default=0)
        if d <= 2:
            return q
        lead, rest = {}, {}
        for e, c in terms.items():
            if e[ix] == d:
                lead[e[:ix] + (0,) + e[ix + 1:]] = c
            else:
                rest[e] = c
        c = MPoly(cr.vars, lead, cr.ring)
        q = MPoly(cr.vars, rest, cr.ring) + c * cr.X ** (d - 3) * cr.x_cubed


# --- order at infinity and leading coefficient -------------------------------

def _xrep_split(e: AffineCurveElement):
    x = e.xrep()
    q = x.poly
    ix = x.cr.vars.index("X")
    if _flint_divides(x.cr.ring):
        X = x.cr.X
        parts = []
        for i in (2, 1):
            c = MPoly._wrap(q._p // (X._p ** i), q.vars, q.ring)
            parts.append((i, c))
            q = q - c * X ** i
        parts.append((0, q))
        return parts
    buckets = {0: {}, 1: {}, 2: {}}
    for ex, c in q.terms.items():
        buckets[ex[ix]][ex[:ix] + (0,) + ex[ix + 1:]] = c
    return [(i, MPoly(q.vars, buckets[i], q.ring)) for i in (2, 1, 0)]


def _yrep_split(e: AffineCurveElement):
    p = e.poly
    if _flint_divides(e.cr.ring):
        Y = e.cr.Y
        p1 = MPoly._wrap(p._p // Y._p, p.vars, p.ring)
        return [(1, p1), (0, p - p1 * Y)]
    iy = e.cr.vars.index("Y")
    buckets = {0: {}, 1: {}}
    for ex, c in p.terms.items():
        buckets[ex[iy]][ex[:iy] + (0,) + ex[iy + 1:]] = c
    return [(j, MPoly(p.vars, buckets[j], p.ring)) for j in (1, 0)]


def _top_monomial(e: AffineCurveElement):
    # X^i Y^j has pole order 2i + 3j; in either canonical form these orders are
    # pairwise distinct, so the top monomial is read off whichever form e is in
    if e.is_zero():
        raise ValueError("the zero element has no order at infinity")
    best = None
    if e.form == "yrep":
        for j, c in _yrep_split(e):
            if c:
                i, lc = c.leading_in("X")
                if best is None or 2 * i + 3 * j > best[0]:
                    best = (2 * i + 3 * j, lc)
        return best
    for i, c in _xrep_split(e):
        if c:
            j, lc = c.leading_in("Y")
            if best is None or 2 * i + 3 * j > best[0]:
                best = (2 * i + 3 * j, lc)
    return best


def ord0(e: AffineCurveElement) -> int:
    """Order at the point at infinity: -max(2i + 3j) over the monomials X^i Y^j of e."""
    return -_top_monomial(e)[0]


def leading_coeff(e: AffineCurveElement) -> MPoly:
    """Coefficient (a polynomial in the params) of the monomial of lowest order."""
    return _top_monomial(e)[1]


# --- the ladder --------------------------------------------------------------

class DivPolyLadder:
    """Memoized Psi_n, Phi_n, Omega_n for one coefficient tuple.

    Over ZZ/NZ the recurrences run modulo 2N so that the final halving in
    Omega_n lands exactly in ZZ/NZ; everything returned lives over ``ring``.
    """

    def __init__(self, a, params=(), ring: Ring = ZZ):
        self.params = tuple(params)
        self.ring = ring
        if isinstance(ring, ResidueRing):
            self.work_ring = ResidueRing(2 * ring.modulus)
            a = [_lift_residue(c, ring) for c in a]
        else:
            self.work_ring = ring
        self.work = CoordinateRing(a, self.params, self.work_ring)
        self.cr = self.work if self.work_ring == ring else CoordinateRing(
            [c.change_ring(ring) for c in self.work.a], self.params, ring)
        self.vars = self.cr.vars
        self._cores = []
        self._cache = {}

    @classmethod
    def generic(cls) -> DivPolyLadder:
        return cls(MPoly.gens(A_VARS), A_VARS, ZZ)

    @classmethod
    def tate(cls) -> DivPolyLadder:
        s, t = MPoly.gens(TATE)
        return cls([1 + s, t, t, 0, 0], TATE, ZZ)

    @classmethod
    def over(cls, coeffs, ring: Ring) -> DivPolyLadder:
        """Ladder for a concrete curve; coeffs are five values of ``ring``."""
        return cls([ring.coerce(c) for c in coeffs], (), ring)

    @property
    def is_generic(self):
        return self.params == A_VARS

    # cores ---------------------------------------------------------------

    def core(self, n: int) -> MPoly:
        """Pure-X core over the working ring (sign-odd: core(-n) = -core(n))."""
        m = abs(n)
        while len(self._cores) <= m:
            self._cores.append(self._next_core(len(self._cores)))
        c = self._cores[m]
        return -c if n < 0 else c

    def _next_core(self, n):
        cr = self.work
        X = cr.X
        b2, b4, b6, b8 = cr.b
        if n == 0:
            return MPoly.zero(cr.vars, cr.ring)
        if n in (1, 2):
            return MPoly.constant(cr.vars, 1, cr.ring)
        if n == 3:
            return 3 * X ** 4 + b2 * X ** 3 + 3 * b4 * X ** 2 + 3 * b6 * X + b8
        if n == 4:
            return (2 * X ** 6 + b2 * X ** 5 + 5 * b4 * X ** 4 + 10 * b6 * X ** 3 + 10 * b8 * X ** 2
                    + (b2 * b8 - b4 * b6) * X + (b4 * b8 - b6 * b6))
        k, odd = divmod(n, 2)
        c = self.core
        if odd:
            F2 = cr.F ** 2
            if k % 2 == 0:
                return F2 * c(k + 2) * c(k) ** 3 - c(k - 1) * c(k + 1) ** 3
            return c(k + 2) * c(k) ** 3 - F2 * c(k - 1) * c(k + 1) ** 3
        return c(k) * self._d(k)

    def _d(self, n):
        # D(n) = core(2n)/core(n); G = Psi_{2n}/Psi_n is D(n) (n even) or Psi_2*D(n) (n odd)
        c = self.core
        return c(n + 2) * c(n - 1) ** 2 - c(n - 2) * c(n + 1) ** 2

    # elements over the working ring ----------------------------------------

    def _psi_w(self, n) -> MPoly:
        c = self.core(n)
        return c if n % 2 else self.work.psi2 * c

    def _phi_w(self, n) -> MPoly:
        cr = self.work
        c = self.core
        if n % 2:
            return cr.X * c(n) ** 2 - cr.F * c(n - 1) * c(n + 1)
        return cr.X * cr.F * c(n) ** 2 - c(n - 1) * c(n + 1)

    def _phi_psi_w(self, n) -> MPoly:
        p = self._phi_w(n) * self.core(n)
        return p if n % 2 else self.work.psi2 * p

    def _psi_cubed_w(self, n) -> MPoly:
        c3 = self.core(n) ** 3
        return c3 if n % 2 else self.work.psi2 * self.work.F * c3

    def _g_w(self, n) -> MPoly:
        d = self._d(n)
        return self.work.psi2 * d if n % 2 else d

    def _down(self, p: MPoly) -> MPoly:
        return p.change_ring(self.ring) if self.work_ring != self.ring else p

    def _memo(self, key, fn):
        if key not in self._cache:
            self._cache[key] = fn()
        return self._cache[key]

    # public accessors --------------------------------------------------------

    def psi(self, n: int) -> AffineCurveElement:
        return self._memo(("psi", n), lambda: AffineCurveElement(self.cr, self._down(self._psi_w(n)), "yrep"))

    def psi_core(self, n: int) -> MPoly:
        return self._memo(("core", n), lambda: self._down(self.core(n)))

    def phi(self, n: int) -> AffineCurveElement:
        return self._memo(("phi", n), lambda: AffineCurveElement(self.cr, self._down(self._phi_w(n)), "yrep"))

    def phi_psi(self, n: int) -> AffineCurveElement:
        return self._memo(("phipsi", n),
                          lambda: AffineCurveElement(self.cr, self._down(self._phi_psi_w(n)), "yrep"))

    def psi_cubed(self, n: int) -> AffineCurveElement:
        return self._memo(("psi3", n),
                          lambda: AffineCurveElement(self.cr, self._down(self._psi_cubed_w(n)), "yrep"))

    def omega(self, n: int) -> AffineCurveElement:
        return self._memo(("omega", n), lambda: self._omega(n))

    def _omega(self, n):
        if n == 0:
            return self.cr.element(1)
        a1, a3 = self.work.a[0], self.work.a[2]
        num = self._g_w(n) - a1 * self._phi_psi_w(n) - a3 * self._psi_cubed_w(n)
        num = self.work.yreduce(num)
        return AffineCurveElement(self.cr, self._halve(num), "yrep")

    def _halve(self, p: MPoly) -> MPoly:
        if isinstance(self.ring, Rationals):
            return p * Fraction(1, 2)
        if isinstance(self.ring, Integers):
            try:
                return p.divexact(2)
            except ArithmeticError:
                raise ExactnessViolation("Omega numerator has an odd coefficient") from None
        terms = {}
        for e, c in p.terms.items():
            if c % 2:
                raise ExactnessViolation("Omega numerator has an odd coefficient")
            terms[e] = c // 2
        return MPoly(p.vars, terms, self.ring)

    def psi2n_over_psin(self, n: int) -> AffineCurveElement:
        return AffineCurveElement(self.cr, self._down(self._g_w(n)), "yrep")

    # fast numeric evaluation over a concrete ring -----------------------------

    def psi_value(self, n: int, X, Y, *params):
        """Psi_n at a point, as a raw value of ``ring``."""
        v = self.psi_core(n).eval(*params, X, 0)
        if n % 2 == 0:
            v = self.ring.mul(v, self.cr.psi2.eval(*params, X, Y))
        return v

    def xrep_triple(self, n: int, method="auto"):
        """(A_n, B_n, C_n) as MPolys in params + (X, Y), each of X-degree <= 2."""
        return tuple(canonical_xrep_poly(e.poly, self.cr, method)
                     for e in (self.phi_psi(n), self.omega(n), self.psi_cubed(n)))


def _lift_residue(c, ring: ResidueRing):
    if isinstance(c, MPoly):
        return c.change_ring(ZZ)
    return ring.coerce(c)


def psi(n: int, ladder: DivPolyLadder) -> AffineCurveElement:
    return ladder.psi(n)


def phi(n: int, ladder: DivPolyLadder) -> AffineCurveElement:
    return ladder.phi(n)


def omega(n: int, ladder: DivPolyLadder) -> AffineCurveElement:
    return ladder.omega(n)


def canonical_xrep(e: AffineCurveElement, method="auto") -> AffineCurveElement:
    return e.xrep(method)
