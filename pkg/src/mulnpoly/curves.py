"""Weierstrass curves and projective points over concrete rings.

A point is a triple (x : y : z) whose coordinates generate the unit ideal.
Over a field the chord-tangent law gives an independent oracle for n*P;
over any ring (including ZZ/NZ with N composite) mul_point evaluates the
homogeneous triple (alpha_n, beta_n, gamma_n), which needs no inverses.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .divpoly import DivPolyLadder, generic_discriminant
from .projmul import InvariantViolation, MulTriple, build_triple, eval_triple, specialize_triple
from .rings import (
    Integers,
    NotAUnit,
    Rationals,
    ResidueRing,
    Ring,
    RingElement,
    RingError,
    RingMismatch,
)


class NonField(RingError):
    pass


class SingularPoint(ValueError):
    pass


class NotOnCurve(ValueError):
    pass


@dataclass(frozen=True)
class WeierstrassCurve:
    """y^2 z + a1 x y z + a3 y z^2 = x^3 + a2 x^2 z + a4 x z^2 + a6 z^3 over ``ring``."""

    ring: Ring
    a: tuple

    def __post_init__(self):
        if len(self.a) != 5:
            raise ValueError("five coefficients a1, a2, a3, a4, a6 are required")
        vals = []
        for c in self.a:
            if isinstance(c, RingElement) and c.ring != self.ring:
                raise RingMismatch(f"coefficient in {c.ring}, curve over {self.ring}")
            vals.append(self.ring.coerce(c))
        object.__setattr__(self, "a", tuple(vals))

    @property
    def coeffs(self):
        return tuple(RingElement(self.ring, c) for c in self.a)

    def W(self, x, y, z):
        a1, a2, a3, a4, a6 = self.a
        return self.ring.coerce(y * y * z + a1 * x * y * z + a3 * y * z * z
                                - x ** 3 - a2 * x * x * z - a4 * x * z * z - a6 * z ** 3)

    def partials(self, x, y, z):
        a1, a2, a3, a4, a6 = self.a
        r = self.ring.coerce
        wx = r(a1 * y * z - 3 * x * x - 2 * a2 * x * z - a4 * z * z)
        wy = r(2 * y * z + a1 * x * z + a3 * z * z)
        wz = r(y * y + a1 * x * y + 2 * a3 * y * z - a2 * x * x - 2 * a4 * x * z - 3 * a6 * z * z)
        return wx, wy, wz

    def point(self, x, y, z=1) -> ProjPoint:
        return ProjPoint(self.ring, (x, y, z))

    def zero(self) -> ProjPoint:
        return ProjPoint(self.ring, (0, 1, 0))

    def to_json(self, point: ProjPoint | None = None) -> dict:
        out = {"ring": str(self.ring), "a": [self.ring.format(c) for c in self.a]}
        if point is not None:
            out["point"] = [self.ring.format(c) for c in point.raw]
        return out

    def __str__(self):
        return f"[{', '.join(self.ring.format(c) for c in self.a)}] over {self.ring}"


@dataclass(frozen=True)
class ProjPoint:
    """(x : y : z); equality is projective (scaling by a unit)."""

    ring: Ring
    raw: tuple

    def __post_init__(self):
        if len(self.raw) != 3:
            raise ValueError("a projective point has three coordinates")
        vals = []
        for c in self.raw:
            if isinstance(c, RingElement) and c.ring != self.ring:
                raise RingMismatch(f"coordinate in {c.ring}, point over {self.ring}")
            vals.append(self.ring.coerce(c))
        if not self.ring.unit_ideal(vals):
            raise ValueError(f"coordinates {vals} do not generate the unit ideal")
        object.__setattr__(self, "raw", tuple(vals))

    @property
    def coords(self):
        return tuple(RingElement(self.ring, c) for c in self.raw)

    @property
    def x(self):
        return RingElement(self.ring, self.raw[0])

    @property
    def y(self):
        return RingElement(self.ring, self.raw[1])

    @property
    def z(self):
        return RingElement(self.ring, self.raw[2])

    def is_zero_section(self) -> bool:
        return self == ProjPoint(self.ring, (0, 1, 0))

    def normalize(self) -> ProjPoint:
        """Scale so the last unit coordinate is 1 (over ZZ: last nonzero coordinate positive)."""
        ring = self.ring
        if isinstance(ring, Integers):
            last = next(c for c in reversed(self.raw) if c)
            return ProjPoint(ring, tuple(c if last > 0 else -c for c in self.raw))
        for c in reversed(self.raw):
            if ring.is_unit(c):
                u = ring.inverse(c)
                return ProjPoint(ring, tuple(ring.mul(u, v) for v in self.raw))
        return self

    def affine(self):
        """(x/z, y/z) as raw values; z must be a unit."""
        u = self.ring.inverse(self.raw[2])
        return self.ring.mul(self.raw[0], u), self.ring.mul(self.raw[1], u)

    def __eq__(self, other):
        if not isinstance(other, ProjPoint):
            return NotImplemented
        return proj_equal(self, other)

    def __hash__(self):
        n = self.normalize()
        return hash((self.ring, n.raw))

    def __str__(self):
        n = self.normalize()
        return "(" + " : ".join(self.ring.format(c) for c in n.raw) + ")"

    def __repr__(self):
        return f"ProjPoint{self}"


def proj_equal(P: ProjPoint, Q: ProjPoint) -> bool:
    """P = u*Q for a unit u.

    With a unit coordinate available the scalar is exhibited and checked;
    otherwise (unimodular triples over a ring such as ZZ/6) all 2x2 minors
    must vanish, which characterizes equality for points of P^2 over rings
    with trivial Picard group.
    """
    if P.ring != Q.ring:
        raise RingMismatch(f"{P.ring} vs {Q.ring}")
    ring = P.ring
    for i in (2, 1, 0):
        if ring.is_unit(Q.raw[i]):
            u = ring.mul(P.raw[i], ring.inverse(Q.raw[i]))
            return all(ring.mul(u, q) == p for p, q in zip(P.raw, Q.raw)) and ring.is_unit(u)
    for i in range(3):
        for j in range(i + 1, 3):
            if ring.sub(ring.mul(P.raw[i], Q.raw[j]), ring.mul(P.raw[j], Q.raw[i])) != 0:
                return False
    return True


def _on(c: WeierstrassCurve, P: ProjPoint):
    if c.ring != P.ring:
        raise RingMismatch(f"curve over {c.ring}, point over {P.ring}")


def curve_contains(c: WeierstrassCurve, p) -> bool:
    """W(p) = 0 and the coordinates generate the unit ideal."""
    raw = p.raw if isinstance(p, ProjPoint) else tuple(c.ring.coerce(v) for v in p)
    if isinstance(p, ProjPoint):
        _on(c, p)
    if c.W(*raw) != 0:
        return False
    return c.ring.unit_ideal(list(raw))


def is_smooth_point(c: WeierstrassCurve, P: ProjPoint) -> bool:
    """The three partial derivatives of W at P generate the unit ideal."""
    _on(c, P)
    return c.ring.unit_ideal(list(c.partials(*P.raw)))


def is_smooth_affine(c: WeierstrassCurve, X, Y) -> bool:
    """Two-generator smoothness test at an affine point (X, Y)."""
    a1, a2, a3, a4, a6 = c.a
    r = c.ring.coerce
    return c.ring.unit_ideal([r(a1 * Y - 3 * X * X - 2 * a2 * X - a4), r(2 * Y + a1 * X + a3)])


@lru_cache(maxsize=1)
def _delta_poly():
    return generic_discriminant()


def curve_discriminant(c: WeierstrassCurve) -> RingElement:
    if isinstance(c.ring, Rationals):
        value = _delta_poly().change_ring(c.ring).eval(*c.a)
    else:
        value = _delta_poly().eval(*[int(v) for v in c.a])
    return RingElement(c.ring, c.ring.coerce(value))


def is_smooth_curve(c: WeierstrassCurve) -> bool:
    try:
        curve_discriminant(c).inverse()
    except NotAUnit:
        return False
    return True


# --- chord-tangent oracle ----------------------------------------------------

def _require_field(c: WeierstrassCurve):
    if not c.ring.is_field:
        raise NonField(f"the chord-tangent law needs a field, not {c.ring}")


def oracle_neg(c: WeierstrassCurve, P: ProjPoint) -> ProjPoint:
    x, y, z = P.raw
    a1, _, a3, _, _ = c.a
    return ProjPoint(c.ring, (x, c.ring.coerce(-y - a1 * x - a3 * z), z))


def oracle_add(c: WeierstrassCurve, P: ProjPoint, Q: ProjPoint) -> ProjPoint:
    """P + Q by the chord-tangent rule with zero (0 : 1 : 0)."""
    _require_field(c)
    for R in (P, Q):
        _on(c, R)
        if not curve_contains(c, R):
            raise NotOnCurve(f"{R} is not on {c}")
        if not is_smooth_point(c, R):
            raise SingularPoint(f"{R} is singular on {c}")
    return _add(c, P, Q)


def _add(c, P, Q):
    ring = c.ring
    if P.raw[2] == 0:
        return Q
    if Q.raw[2] == 0:
        return P
    a1, a2, a3, a4, a6 = c.a
    x1, y1 = P.affine()
    x2, y2 = Q.affine()
    co = ring.coerce
    inv = ring.inverse
    if x1 == x2 and co(y1 + y2 + a1 * x2 + a3) == 0:
        return c.zero()
    if x1 != x2:
        den = inv(co(x2 - x1))
        lam = co((y2 - y1) * den)
        nu = co((y1 * x2 - y2 * x1) * den)
    else:
        den = inv(co(2 * y1 + a1 * x1 + a3))
        lam = co((3 * x1 * x1 + 2 * a2 * x1 + a4 - a1 * y1) * den)
        nu = co((-x1 ** 3 + a4 * x1 + 2 * a6 - a3 * y1) * den)
    x3 = co(lam * lam + a1 * lam - a2 - x1 - x2)
    y3 = co(-(lam + a1) * x3 - nu - a3)
    return ProjPoint(ring, (x3, y3, 1))


def oracle_mul(c: WeierstrassCurve, P: ProjPoint, n: int) -> ProjPoint:
    """n*P by double-and-add on the chord-tangent law."""
    _require_field(c)
    if not is_smooth_point(c, P):
        raise SingularPoint(f"{P} is singular on {c}")
    if n < 0:
        P, n = oracle_neg(c, P), -n
    acc = c.zero()
    while n:
        if n & 1:
            acc = _add(c, acc, P)
        P = _add(c, P, P)
        n >>= 1
    return acc


def oracle_multiples(c: WeierstrassCurve, P: ProjPoint, n_max: int) -> list:
    """[0*P, 1*P, ..., n_max*P] by repeated addition."""
    out = [c.zero()]
    for _ in range(n_max):
        out.append(_add(c, out[-1], P))
    return out


# --- multiplication through the homogeneous triples ---------------------------

class TripleSource:
    """Supplies the specialized n-triple for a curve.

    ``mode="specialized"`` runs the division-polynomial ladder over the
    curve's own ring (any n); ``mode="generic"`` specializes the universal
    triple (cached per n, practical for small |n|).
    """

    def __init__(self, mode: str = "specialized"):
        if mode not in ("specialized", "generic"):
            raise ValueError(f"unknown mode {mode!r}")
        self.mode = mode
        self._ladders = {}
        self._triples = {}
        self._generic = {}
        self._generic_ladder = None

    def ladder(self, c: WeierstrassCurve) -> DivPolyLadder:
        key = (c.ring, c.a)
        if key not in self._ladders:
            self._ladders[key] = DivPolyLadder.over(c.a, c.ring)
        return self._ladders[key]

    def triple(self, c: WeierstrassCurve, n: int) -> MulTriple:
        key = (c.ring, c.a, n)
        if key not in self._triples:
            if self.mode == "specialized":
                t = build_triple(n, self.ladder(c))
            else:
                if n not in self._generic:
                    if self._generic_ladder is None:
                        self._generic_ladder = DivPolyLadder.generic()
                    self._generic[n] = build_triple(n, self._generic_ladder)
                t = specialize_triple(self._generic[n], c.coeffs)
            self._triples[key] = t
        return self._triples[key]


_DEFAULT_SOURCE = TripleSource()


def mul_point(c: WeierstrassCurve, P: ProjPoint, n: int, triple_source: TripleSource | None = None) -> ProjPoint:
    """n*P = (alpha_n(P) : beta_n(P) : gamma_n(P)) over any supported ring."""
    _on(c, P)
    if not curve_contains(c, P):
        raise NotOnCurve(f"{P} is not on {c}")
    if not is_smooth_point(c, P):
        raise SingularPoint(f"{P} is not in the smooth locus of {c}")
    source = triple_source or _DEFAULT_SOURCE
    t = source.triple(c, n)
    vals = tuple(v.value for v in eval_triple(t, P.raw))
    if not c.ring.unit_ideal(list(vals)):
        raise InvariantViolation(f"{n}*{P}: coordinates {vals} do not generate the unit ideal")
    Q = ProjPoint(c.ring, vals)
    if c.W(*vals) != 0:
        raise InvariantViolation(f"{n}*{P} = {Q} is not on the curve")
    return Q.normalize()


def affine_multiple(c: WeierstrassCurve, P: ProjPoint, n: int, ladder: DivPolyLadder | None = None):
    """(Phi_n Psi_n(P) : Omega_n(P) : Psi_n^3(P)) at an affine point, or None if that triple is not unimodular."""
    ladder = ladder or DivPolyLadder.over(c.a, c.ring)
    X, Y = P.affine()
    vals = tuple(c.ring.coerce(e.poly.eval(X, Y))
                 for e in (ladder.phi_psi(n), ladder.omega(n), ladder.psi_cubed(n)))
    if not c.ring.unit_ideal(list(vals)):
        return None
    return ProjPoint(c.ring, vals).normalize()


def is_Zn_embedding(c: WeierstrassCurve, P: ProjPoint, n: int, ladder: DivPolyLadder | None = None) -> bool:
    """P = (a : b : 1) with Psi_n(a, b) = 0 and Psi_d(a, b) a unit for every proper divisor d of n."""
    if n < 2:
        raise ValueError("n must be at least 2")
    _on(c, P)
    if not c.ring.is_unit(P.raw[2]):
        return False
    ladder = ladder or DivPolyLadder.over(c.a, c.ring)
    a, b = P.affine()
    if ladder.psi_value(n, a, b) != 0:
        return False
    return all(c.ring.is_unit(ladder.psi_value(d, a, b)) for d in range(1, n) if n % d == 0)


# --- finite-field helpers ------------------------------------------------------

def points_over_prime_field(c: WeierstrassCurve) -> list:
    """All points of the curve over F_p, starting with (0 : 1 : 0)."""
    ring = c.ring
    if not (isinstance(ring, ResidueRing) and ring.is_field):
        raise NonField(f"point enumeration needs a prime field, not {ring}")
    p = ring.modulus
    a1, a2, a3, a4, a6 = c.a
    pts = [c.zero()]
    if p == 2:
        for x in range(2):
            for y in range(2):
                if c.W(x, y, 1) == 0:
                    pts.append(ProjPoint(ring, (x, y, 1)))
        return pts
    roots = _sqrt_table(p)
    half = pow(2, -1, p)
    for x in range(p):
        lin = (a1 * x + a3) % p
        rhs = (x ** 3 + a2 * x * x + a4 * x + a6) % p
        disc = (lin * lin + 4 * rhs) % p
        for r in roots.get(disc, ()):
            pts.append(ProjPoint(ring, (x, (r - lin) * half % p, 1)))
    return pts


@lru_cache(maxsize=16)
def _sqrt_table(p: int) -> dict:
    table = {}
    for r in range(p):
        table.setdefault(r * r % p, []).append(r)
    return table


def random_point(c: WeierstrassCurve, rng) -> ProjPoint:
    """A uniformly chosen x with a root, then a random root (F_p, p odd)."""
    ring = c.ring
    p = ring.modulus
    a1, a2, a3, a4, a6 = c.a
    roots = _sqrt_table(p)
    half = pow(2, -1, p)
    while True:
        x = rng.randrange(p)
        lin = (a1 * x + a3) % p
        disc = (lin * lin + 4 * (x ** 3 + a2 * x * x + a4 * x + a6)) % p
        rs = roots.get(disc)
        if rs:
            return ProjPoint(ring, (x, (rng.choice(rs) - lin) * half % p, 1))


def random_smooth_curve(ring: ResidueRing, rng) -> WeierstrassCurve:
    while True:
        c = WeierstrassCurve(ring, tuple(rng.randrange(ring.modulus) for _ in range(5)))
        if is_smooth_curve(c):
            return c
