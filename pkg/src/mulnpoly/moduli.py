"""Tate normal form and the defining equations f_n of Y1(n).

Every curve with a point P such that 2P and 3P are nonzero in each fiber
can be moved to

    y^2 z + (1+s) x y z + t y z^2 - x^3 - t x^2 z        (marked point (0:0:1))

by a unique change of variables.  In the family over ZZ[s, t], psi_n is
Psi_n evaluated at (X, Y) = (0, 0); dividing out the factors f_d of the
proper divisors d of n leaves f_n, whose zero set away from delta is the
locus where (0:0:1) has exact order n.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .curves import ProjPoint, WeierstrassCurve, oracle_multiples
from .divpoly import DivPolyLadder, ExactnessViolation, generic_discriminant
from .mpoly import TATE, MPoly, NotDivisible
from .rings import ResidueRing, Ring, RingElement

UNIVERSAL_CURVE = {"a1": "1+s", "a2": "t", "a3": "t", "a4": "0", "a6": "0"}


class OrderObstruction(ValueError):
    """The marked point is killed by 2 or 3 somewhere: ``which`` is a3_not_unit or a2_not_unit."""

    def __init__(self, which: str, detail: str = ""):
        self.which = which
        super().__init__(f"{which}{': ' + detail if detail else ''}")


@dataclass(frozen=True)
class WeierstrassChange:
    """x = u^2 x' + r,  y = u^3 y' + s u^2 x' + t  over ``ring``."""

    ring: Ring
    u: object
    r: object
    s: object
    t: object

    @classmethod
    def identity(cls, ring: Ring) -> WeierstrassChange:
        return cls(ring, 1, 0, 0, 0)

    def apply(self, c: WeierstrassCurve) -> WeierstrassCurve:
        R = self.ring
        u, r, s, t = self.u, self.r, self.s, self.t
        a1, a2, a3, a4, a6 = c.a
        ui = R.inverse(R.coerce(u))
        co = R.coerce
        new = (
            co((a1 + 2 * s) * ui),
            co((a2 - s * a1 + 3 * r - s * s) * ui ** 2),
            co((a3 + r * a1 + 2 * t) * ui ** 3),
            co((a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t) * ui ** 4),
            co((a6 + r * a4 + r * r * a2 + r ** 3 - t * a3 - t * t - r * t * a1) * ui ** 6),
        )
        return WeierstrassCurve(R, new)

    def apply_point(self, P: ProjPoint) -> ProjPoint:
        R = self.ring
        x, y, z = P.raw
        u, r, s, t = self.u, self.r, self.s, self.t
        xr = x - r * z
        return ProjPoint(R, (R.coerce(u * xr), R.coerce(y - s * xr - t * z), R.coerce(u ** 3 * z)))

    def then(self, other: WeierstrassChange) -> WeierstrassChange:
        """The change equal to applying ``self`` first and ``other`` second."""
        R = self.ring
        u1, r1, s1, t1 = self.u, self.r, self.s, self.t
        u2, r2, s2, t2 = other.u, other.r, other.s, other.t
        co = R.coerce
        return WeierstrassChange(R, co(u1 * u2), co(r1 + u1 * u1 * r2), co(s1 + u1 * s2),
                                 co(t1 + u1 ** 3 * t2 + s1 * u1 * u1 * r2))

    def to_json(self) -> dict:
        f = self.ring.format
        return {"u": f(self.u), "r": f(self.r), "s": f(self.s), "t": f(self.t)}


@dataclass(frozen=True)
class TateForm:
    s: RingElement
    t: RingElement
    transform: WeierstrassChange
    curve: WeierstrassCurve

    def to_json(self) -> dict:
        return {"ring": str(self.curve.ring), "s": str(self.s), "t": str(self.t),
                "transform": self.transform.to_json(),
                "curve": self.curve.to_json()["a"]}


def tate_curve(ring: Ring, s, t) -> WeierstrassCurve:
    return WeierstrassCurve(ring, (ring.coerce(1 + ring.coerce(s)), t, t, 0, 0))


def tate_normal_form(c: WeierstrassCurve, P: ProjPoint) -> TateForm:
    """Translate P to (0:0:1), shear away a4, scale so that a2 = a3."""
    R = c.ring
    if P.ring != R:
        raise ValueError(f"point over {P.ring}, curve over {R}")
    if not R.is_unit(P.raw[2]):
        raise ValueError(f"{P} is not of the form (x : y : 1)")
    x0, y0 = P.affine()
    move = WeierstrassChange(R, 1, x0, 0, y0)
    c1 = move.apply(c)
    if c1.a[4] != 0:
        raise ValueError(f"{P} is not on the curve")
    a1, a2, a3, a4, _ = c1.a
    if not R.is_unit(a3):
        raise OrderObstruction("a3_not_unit", f"a3 = {R.format(a3)} after translation")
    shear = WeierstrassChange(R, 1, 0, R.mul(a4, R.inverse(a3)), 0)
    move = move.then(shear)
    c2 = shear.apply(c1)
    a1, a2, a3 = c2.a[:3]
    if not R.is_unit(a2):
        raise OrderObstruction("a2_not_unit", f"a2 = {R.format(a2)} after shearing")
    scale = WeierstrassChange(R, R.mul(a3, R.inverse(a2)), 0, 0, 0)
    move = move.then(scale)
    s = R.sub(R.mul(R.mul(a1, a2), R.inverse(a3)), 1)
    t = R.mul(R.mul(a2, R.mul(a2, a2)), R.inverse(R.mul(a3, a3)))
    target = tate_curve(R, s, t)
    image = move.apply(c)
    if image != target:
        raise AssertionError(f"normal form mismatch: {image} vs {target}")
    if move.apply_point(P) != ProjPoint(R, (0, 0, 1)):
        raise AssertionError("the marked point does not map to (0 : 0 : 1)")
    if not R.is_unit(t):
        raise AssertionError("t must be a unit")
    return TateForm(RingElement(R, s), RingElement(R, t), move, target)


# --- the (s, t) family ----------------------------------------------------------

@lru_cache(maxsize=1)
def tate_ladder() -> DivPolyLadder:
    return DivPolyLadder.tate()


def _tate_bindings():
    s, t = MPoly.gens(TATE)
    return {"a1": 1 + s, "a2": t, "a3": t, "a4": MPoly.zero(TATE), "a6": MPoly.zero(TATE)}


@lru_cache(maxsize=None)
def psi_st(n: int) -> MPoly:
    """Psi_n(0, 0) in the Tate family, an element of ZZ[s, t]."""
    L = tate_ladder()
    v = L.psi_core(n).substitute({"X": 0, "Y": 0})
    if n % 2 == 0:
        v = v * MPoly.gen(TATE, "t")
    return v


def psi_st_via_generic(n: int, ladder: DivPolyLadder | None = None) -> MPoly:
    """The same value through the universal Psi_n: substitute a_i, then X = Y = 0."""
    ladder = ladder or DivPolyLadder.generic()
    p = ladder.psi(n).poly
    p = p.substitute({"X": 0, "Y": 0})
    return p.substitute(_tate_bindings())


def _divisors(n: int):
    return [d for d in range(1, n + 1) if n % d == 0]


@lru_cache(maxsize=None)
def f_st(n: int) -> MPoly:
    """f_1 = 1 and f_n = psi_n / prod(f_d for proper divisors d of n)."""
    if n < 1:
        raise ValueError("n must be positive")
    if n == 1:
        return MPoly.constant(TATE, 1)
    den = MPoly.constant(TATE, 1)
    for d in _divisors(n)[:-1]:
        den = den * f_st(d)
    try:
        return psi_st(n).divexact(den)
    except NotDivisible as exc:
        raise ExactnessViolation(f"f_{n}: psi_{n} is not divisible by the lower factors") from exc


@lru_cache(maxsize=1)
def delta_st() -> MPoly:
    """Delta(1+s, t, t, 0, 0)."""
    return generic_discriminant().substitute(_tate_bindings())


def p_st(n: int) -> MPoly:
    out = MPoly.constant(TATE, 1)
    for d in _divisors(n)[:-1]:
        out = out * psi_st(d)
    return out


def strip_t(p: MPoly):
    """(k, q) with p = t^k * q and t not dividing q."""
    t = MPoly.gen(TATE, "t")
    k = 0
    while p:
        try:
            q = p.divexact(t)
        except NotDivisible:
            break
        p, k = q, k + 1
    return k, p


@dataclass(frozen=True)
class Y1Equation:
    n: int
    f: MPoly
    delta: MPoly
    p_n: MPoly
    notes: tuple = field(default=())

    @property
    def universal_curve(self):
        return dict(UNIVERSAL_CURVE)

    def reduce(self, p: int) -> tuple:
        ring = ResidueRing(p)
        return self.f.change_ring(ring), self.delta.change_ring(ring)

    def to_json(self, modulus: int | None = None) -> dict:
        out = {"n": self.n, "f": self.f.to_json(), "delta": self.delta.to_json(),
               "p_n": self.p_n.to_json(), "universal_curve": self.universal_curve,
               "notes": list(self.notes)}
        if modulus is not None:
            f, d = self.reduce(modulus)
            out["modulus"] = modulus
            out["f_mod"] = f.to_json()
            out["delta_mod"] = d.to_json()
        return out

    def to_text(self, modulus: int | None = None) -> str:
        lines = [f"Y1({self.n}) in the family y^2 + (1+s)xy + ty = x^3 + tx^2",
                 f"  f_{self.n} = {self.f}",
                 f"  delta = {self.delta}",
                 f"  p_{self.n} = {self.p_n}"]
        if modulus is not None:
            f, d = self.reduce(modulus)
            lines += [f"  f_{self.n} mod {modulus} = {f}", f"  delta mod {modulus} = {d}"]
        lines += [f"  note: {s}" for s in self.notes]
        return "\n".join(lines)


def emit_y1(n: int) -> Y1Equation:
    if not isinstance(n, int) or n < 4:
        raise ValueError("Y1(n) in Tate normal form needs n >= 4")
    f = f_st(n)
    delta = delta_st()
    notes = []
    k, core = strip_t(f)
    if k:
        notes.append(f"t^{k} divides f_{n} and t divides delta, so on delta != 0 "
                     f"the equation reduces to {core} = 0")
    notes.append("universal curve coefficients (a1, a2, a3, a4, a6) = (1+s, t, t, 0, 0)")
    return Y1Equation(n, f, delta, p_st(n), tuple(notes))


def has_exact_order(c: WeierstrassCurve, P: ProjPoint, n: int) -> bool:
    """Oracle check over a field: kP != 0 for 0 < k < n and nP = 0."""
    mult = oracle_multiples(c, P, n)
    return mult[n].raw[2] == 0 and all(m.raw[2] != 0 for m in mult[1:n])

