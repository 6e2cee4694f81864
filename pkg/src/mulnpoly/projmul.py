"""Homogeneous degree-n^2 triples (alpha_n, beta_n, gamma_n) for multiplication by n.

A_n, B_n, C_n are the X-degree <= 2 representatives of Phi_n*Psi_n, Omega_n
and Psi_n^3; the triple is obtained by sending X^i Y^j to x^i y^j z^(n^2-i-j).
The sign is fixed by requiring the y^(n^2)-coefficient of beta_n to be +1,
which the construction delivers without any rescaling.
"""

from __future__ import annotations

from dataclasses import dataclass

from .divpoly import DivPolyLadder
from .mpoly import A_VARS, GENERIC, MPoly, NotHomogeneous, _context, _flint_divides
from .rings import ZZ, Ring, RingElement, RingMismatch

SIGN_CONVENTION = "beta-monic"


class NegativeZExponent(ArithmeticError):
    """A monomial of A_n, B_n or C_n has total degree above n^2 (cannot happen)."""


class InvariantViolation(AssertionError):
    pass


# isobaric weight of Phi_n*Psi_n, Omega_n, Psi_n^3 with a_i -> i, X -> 2, Y -> 3
def _weights(n):
    d = n * n
    return (3 * d - 1, 3 * d, 3 * d - 3) if n else (None, 0, None)


@dataclass(frozen=True)
class MulTriple:
    n: int
    alpha: MPoly
    beta: MPoly
    gamma: MPoly

    @property
    def vars(self):
        return self.beta.vars

    @property
    def ring(self) -> Ring:
        return self.beta.ring

    @property
    def params(self):
        return self.vars[:-3]

    @property
    def is_generic(self):
        return self.params == A_VARS

    def components(self):
        return self.alpha, self.beta, self.gamma

    def check_invariants(self) -> None:
        """Homogeneity of degree n^2 in x, y, z; alpha, gamma in (x, z); beta in y^(n^2) + (x, z)."""
        d = self.n * self.n
        k = len(self.params)
        weights = [0] * k + [1, 1, 1]
        for name, p in zip(("alpha", "beta", "gamma"), self.components()):
            try:
                ok = not p or p.homogeneous_degree(weights) == d
            except NotHomogeneous:
                ok = False
            if not ok:
                raise InvariantViolation(f"{name}_{self.n} is not homogeneous of degree {d}")
        on_y_axis = {"x": 0, "z": 0}
        for name, p in (("alpha", self.alpha), ("gamma", self.gamma)):
            if p and p.substitute(on_y_axis):
                raise InvariantViolation(f"{name}_{self.n} is not in the ideal (x, z)")
        y = MPoly.gen(self.vars, "y", self.ring)
        if self.beta.substitute(on_y_axis) != (y ** d).substitute(on_y_axis):
            raise InvariantViolation(f"beta_{self.n} is not y^{d} modulo (x, z)")

    def y_power_coefficient(self):
        e = (0,) * len(self.params) + (0, self.n * self.n, 0)
        return self.beta.coefficient(e)

    def to_json(self) -> dict:
        return {"n": self.n, "vars": list(self.vars),
                "alpha": self.alpha.to_json(), "beta": self.beta.to_json(),
                "gamma": self.gamma.to_json(), "sign_convention": SIGN_CONVENTION}

    @classmethod
    def from_json(cls, data) -> MulTriple:
        if data.get("sign_convention") != SIGN_CONVENTION:
            raise ValueError(f"unsupported sign convention {data.get('sign_convention')!r}")
        parts = [MPoly.from_json(data[k]) for k in ("alpha", "beta", "gamma")]
        if any(list(p.vars) != data["vars"] for p in parts):
            raise ValueError("component variables disagree with the envelope")
        return cls(int(data["n"]), *parts)

    def __call__(self, x, y, z):
        return eval_triple(self, (x, y, z))


def homogenize(p: MPoly, d: int, params) -> MPoly:
    """Send c * params^a * X^i * Y^j to c * params^a * x^i * y^j * z^(d-i-j), term by term."""
    params = tuple(params)
    out_vars = params + ("x", "y", "z")
    k = len(params)
    terms = {}
    for e, c in p.terms.items():
        i, j = e[k], e[k + 1]
        if d - i - j < 0:
            raise NegativeZExponent(f"monomial X^{i} Y^{j} exceeds degree {d}")
        terms[e[:k] + (i, j, d - i - j)] = c
    return MPoly(out_vars, terms, p.ring)


def homogenize_isobaric(p: MPoly, d: int, weight: int) -> MPoly:
    """Generic-coefficient homogenization without visiting terms in Python.

    A term a^m X^i Y^j of isobaric weight ``weight`` has 2i = weight - wt(a^m) - 3j,
    hence z-exponent d - i - j = (2d - weight + wt(a^m) + j) / 2.  Composing
    a_k -> a_k z^k, X -> x, Y -> y z gives exponent wt(a^m) + j; shifting by
    2d - weight and halving finishes the job.
    """
    ctx = _context(GENERIC, p.ring)
    g = ctx.gens()
    z = g[7]
    imgs = [g[0] * z, g[1] * z ** 2, g[2] * z ** 3, g[3] * z ** 4, g[4] * z ** 6, g[5], g[6] * z]
    q = p._p.compose(*imgs, ctx=ctx)
    shift = 2 * d - weight
    if shift >= 0:
        q = q * z ** shift
    else:
        q, r = divmod(q, z ** (-shift))
        if r != 0:
            raise NegativeZExponent(f"a monomial exceeds degree {d}")
    strides = [1] * 7 + [2]
    h = q.deflate(strides)
    if h.inflate(strides) != q:
        raise NegativeZExponent("odd z-exponent: input is not isobaric of the stated weight")
    return MPoly._wrap(h, GENERIC, p.ring)


def build_triple(n: int, ladder: DivPolyLadder, method: str = "auto", check: bool = True) -> MulTriple:
    """alpha_n, beta_n, gamma_n over the ladder's coefficient ring."""
    d = n * n
    A, B, C = ladder.xrep_triple(n)
    fast = method == "isobaric" or (method == "auto" and ladder.is_generic and _flint_divides(ladder.ring))
    if fast:
        if not ladder.is_generic:
            raise ValueError("isobaric homogenization needs the generic ladder")
        parts = []
        for p, w in zip((A, B, C), _weights(n)):
            parts.append(homogenize_isobaric(p, d, w) if p else MPoly.zero(GENERIC, ladder.ring))
    else:
        parts = [homogenize(p, d, ladder.params) for p in (A, B, C)]
    t = MulTriple(n, *parts)
    if check:
        t.check_invariants()
        if t.y_power_coefficient() != 1:
            raise InvariantViolation(f"beta_{n} is not monic in y^{d}")
    return t


def specialize_triple(t: MulTriple, coeffs, ring: Ring | None = None, check: bool = True) -> MulTriple:
    """Substitute concrete values for a1, a2, a3, a4, a6 in a generic triple."""
    if not t.is_generic:
        raise ValueError("only generic triples can be specialized")
    coeffs = list(coeffs)
    if len(coeffs) != 5:
        raise ValueError("five coefficients a1, a2, a3, a4, a6 are required")
    if ring is None:
        rings = {c.ring for c in coeffs if isinstance(c, RingElement)}
        if len(rings) > 1:
            raise RingMismatch(f"coefficients from several rings: {rings}")
        ring = rings.pop() if rings else ZZ
    vals = [RingElement(ring, ring.coerce(c)) for c in coeffs]
    out_vars = ("x", "y", "z")
    bindings = dict(zip(A_VARS, vals))
    parts = []
    for p in t.components():
        q = p.substitute(bindings) if p else MPoly.zero(out_vars, ring)
        parts.append(q if q.ring == ring else q.change_ring(ring))
    s = MulTriple(t.n, *parts)
    if check:
        s.check_invariants()
    return s


def eval_triple(t: MulTriple, point) -> tuple:
    """(alpha_n(P), beta_n(P), gamma_n(P)) as RingElements, without normalization."""
    if t.params:
        raise ValueError("evaluate a specialized triple (no parameter variables)")
    ring = t.ring
    coords = []
    for c in point:
        if isinstance(c, RingElement) and c.ring != ring:
            raise RingMismatch(f"point coordinate in {c.ring}, triple over {ring}")
        coords.append(ring.coerce(c))
    return tuple(RingElement(ring, p.eval(*coords) if p else ring.coerce(0)) for p in t.components())
