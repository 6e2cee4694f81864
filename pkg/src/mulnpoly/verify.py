"""Seeded verification suites comparing the triples with the chord-tangent oracle."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .curves import (
    ProjPoint,
    WeierstrassCurve,
    oracle_multiples,
    oracle_neg,
    points_over_prime_field,
    proj_equal,
    random_point,
    random_smooth_curve,
)
from .divpoly import DivPolyLadder
from .projmul import build_triple
from .rings import ResidueRing


@dataclass
class Report:
    checks: int = 0
    passed: int = 0
    failures: list = field(default_factory=list)

    def record(self, ok: bool, detail=None):
        self.checks += 1
        if ok:
            self.passed += 1
        elif detail is not None:
            self.failures.append(detail)

    def merge(self, other: Report):
        self.checks += other.checks
        self.passed += other.passed
        self.failures.extend(other.failures)

    @property
    def ok(self) -> bool:
        return self.checks == self.passed


def sample_curves(p: int, count: int, rng: random.Random) -> list:
    ring = ResidueRing(p)
    return [random_smooth_curve(ring, rng) for _ in range(count)]


def sample_points(c: WeierstrassCurve, limit: int | None, rng: random.Random) -> list:
    """All points when ``limit`` is None, else (0:1:0) plus ``limit`` random affine points."""
    if limit is None:
        return points_over_prime_field(c)
    return [c.zero()] + [random_point(c, rng) for _ in range(limit)]


def check_curve(c: WeierstrassCurve, points, n_max: int, ladder: DivPolyLadder | None = None) -> tuple:
    """(oracle report, torsion report) for one curve.

    The oracle report compares (alpha_n : beta_n : gamma_n)(P) with n*P for
    |n| <= n_max and checks the evaluated triple is never (0, 0, 0); the
    torsion report checks Psi_n(P) = 0 iff n*P = 0 for affine P, 2 <= n <= n_max.
    """
    ladder = ladder or DivPolyLadder.over(c.a, c.ring)
    ring = c.ring
    # n_max = 0 is a vacuous run, so n = 0 is only checked alongside some n != 0
    triples = {n: build_triple(n, ladder) for n in range(-n_max, n_max + 1)} if n_max > 0 else {}
    oracle, torsion = Report(), Report()
    for P in points:
        pos = oracle_multiples(c, P, n_max)
        for n, t in triples.items():
            want = pos[n] if n >= 0 else oracle_neg(c, pos[-n])
            vals = tuple(comp.eval(*P.raw) if comp else 0 for comp in t.components())
            if not any(vals):
                oracle.record(False, {"curve": c.to_json(P), "n": n, "got": [0, 0, 0]})
                continue
            ok = ring.unit_ideal(list(vals)) and proj_equal(ProjPoint(ring, vals), want)
            oracle.record(ok, None if ok else {"curve": c.to_json(P), "n": n,
                                               "got": [ring.format(v) for v in vals], "want": str(want)})
        if P.raw[2] != 0:
            X, Y = P.affine()
            for n in range(2, n_max + 1):
                vanishes = ladder.psi_value(n, X, Y) == 0
                killed = pos[n].raw[2] == 0
                torsion.record(vanishes == killed, None if vanishes == killed else
                               {"curve": c.to_json(P), "n": n, "psi_zero": vanishes, "nP_zero": killed})
    return oracle, torsion


def run(n_max: int, primes, curves: int, seed: int, points_limit=None, emit=None) -> Report:
    """Run the suite; ``emit`` receives one dict per curve and a final summary."""
    rng = random.Random(seed)
    total = Report()
    for p in primes:
        limit = points_limit if points_limit is not None and p > 17 else None
        for idx, c in enumerate(sample_curves(p, curves, rng)):
            pts = sample_points(c, limit, rng)
            o, t = check_curve(c, pts, n_max)
            total.merge(o)
            total.merge(t)
            if emit:
                emit({"p": p, "curve": idx, "a": list(c.a), "points": len(pts),
                      "oracle_checks": o.checks, "oracle_passed": o.passed,
                      "torsion_checks": t.checks, "torsion_passed": t.passed})
            if total.failures:
                break
        if total.failures:
            break
    if emit:
        summary = {"summary": True, "seed": seed, "n_max": n_max, "primes": list(primes),
                   "curves": curves, "checks": total.checks, "passed": total.passed,
                   "ok": total.ok}
        if total.checks == 0:
            summary["note"] = "0 checks"
        if total.failures:
            summary["counterexample"] = total.failures[0]
        emit(summary)
    return total
