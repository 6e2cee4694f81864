"""Command-line interface: gen, psi, apply, tate, y1, verify.

Exit codes: 0 success, 1 verification or internal assertion failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import sys

from . import cache, verify
from .cache import CacheCorrupt, canonical_json
from .curves import (
    NotOnCurve,
    SingularPoint,
    WeierstrassCurve,
    curve_contains,
    is_smooth_point,
    mul_point,
)
from .divpoly import DivPolyLadder, ExactnessViolation
from .moduli import OrderObstruction, emit_y1, tate_normal_form
from .projmul import InvariantViolation, MulTriple, build_triple
from .rings import CapabilityError, RingError, parse_ring


class UsageError(Exception):
    pass


def _ints(text: str) -> list:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise UsageError(f"expected a comma-separated list of integers, got {text!r}") from None


def _ring(args):
    if args.ring is None:
        raise UsageError("--ring is required (zz, qq, zmod:N or poly:<base>:<vars>)")
    try:
        return parse_ring(args.ring)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _coeffs(args, ring):
    if args.coeffs is None:
        raise UsageError("--coeffs a1,a2,a3,a4,a6 is required with --ring")
    parts = args.coeffs.split(",")
    if len(parts) != 5:
        raise UsageError("--coeffs needs exactly five values a1,a2,a3,a4,a6")
    return [ring.parse(p) for p in parts]


def _curve(args) -> WeierstrassCurve:
    ring = _ring(args)
    return WeierstrassCurve(ring, tuple(_coeffs(args, ring)))


def _point(args, c: WeierstrassCurve):
    parts = args.point.split(",")
    if len(parts) != 3:
        raise UsageError("--point needs three coordinates x,y,z")
    raw = tuple(c.ring.parse(p) for p in parts)
    if not curve_contains(c, raw):
        raise NotOnCurve(f"({', '.join(map(c.ring.format, raw))}) is not a point of {c}: "
                         f"W = {c.ring.format(c.W(*raw))}")
    P = c.point(*raw)
    if not is_smooth_point(c, P):
        partials = ", ".join(map(c.ring.format, c.partials(*raw)))
        raise SingularPoint(f"{P} is not in the smooth locus: partials ({partials})")
    return P


def _write(args, text: str):
    if not text.endswith("\n"):
        text += "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def generic_triple(n: int) -> MulTriple:
    """The universal n-triple, read from or written to the cache."""
    payload = cache.load("triple", n)
    if payload is not None:
        return MulTriple.from_json(payload)
    t = build_triple(n, DivPolyLadder.generic())
    cache.store("triple", n, t.to_json())
    return t


def _triple_text(t: MulTriple) -> str:
    return "\n".join(f"{k}_{t.n} = {p}" for k, p in zip(("alpha", "beta", "gamma"), t.components()))


def cmd_gen(args):
    if args.generic == (args.ring is not None):
        raise UsageError("choose exactly one of --generic or --ring R --coeffs ...")
    if args.generic:
        t = generic_triple(args.n)
    else:
        ring = _ring(args)
        t = build_triple(args.n, DivPolyLadder.over(_coeffs(args, ring), ring))
    _write(args, canonical_json(t.to_json()) if args.format == "json" else _triple_text(t))
    return 0


def cmd_psi(args):
    if args.generic == (args.ring is not None):
        raise UsageError("choose exactly one of --generic or --ring R --coeffs ...")
    if args.generic:
        ladder = DivPolyLadder.generic()
    else:
        ring = _ring(args)
        ladder = DivPolyLadder.over(_coeffs(args, ring), ring)
    e = getattr(ladder, args.which)(args.n)
    if args.form == "xrep":
        e = e.xrep()
    if args.format == "json":
        _write(args, canonical_json(e.to_json()))
    else:
        _write(args, f"{args.which}_{args.n} = {e.poly}")
    return 0


def cmd_apply(args):
    c = _curve(args)
    P = _point(args, c)
    Q = mul_point(c, P, args.n)
    if args.format == "json":
        _write(args, canonical_json({"n": args.n, **c.to_json(P), "result": [c.ring.format(v) for v in Q.raw]}))
    else:
        _write(args, str(Q))
    return 0


def cmd_tate(args):
    c = _curve(args)
    P = _point(args, c)
    T = tate_normal_form(c, P)
    if args.format == "json":
        _write(args, canonical_json(T.to_json()))
    else:
        tr = T.transform
        _write(args, f"s = {T.s}\nt = {T.t}\ncurve = {T.curve}\n"
                     f"transform u = {tr.ring.format(tr.u)}, r = {tr.ring.format(tr.r)}, "
                     f"s = {tr.ring.format(tr.s)}, t = {tr.ring.format(tr.t)}")
    return 0


def cmd_y1(args):
    if args.n < 4:
        raise UsageError("y1 needs --n >= 4 (the Tate normal form requires 2P != 0 and 3P != 0)")
    if args.modulus is not None and args.modulus < 2:
        raise UsageError("--modulus must be at least 2")
    eq = emit_y1(args.n)
    if args.format == "json":
        _write(args, canonical_json(eq.to_json(args.modulus)))
    else:
        _write(args, eq.to_text(args.modulus))
    return 0


def cmd_verify(args):
    if args.n_max < 0 or args.curves < 0:
        raise UsageError("--n-max and --curves must be non-negative")
    primes = _ints(args.primes)
    lines = []

    def emit(record):
        lines.append(canonical_json(record))

    seed = args.seed if args.seed is not None else 0
    report = verify.run(args.n_max, primes, args.curves, seed, points_limit=args.points, emit=emit)
    _write(args, "\n".join(lines))
    return 0 if report.ok else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write the result to this file instead of stdout")
    common.add_argument("--format", choices=("json", "text"), default="text")
    common.add_argument("--seed", type=int, default=None, help="random seed (verify only; default 0)")
    curve = argparse.ArgumentParser(add_help=False)
    curve.add_argument("--ring", help="zz, qq, zmod:N or poly:<base>:<vars>")
    curve.add_argument("--coeffs", help="a1,a2,a3,a4,a6")

    parser = argparse.ArgumentParser(prog="mulnpoly", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", parents=[common, curve], help="build the n-triple (alpha, beta, gamma)")
    p.add_argument("n", type=int)
    p.add_argument("--generic", action="store_true", help="over ZZ[a1,a2,a3,a4,a6] (cached)")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("psi", parents=[common, curve], help="print Psi_n, Phi_n or Omega_n")
    p.add_argument("n", type=int)
    p.add_argument("--generic", action="store_true")
    p.add_argument("--which", choices=("psi", "phi", "omega"), default="psi")
    p.add_argument("--form", choices=("yrep", "xrep"), default="yrep")
    p.set_defaults(func=cmd_psi)

    p = sub.add_parser("apply", parents=[common, curve], help="compute n*P on a curve")
    p.add_argument("--point", required=True, help="x,y,z")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_apply)

    p = sub.add_parser("tate", parents=[common, curve], help="Tate normal form of (curve, point)")
    p.add_argument("--point", required=True, help="x,y,z")
    p.set_defaults(func=cmd_tate)

    p = sub.add_parser("y1", parents=[common], help="emit f_n and delta defining Y1(n)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--modulus", type=int, default=None, help="also print f_n and delta mod this prime")
    p.set_defaults(func=cmd_y1)

    p = sub.add_parser("verify", parents=[common], help="seeded comparison against the chord-tangent oracle")
    p.add_argument("--n-max", type=int, default=6)
    p.add_argument("--primes", default="5,7,11")
    p.add_argument("--curves", type=int, default=10)
    p.add_argument("--points", type=int, default=None,
                   help="sample this many points per curve for p > 17 (default: all points)")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, NotOnCurve, SingularPoint, OrderObstruction, CapabilityError) as exc:
        print(f"mulnpoly: error: {exc}", file=sys.stderr)
        return 2
    except (CacheCorrupt, InvariantViolation, ExactnessViolation, AssertionError) as exc:
        print(f"mulnpoly: failure: {exc}", file=sys.stderr)
        return 1
    except (RingError, ValueError) as exc:
        print(f"mulnpoly: error: {exc}", file=sys.stderr)
        return 2
    except BrokenPipeError:
        # output piped into e.g. head; the reader is gone, nothing left to report
        sys.stderr.close()
        return 0


if __name__ == "__main__":
    sys.exit(main())
