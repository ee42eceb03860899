"""Command-line front end: ``treecap <command> ...``.

Exit status: 0 on success, 1 when a check requested with ``--assert`` (or a
``verify`` run) fails, 2 on bad input.
"""

from __future__ import annotations

import argparse
import csv
import io as _io
import logging
import os
import sys
from fractions import Fraction

from . import io
from .capacity import cap_condenser, cap_recursive
from .conditions import (KINDS, check_simple, check_tree_cap, check_tree_sep,
                         check_weak_simple, reports_to_csv)
from .dirichlet import harmonic_residual
from .families import (CantorSpec, CombSpec, delta_n, gamma_inf, gamma_n,
                       gen_cantor, gen_comb, gen_nested)
from .interpolate import build_disjoint_family, weaksim_interpolant
from .tree import TreeSeq, depth
from .verify import verify_family

RATIONAL_NODE_CAP = 2000
DEFAULT_TOL = 1e-9

log = logging.getLogger("treecap")


class InputError(ValueError):
    pass


def default_tol() -> float:
    raw = os.environ.get("TREECAP_TOL")
    if raw is None:
        return DEFAULT_TOL
    try:
        tol = float(raw)
    except ValueError:
        raise InputError(f"TREECAP_TOL is not a number: {raw!r}") from None
    return tol


def _kv(items: list[str]) -> dict[str, str]:
    out = {}
    for item in items:
        if "=" not in item:
            raise InputError(f"expected key=value, got {item!r}")
        k, v = item.split("=", 1)
        out[k] = v
    return out


def _int(v: str, name: str) -> int:
    try:
        return int(v)
    except ValueError:
        raise InputError(f"{name} must be an integer, got {v!r}") from None


def _emit(text: str, path: str | None) -> None:
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load_seq(path: str) -> TreeSeq:
    return io.seq_from_json(io.read(path, "tree_seq"))


def _exact(args, Z: TreeSeq) -> bool:
    if args.arith != "rational":
        return False
    n = len(Z.with_root().hull)
    if n > RATIONAL_NODE_CAP:
        raise InputError(f"rational mode is limited to {RATIONAL_NODE_CAP} hull nodes "
                         f"(this instance has {n})")
    return True


def _targets(Z: TreeSeq, at: str) -> list[str]:
    if at == "all":
        return list(Z)
    if at == "z0":
        return [Z.nodes[0]]
    node = "" if at in ("o", "root") else at
    if node not in Z:
        raise InputError(f"{at!r} is not a point of the sequence")
    return [node]


# commands

def cmd_gen(args) -> int:
    if sum(x is not None for x in (args.comb, args.cantor, args.nested, args.spec)) != 1:
        raise InputError("give exactly one of --comb, --cantor, --nested, --spec")
    if args.spec:
        raw = io.read(args.spec, "generator_spec")
        family = raw.get("family")
        params = {k: str(v) for k, v in raw.get("params", {}).items()}
    elif args.comb is not None:
        family, params = "comb", _kv(args.comb)
    elif args.cantor is not None:
        family, params = "cantor", _kv(args.cantor)
    else:
        family, params = "nested", {"blocks": args.nested}

    if family == "comb":
        spec = CombSpec(*(_int(params.get(k, ""), k) for k in ("depth0", "N", "b")))
        Z = gen_comb(spec)
        meta = {"family": "comb", "depth0": spec.depth0, "N": spec.N, "b": spec.b}
    elif family == "cantor":
        try:
            spec = CantorSpec(Fraction(params["a"]), Fraction(params["b"]),
                              _int(params["N"], "N"))
        except (KeyError, ValueError, ZeroDivisionError) as e:
            raise InputError(f"cantor needs a=, b=, N=: {e}") from None
        Z = gen_cantor(spec)
        meta = {"family": "cantor", "a": str(spec.a), "b": str(spec.b), "N": spec.N}
    elif family == "nested":
        blocks = []
        for part in params["blocks"].split(","):
            b, _, N = part.partition(":")
            blocks.append((_int(b, "b"), _int(N, "N")))
        Z = gen_nested(blocks)
        meta = {"family": "nested", "blocks": [list(bl) for bl in blocks]}
    else:
        raise InputError(f"unknown family {family!r}")
    _emit(io.dumps(io.seq_to_json(Z, meta)), args.output)
    return 0


def cmd_cap(args) -> int:
    Z = _load_seq(args.seq)
    exact = _exact(args, Z)
    rows = []
    for z in _targets(Z, args.at):
        rest = [w for w in Z if w != z]
        if not rest:
            raise InputError("capacity needs at least two points")
        row = {"z": z, "depth": depth(z)}
        if args.method in ("recursive", "both"):
            row["recursive"] = io.number(cap_recursive(z, rest, exact=exact))
        if args.method in ("oracle", "both"):
            row["oracle"] = io.number(cap_condenser({z}, rest, Z.hull, exact=exact).cap)
        if args.method == "both":
            a, b = Fraction(row["recursive"]), Fraction(row["oracle"])
            row["agree"] = bool(abs(a - b) <= args.tol * max(1, abs(b)))
        rows.append(row)
    _emit(io.dumps(io.envelope("capacities", method=args.method, arith=args.arith,
                               results=rows)), args.output)
    if args.method == "both" and not all(r["agree"] for r in rows):
        return 1
    return 0


def cmd_extremal(args) -> int:
    Z = _load_seq(args.seq)
    exact = _exact(args, Z)
    out = []
    for z in _targets(Z, args.at):
        res = cap_condenser({z}, [w for w in Z if w != z], Z.hull, exact=exact)
        H = res.potential
        resid = 0.0
        for x in H:
            if x and x not in Z and all(n in H for n in (x[:-1], x + "0", x + "1")):
                resid = max(resid, abs(float(harmonic_residual(H, x))))
        d = res.to_json()
        d["z"] = z
        d["harmonic_residual"] = resid
        d["cap"] = io.number(res.cap)
        for k in ("gamma_P", "gamma_plus", "gamma_minus"):
            d[k] = io.number(getattr(res, k))
        d["h"] = io.numbers_map(res.h)
        out.append(d)
    _emit(io.dumps(io.envelope("extremals", arith=args.arith, results=out)), args.output)
    return 0


CHECKERS = {
    "tree_sep": lambda Z, exact: check_tree_sep(Z),
    "simple": lambda Z, exact: check_simple(Z),
    "weak_simple": lambda Z, exact: check_weak_simple(Z),
    "tree_cap": lambda Z, exact: check_tree_cap(Z, exact=exact),
}


def cmd_check(args) -> int:
    Z = _load_seq(args.seq)
    exact = _exact(args, Z)
    kinds = list(KINDS) if args.all or not args.kind else args.kind
    for k in kinds:
        if k not in CHECKERS:
            raise InputError(f"unknown condition {k!r}")
    reports = [CHECKERS[k](Z, exact) for k in kinds]
    if args.format == "csv":
        text = reports_to_csv(reports)
    else:
        text = io.dumps(io.envelope("condition_reports",
                                    reports=[r.to_json() for r in reports]))
    _emit(text, args.output)
    status = 0
    for k, bound in _kv(args.assert_ or []).items():
        try:
            bound = float(bound)
        except ValueError:
            raise InputError(f"--assert bound must be a number: {bound!r}") from None
        match = [r for r in reports if r.kind == k]
        if not match:
            raise InputError(f"--assert {k}: condition not computed")
        # separation is a lower bound, the others upper bounds
        ok = (match[0].best_constant >= bound if k == "tree_sep"
              else match[0].best_constant <= bound)
        if not ok:
            print(f"FAIL {k}: {float(match[0].best_constant)!r} vs {bound!r}", file=sys.stderr)
            status = 1
    return status


def cmd_interpolate(args) -> int:
    Z = _load_seq(args.seq)
    exact = _exact(args, Z)
    if args.weaksim is not None:
        z0 = _targets(Z, args.weaksim)[0]
        W = weaksim_interpolant(z0, Z, exact=exact)
        for v in W.violations:
            print(f"warning: {v}", file=sys.stderr)
        _emit(io.dumps(io.weaksim_to_json(W)), args.output)
        return 0
    F = build_disjoint_family(Z, exact=exact)
    _emit(io.dumps(io.family_to_json(F)), args.output)
    return 0


def cmd_verify(args) -> int:
    obj = io.read(args.family, "interpolant_family")
    rep = verify_family(obj, seed=args.seed, regions=args.regions, tol=args.tol)
    _emit(io.dumps(io.envelope("verify_report", **rep.to_json())), args.output)
    return 0 if rep.passed else 1


def cmd_report(args) -> int:
    buf = _io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if args.sweep == "comb-fraction":
        beta = Fraction(1, args.b)
        w.writerow(["N", "gamma_N", "delta_N", "gamma_inf"])
        g = gamma_inf(float(beta))
        for N in range(args.n_max + 1):
            w.writerow([N, repr(float(gamma_n(float(beta), N))),
                        repr(delta_n(float(beta), N)), repr(g)])
    else:
        w.writerow(["depth0", "N", "b", "d_cap", "weak_simple", "tree_cap", "tree_sep"])
        for d0 in args.depth0:
            N = b = round(d0 ** 1.5)
            Z = gen_comb(CombSpec(d0, N, b))
            z0 = Z.nodes[0]
            cap = cap_recursive(z0, [v for v in Z if v != z0])
            w.writerow([d0, N, b, repr(depth(z0) * cap),
                        repr(float(check_weak_simple(Z).best_constant)),
                        repr(float(check_tree_cap(Z).best_constant)),
                        repr(float(check_tree_sep(Z).best_constant))])
    _emit(buf.getvalue(), args.output)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="treecap", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, seq=True):
        if seq:
            sp.add_argument("--seq", required=True, help="tree_seq JSON file")
        sp.add_argument("-o", "--output", help="output path (default: stdout)")
        sp.add_argument("--arith", choices=["float64", "rational"], default="float64")
        sp.add_argument("--tol", type=float, default=None,
                        help="tolerance (default: $TREECAP_TOL or 1e-9)")

    g = sub.add_parser("gen", help="generate an example sequence")
    g.add_argument("--comb", nargs="+", metavar="KEY=VAL")
    g.add_argument("--cantor", nargs="+", metavar="KEY=VAL")
    g.add_argument("--nested", metavar="B:N,B:N,...")
    g.add_argument("--spec", help="generator_spec JSON file")
    common(g, seq=False)
    g.set_defaults(func=cmd_gen)

    c = sub.add_parser("cap", help="gamma(z, Z) by recursion and/or the Dirichlet solve")
    common(c)
    c.add_argument("--at", default="all", help="z0, a node path, or all")
    c.add_argument("--method", choices=["recursive", "oracle", "both"], default="recursive")
    c.set_defaults(func=cmd_cap)

    e = sub.add_parser("extremal", help="extremal potential and boundary derivatives")
    common(e)
    e.add_argument("--at", default="z0")
    e.set_defaults(func=cmd_extremal)

    k = sub.add_parser("check", help="best constants of the tree conditions")
    common(k)
    k.add_argument("--all", action="store_true")
    k.add_argument("--kind", action="append", choices=list(KINDS))
    k.add_argument("--format", choices=["csv", "json"], default="csv")
    k.add_argument("--assert", dest="assert_", nargs="+", metavar="KIND=BOUND",
                   help="exit 1 unless tree_sep >= BOUND / other constants <= BOUND")
    k.set_defaults(func=cmd_check)

    i = sub.add_parser("interpolate", help="build the disjointly supported family")
    common(i)
    i.add_argument("--weaksim", metavar="Z0", help="build the ramp interpolant at Z0 instead")
    i.set_defaults(func=cmd_interpolate)

    v = sub.add_parser("verify", help="re-check a serialized family")
    v.add_argument("--family", required=True)
    v.add_argument("--seed", type=int, default=0, help="seed for random stopping regions")
    v.add_argument("--regions", type=int, default=500)
    common(v, seq=False)
    v.set_defaults(func=cmd_verify)

    r = sub.add_parser("report", help="plot-ready CSV sweeps")
    r.add_argument("sweep", choices=["comb-fraction", "comb-depth"])
    r.add_argument("--b", type=int, default=4)
    r.add_argument("--n-max", type=int, default=200)
    r.add_argument("--depth0", type=int, nargs="+", default=[16, 25, 36])
    common(r, seq=False)
    r.set_defaults(func=cmd_report)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    try:
        if args.tol is None:
            args.tol = default_tol()
        if not args.tol > 0:
            raise InputError("tolerance must be positive")
        return args.func(args)
    except (ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
