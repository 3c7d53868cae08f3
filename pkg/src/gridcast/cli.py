"""Command-line front end.

Subcommands: exact, upper, lower, report, construct, verify, table.
Exit codes: 0 success, 1 failed verification or bound conflict,
2 usage error, 3 search budget exhausted.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from typing import Optional, Sequence

from . import certificates as certs
from .bounds import best_lower_bound, bound_report, canonical, exact_value, upper_bound
from .constructions import (
    best_lattice_ell,
    boundary_multipacking,
    cxc_multipacking_pair,
    lattice_broadcast,
    p4_tiling,
    pxc_vector_multipacking,
    pxp_multipacking_from_vector,
)
from .errors import BoundConflict, BudgetExceeded, GridcastError, UnsupportedRange
from .exact import SearchLimits, exact_bnb, exact_bruteforce, exact_profile_dp
from .grid import Family, GridGraph, make_grid

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3
COLUMNS = ("lower", "upper", "exact", "gap")
FORMATS = ("csv", "markdown", "json")
CONSTRUCTIONS = (
    "p4-tiling", "lattice", "boundary", "row-vector",
    "cxc-multipacking", "cxc-fractional-broadcast", "optimal",
)


class UsageError(GridcastError):
    pass


def parse_range(text: str) -> list[int]:
    """'a..b' (inclusive, empty when b < a), 'a,b,c' or a single integer."""
    text = text.strip()
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            return list(range(int(lo), int(hi) + 1))
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise UsageError(f"bad range {text!r}; use 'a..b' or 'a,b,c'") from None


# --------------------------------------------------------------------- table

@dataclass(frozen=True)
class TableRequest:
    family: Family
    ms: tuple[int, ...]
    ns: tuple[int, ...]
    columns: tuple[str, ...] = ("lower", "upper", "gap")
    fmt: str = "csv"
    limits: Optional[SearchLimits] = None

    def __post_init__(self):
        bad = [c for c in self.columns if c not in COLUMNS]
        if bad or not self.columns:
            raise UsageError(f"columns must be drawn from {', '.join(COLUMNS)}")
        if self.fmt not in FORMATS:
            raise UsageError(f"format must be one of {', '.join(FORMATS)}")
        if "exact" in self.columns and self.limits is None:
            raise UsageError("the exact column needs search limits")


def table_rows(req: TableRequest) -> list[dict]:
    cells = [(m, n) for m in req.ms for n in req.ns]
    graphs = []
    for m, n in cells:
        try:
            graphs.append(make_grid(req.family, m, n))
        except ValueError as exc:
            raise UnsupportedRange(str(exc)) from exc
    rows = []
    for g in graphs:
        row: dict = {"family": g.family.value, "m": g.m, "n": g.n}
        lo, up = best_lower_bound(g)[0].value, upper_bound(g).value
        for col in req.columns:
            if col == "lower":
                row[col] = lo
            elif col == "upper":
                row[col] = up
            elif col == "gap":
                row[col] = up - lo
            else:
                row[col] = exact_value(canonical(g), req.limits).value
        rows.append(row)
    return rows


def emit_table(req: TableRequest) -> str:
    rows = table_rows(req)
    keys = ["family", "m", "n", *req.columns]
    if req.fmt == "json":
        return json.dumps(rows, indent=2) + "\n"
    if req.fmt == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=keys, lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
        return buf.getvalue()
    lines = ["| " + " | ".join(keys) + " |", "|" + "---|" * len(keys)]
    lines += ["| " + " | ".join(str(r[k]) for k in keys) + " |" for r in rows]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- construct

def build_certificate(kind: str, g: GridGraph, ell: Optional[int] = None,
                      limits: Optional[SearchLimits] = None) -> certs.Certificate:
    fam = g.family
    if kind == "p4-tiling":
        if fam is not Family.PxP or g.m != 4:
            raise UsageError("p4-tiling needs --family pxp --m 4")
        return certs.broadcast_certificate(p4_tiling(g.n), f"P_4 tiling for n={g.n}")
    if kind == "lattice":
        if fam is not Family.PxP:
            raise UsageError("lattice needs --family pxp")
        ell = best_lattice_ell(g.m, g.n).ell if ell is None else ell
        return certs.broadcast_certificate(lattice_broadcast(g.m, g.n, ell), f"mod-13 lattice, class {ell}")
    if kind == "boundary":
        if fam is not Family.PxP:
            raise UsageError("boundary needs --family pxp")
        return certs.weighting_certificate(boundary_multipacking(g), "lower", "weight 1/3 on the outer boundary")
    if kind == "row-vector":
        if fam is Family.PxC:
            w = pxc_vector_multipacking(g.m, g.n)
        elif fam is Family.PxP:
            w = pxp_multipacking_from_vector(g.m, g.n)
        else:
            raise UsageError("row-vector needs --family pxc or pxp")
        return certs.weighting_certificate(w, "lower", f"row-vector multipacking for m={g.m}")
    if kind in ("cxc-multipacking", "cxc-fractional-broadcast"):
        if fam is not Family.CxC:
            raise UsageError(f"{kind} needs --family cxc")
        pair = cxc_multipacking_pair(g.m, g.n)
        w = pair.mp if kind == "cxc-multipacking" else pair.fb
        return certs.weighting_certificate(w, "lp_value", "uniform weighting on C_m x C_n")
    if kind == "optimal":
        res = exact_bnb(g, limits or SearchLimits.from_env())
        return certs.broadcast_certificate(res.certificate, "optimal broadcast from branch and bound")
    raise UsageError(f"unknown construction {kind!r}")


# ------------------------------------------------------------------- parser

def _graph_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--family", required=True, choices=[f.value for f in Family])
    p.add_argument("--m", type=int, required=True, help="rows (path in P_m x C_n)")
    p.add_argument("--n", type=int, required=True, help="columns (cycle in P_m x C_n)")


def _limit_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--node-budget", type=int, default=None)
    p.add_argument("--time-budget", type=float, default=None, help="seconds")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="gridcast", description="2-limited broadcast domination on grids")
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("exact", help="exact gamma_b2 by search")
    _graph_args(p)
    _limit_args(p)
    p.add_argument("--method", choices=("auto", "bruteforce", "bnb", "dp"), default="auto")

    for name in ("upper", "lower"):
        p = sub.add_parser(name, help=f"{name} bound from the closed forms")
        _graph_args(p)
        p.add_argument("--provenance", action="store_true", help="also print where the bound comes from")

    p = sub.add_parser("report", help="lower and upper bounds, optionally the exact value")
    _graph_args(p)
    _limit_args(p)
    p.add_argument("--exact", action="store_true")
    p.add_argument("--verbose", action="store_true", help="print provenance and certificates")

    p = sub.add_parser("construct", help="write a certificate file")
    _graph_args(p)
    _limit_args(p)
    p.add_argument("--kind", required=True, choices=CONSTRUCTIONS)
    p.add_argument("--ell", type=int, default=None, help="lattice class (default: best)")
    p.add_argument("--out", "-o", default="-", help="output path, '-' for stdout")

    p = sub.add_parser("verify", help="re-check a certificate file")
    p.add_argument("path", help="certificate JSON, '-' for stdin")

    p = sub.add_parser("table", help="bounds over a range of sizes")
    p.add_argument("--family", required=True, choices=[f.value for f in Family])
    p.add_argument("--m", required=True, help="'a..b' or 'a,b,c'")
    p.add_argument("--n", required=True, help="'a..b' or 'a,b,c'")
    p.add_argument("--columns", default="lower,upper,gap")
    p.add_argument("--format", dest="fmt", choices=FORMATS, default="csv")
    _limit_args(p)
    return ap


def _limits(args) -> SearchLimits:
    return SearchLimits.from_env(node_budget=args.node_budget, time_budget=args.time_budget)


def _run_exact(args, out) -> int:
    g = make_grid(args.family, args.m, args.n)
    limits = _limits(args)
    method = args.method
    if method == "auto":
        return _print(out, exact_value(canonical(g), limits).value)
    if method == "bruteforce":
        return _print(out, exact_bruteforce(g, limits))
    if method == "dp":
        return _print(out, exact_profile_dp(g.family, g.m, g.n, limits))
    return _print(out, exact_bnb(g, limits).value)


def _print(out, value) -> int:
    print(value, file=out)
    return EXIT_OK


def _dispatch(args, out, err) -> int:
    cmd = args.cmd
    if cmd == "exact":
        return _run_exact(args, out)
    if cmd in ("upper", "lower"):
        g = make_grid(args.family, args.m, args.n)
        b = upper_bound(g) if cmd == "upper" else best_lower_bound(g)[0]
        print(b.value, file=out)
        if args.provenance:
            print(b.provenance, file=out)
        return EXIT_OK
    if cmd == "report":
        g = make_grid(args.family, args.m, args.n)
        rep = bound_report(g, want_exact=args.exact, limits=_limits(args))
        print(rep.summary(), file=out)
        if args.verbose:
            print(f"lower: {rep.lower.provenance}", file=out)
            print(f"upper: {rep.upper.provenance}", file=out)
            if rep.exact is not None:
                print(f"exact: {rep.exact.provenance}", file=out)
            print("certificates: " + (", ".join(rep.certificates) or "none"), file=out)
        return EXIT_OK
    if cmd == "construct":
        g = make_grid(args.family, args.m, args.n)
        text = certs.dumps(build_certificate(args.kind, g, args.ell, _limits(args)))
        if args.out == "-":
            out.write(text)
        else:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text)
        return EXIT_OK
    if cmd == "verify":
        try:
            if args.path == "-":
                text = sys.stdin.read()
            else:
                with open(args.path, encoding="utf-8") as fh:
                    text = fh.read()
        except OSError as exc:
            print(f"error: cannot read {args.path}: {exc.strerror}", file=err)
            return EXIT_USAGE
        try:
            cert = certs.loads(text)
        except certs.CertificateError as exc:
            print(f"FAIL: {exc}", file=err)
            return EXIT_FAIL
        verdict = certs.verify(cert)
        if verdict.ok:
            print(f"OK: {verdict.message}", file=out)
            return EXIT_OK
        print(f"FAIL: {verdict.message}", file=err)
        return EXIT_FAIL
    if cmd == "table":
        columns = tuple(c.strip() for c in args.columns.split(",") if c.strip())
        limits = _limits(args) if "exact" in columns else None
        req = TableRequest(Family.parse(args.family), tuple(parse_range(args.m)), tuple(parse_range(args.n)),
                           columns, args.fmt, limits)
        out.write(emit_table(req))
        return EXIT_OK
    raise UsageError(f"unknown command {cmd!r}")


def run(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return _dispatch(args, out, err)
    except BudgetExceeded as exc:
        msg = f"budget exhausted: {exc}"
        if getattr(exc.best, "value", None) is not None:
            msg += f" (best found {exc.best.value}, not proved optimal)"
        print(msg, file=err)
        return EXIT_BUDGET
    except BoundConflict as exc:
        print(f"conflict: {exc}", file=err)
        return EXIT_FAIL
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
