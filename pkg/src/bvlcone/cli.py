"""Command-line interface: bound tables, figure data and verification suites."""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from functools import partial
from typing import Sequence

from . import __version__
from ._exact import decimal_str
from .numerics import InputError
from .poly_scaling import (
    BoundReport,
    Method,
    closed_form_bound,
    full_sdp_bound,
    invariant_sdp_bound,
    legendre_bound_fixed,
    legendre_bound_optimized,
    zonal_partial_sum_profile,
)
from .polys import HomogPoly
from .sphere_moments import membership_test
from .tsp_scaling import improvement_ratio, kn_bound, knn_bound

EXIT_OK, EXIT_USAGE, EXIT_SOLVER, EXIT_VERIFY = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def parse_range(text: str) -> tuple[int, int]:
    """'a..b' (inclusive) or a single integer."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            lo, hi = int(lo), int(hi)
        else:
            lo = hi = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a..b, got {text!r}") from None
    if lo > hi:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return lo, hi


def _frac_json(x: Fraction) -> dict:
    return {"num": str(x.numerator), "den": str(x.denominator), "decimal": decimal_str(x)}


def _write(text: str, path: str | None):
    if path:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _map(fn, items, jobs: int):
    if jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(fn, items))
    return [fn(x) for x in items]


# -- poly-table ------------------------------------------------------------------

def poly_bound(n: int, d: int, method: str, classical: bool, k: int) -> BoundReport:
    m = Method(method)
    if m is Method.REDUCED:
        return invariant_sdp_bound(n, d, k, classical_legendre=classical)
    if m is Method.FULL:
        return full_sdp_bound(n, d, k)
    if m is Method.LEGENDRE_FIXED:
        return legendre_bound_fixed(n, d, k, classical_legendre=classical)
    if m is Method.LEGENDRE_OPT:
        if k == d:
            # no free coefficients: the optimized program is the fixed one
            rep = legendre_bound_fixed(n, d, k, classical_legendre=classical)
            rep.method = Method.LEGENDRE_OPT
            return rep
        return legendre_bound_optimized(n, d, k, classical_legendre=classical)
    return closed_form_bound(n, d)


def cmd_poly_table(args) -> int:
    (k_lo, k_hi), n, d = args.k, args.n, args.d
    if n < 2 or d < 1 or k_lo < d:
        raise UsageError("need n >= 2 and k >= d >= 1")
    if args.method == Method.REDUCED.value and n < 3:
        raise UsageError("the reduced program needs n >= 3")
    ks = list(range(k_lo, k_hi + 1))
    reports = _map(partial(poly_bound, n, d, args.method, args.classical_legendre), ks, args.jobs)
    failed = any(not r.verified for r in reports)
    if args.format == "json":
        rows = []
        for k, r in zip(ks, reports):
            row = {"k": k, "bound": r.bound, "method": r.method.value, "status": r.status_label}
            if r.exact is not None:
                row["exact"] = _frac_json(r.exact)
            rows.append(row)
        text = json.dumps({"n": n, "d": d, "classical_legendre": args.classical_legendre, "rows": rows},
                          indent=2) + "\n"
    else:
        lines = ["k,bound,method,status"]
        for k, r in zip(ks, reports):
            lines.append(f"{k},{r.bound:.10f},{r.method.value},{r.status_label}")
        text = "\n".join(lines) + "\n"
    _write(text, args.output)
    return EXIT_SOLVER if failed else EXIT_OK


# -- tsp-bounds ------------------------------------------------------------------

def tsp_row(graph: str, n: int, k: int) -> dict:
    if graph == "kn":
        rep = kn_bound(n, k)
        rhs_val = Fraction(improvement_ratio(n, k)[1])
    else:
        rep = knn_bound(n, k)
        rhs_val = None
    return {
        "k": k,
        "veomett_bound": rep.plain,
        "improved_bound": rep.improved,
        "cap_bound": rep.cap,
        "ratio_lhs": rep.improved / rep.plain,
        "ratio_rhs": rhs_val,
        "corrected_bound": rep.corrected,
    }


TSP_COLUMNS = ["k", "veomett_bound", "improved_bound", "cap_bound", "ratio_lhs", "ratio_rhs"]


def cmd_tsp_bounds(args) -> int:
    (k_lo, k_hi), n = args.k, args.n
    top = n // 2 if args.graph == "kn" else n
    min_n = 4 if args.graph == "kn" else 3
    if n < min_n:
        raise UsageError(f"need n >= {min_n} for --graph {args.graph}")
    if k_lo < 1 or k_hi > top:
        raise UsageError(f"k must lie in 1..{top}")
    rows = _map(partial(tsp_row, args.graph, n), list(range(k_lo, k_hi + 1)), args.jobs)
    cols = TSP_COLUMNS + (["corrected_bound"] if args.with_corrected else [])
    if args.format == "json":
        out = []
        for row in rows:
            out.append({c: (row[c] if c == "k" else (None if row[c] is None else _frac_json(row[c])))
                        for c in cols})
        text = json.dumps({"graph": args.graph, "n": n, "rows": out}, indent=2) + "\n"
    else:
        lines = [",".join(cols)]
        for row in rows:
            lines.append(",".join(str(row[c]) if c == "k" else ("" if row[c] is None else decimal_str(row[c]))
                                  for c in cols))
        text = "\n".join(lines) + "\n"
    _write(text, args.output)
    return EXIT_OK


# -- verify ----------------------------------------------------------------------

def cmd_verify(args) -> int:
    from .verify import run_suite

    report = run_suite(args.suite)
    _write(json.dumps(report, indent=2) + "\n", args.output)
    return EXIT_OK if all(c["status"] == "pass" for c in report["checks"]) else EXIT_VERIFY


# -- zonal-profile ---------------------------------------------------------------

def cmd_zonal_profile(args) -> int:
    if args.n < 3 or args.m < 0 or args.samples < 2:
        raise UsageError("need n >= 3, m >= 0, samples >= 2")
    data = zonal_partial_sum_profile(args.n, args.m, args.samples, classical_legendre=args.classical_legendre)
    lines = ["t,eta_m"]
    for t, v in zip(data["t"], data["values"]):
        lines.append(f"{t:.12f},{v:.12f}")
    crit = data["largest_critical_point"]
    crit_s = "none" if crit is None else f"{float(crit):.12f}"
    lines.append(f"# argmin={float(data['argmin']):.12f},min={float(data['min']):.12f},"
                 f"largest_critical_point={crit_s}")
    _write("\n".join(lines) + "\n", args.output)
    return EXIT_OK


# -- membership ------------------------------------------------------------------

def read_poly(path: str, n: int) -> HomogPoly:
    """One term per line: 'coeff e1 ... en'; '#' starts a comment."""
    terms = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != n + 1:
                raise UsageError(f"{path}:{lineno}: expected a coefficient and {n} exponents")
            try:
                terms.append((Fraction(parts[0]), tuple(int(e) for e in parts[1:])))
            except ValueError as exc:
                raise UsageError(f"{path}:{lineno}: {exc}") from None
    try:
        return HomogPoly.from_terms(n, terms)
    except ValueError as exc:
        raise UsageError(f"{path}: {exc}") from None


def cmd_membership(args) -> int:
    if args.n < 2 or args.d < 0 or args.k < 0:
        raise UsageError("need n >= 2, d >= 0, k >= 0")
    p = read_poly(args.poly, args.n)
    if not p.is_zero() and p.degree != 2 * args.d:
        raise UsageError(f"polynomial has degree {p.degree}, expected {2 * args.d}")
    p = HomogPoly(args.n, 2 * args.d, p.terms)
    res = membership_test(p, args.k)
    out = {"n": args.n, "d": args.d, "k": args.k, "verdict": res.verdict.value,
           "min_eigenvalue": res.min_eigenvalue, "tolerance": res.tolerance}
    if res.witness is not None:
        out["witness"] = [{"exponents": list(b), "coeff": _frac_json(c)}
                          for b, c in zip(res.basis, res.witness) if c]
        out["witness_value"] = _frac_json(res.witness_value)
    _write(json.dumps(out, indent=2) + "\n", args.output)
    return EXIT_OK


# -- parser ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="bvlcone", description="Scaling-constant bounds for spectrahedral cone approximations.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, jobs=True):
        p.add_argument("--output", "-o", help="write to this file instead of stdout")
        if jobs:
            p.add_argument("--jobs", type=int, default=1, help="worker processes (output order is fixed)")

    p = sub.add_parser("poly-table", help="bounds for nonnegative forms, one row per k")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--k", type=parse_range, required=True, help="a..b inclusive")
    p.add_argument("--method", choices=[m.value for m in Method], default=Method.REDUCED.value)
    p.add_argument("--classical-legendre", action="store_true",
                   help="use classical Legendre polynomials for the functional's profile")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    common(p)
    p.set_defaults(func=cmd_poly_table)

    p = sub.add_parser("tsp-bounds", help="traveling salesman cone bounds")
    p.add_argument("--graph", choices=["kn", "knn"], required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=parse_range, required=True)
    p.add_argument("--with-corrected", action="store_true",
                   help="append the bound certified by the exact square expansion")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    common(p)
    p.set_defaults(func=cmd_tsp_bounds)

    p = sub.add_parser("verify", help="run cross-check suites and emit a JSON report")
    p.add_argument("--suite", choices=["moments", "tsp", "harmonics", "sdp", "all"], default="all")
    common(p, jobs=False)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("zonal-profile", help="samples of the zonal partial sum profile")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--samples", type=int, default=512)
    p.add_argument("--classical-legendre", action="store_true")
    common(p, jobs=False)
    p.set_defaults(func=cmd_zonal_profile)

    p = sub.add_parser("membership", help="test a form against the level-k approximation")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--poly", required=True, help="file with one 'coeff e1 ... en' term per line")
    common(p, jobs=False)
    p.set_defaults(func=cmd_membership)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        # argparse exits with 2 on bad usage; keep --help at 0
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    try:
        return args.func(args)
    except (UsageError, InputError) as exc:
        print(f"bvlcone: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ArithmeticError as exc:
        print(f"bvlcone: numerical failure: {exc}", file=sys.stderr)
        return EXIT_SOLVER


if __name__ == "__main__":
    sys.exit(main())
