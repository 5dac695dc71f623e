"""Command-line front end.

Commands:
  poly     coefficients and scalar invariants of one tree
  roots    root set of one tree, CSV schema n,tree_id,re,im,modulus,residual
  scan     every free tree in an order range: root-cloud CSVs + report CSV
  closure  spider witness whose real root approximates a target in (-2,-1)
  verify   root-free-interval and vertex-deletion modulus checks

Exit codes: 0 ok, 2 usage/parse error, 3 internal invariant violation,
4 root iteration failed, 5 region violation or counterexample found,
6 closure search budget exhausted.
"""

from __future__ import annotations

import argparse
import csv
import io
import os
import sys

from .analysis import (
    DEFAULT_SCAN_CEILING,
    HARD_SCAN_CEILING,
    ClosureTarget,
    approximate_target_root,
    scan_order,
    verify_local_vs_deleted,
    verify_root_free_intervals,
)
from .errors import (
    BudgetExhausted,
    CounterexampleFound,
    InternalInvariantViolation,
    NoConvergence,
    SubtreeSpectraError,
)
from .root_solver import find_roots, global_disk, order_annulus, order_disk
from .subtree_engine import profile, subtree_polynomial
from .tree_model import FamilySpec, build_family, parse_edge_list

MAX_N_ENV = "SUBTREE_SPECTRA_MAX_N"

EXIT_USAGE = 2
EXIT_INVARIANT = 3
EXIT_NO_CONVERGENCE = 4
EXIT_VIOLATION = 5
EXIT_BUDGET = 6


def _fmt(x: float) -> str:
    """17 significant digits: round-trip exact for doubles."""
    return f"{x:.17g}"


def _scan_ceiling() -> int:
    raw = os.environ.get(MAX_N_ENV)
    if raw is None:
        return DEFAULT_SCAN_CEILING
    return min(int(raw), HARD_SCAN_CEILING)


def _load_tree(args):
    if args.family:
        return build_family(FamilySpec.parse(args.family))
    with open(args.edges, "r", encoding="utf-8") as fh:
        return parse_edge_list(fh.read())


def _add_tree_source(parser):
    group = parser.add_mutually_exclusive_group(required=True)
    group.add_argument("--family", help='family spec: "path:N", "star:N", "spider:A,B"')
    group.add_argument("--edges", help="path to an edge-list file, one 'u v' per line")


def _atomic_write(path: str, data: str) -> None:
    tmp = path + ".tmp"
    with open(tmp, "w", encoding="utf-8", newline="") as fh:
        fh.write(data)
    os.replace(tmp, path)


def _root_rows_csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["n", "tree_id", "re", "im", "modulus", "residual"])
    for n, tree_id, re, im, mod, res in rows:
        writer.writerow([n, tree_id, _fmt(re), _fmt(im), _fmt(mod), _fmt(res)])
    return buf.getvalue()


def cmd_poly(args) -> int:
    t = _load_tree(args)
    prof = profile(t)
    mean = prof.mean_subtree_order
    print(f"coefficients: {prof.polynomial}")
    print(f"subtree_count: {prof.subtree_count}")
    print(f"mean_subtree_order: {mean} ({_fmt(float(mean))})")
    print(f"independence_number: {prof.independence_number}")
    return 0


def cmd_roots(args) -> int:
    t = _load_tree(args)
    poly = subtree_polynomial(t)
    rs = find_roots(poly, precision=args.precision)
    rows = [
        (t.n, 0, z.real, z.imag, abs(z), res)
        for z, res in zip(rs.roots, rs.residuals)
    ]
    text = _root_rows_csv(rows)
    if args.out:
        _atomic_write(args.out, text)
    else:
        sys.stdout.write(text)
    return 0


_REGION_CHOICES = ("global-disk", "order-disk", "annulus", "all")


def _regions_for(n: int, choice: str):
    if choice == "global-disk":
        return [global_disk()]
    if choice == "order-disk":
        return [order_disk(n)]
    if choice == "annulus":
        return [order_annulus(n)]
    return [global_disk(), order_disk(n), order_annulus(n)]


def cmd_scan(args) -> int:
    ceiling = _scan_ceiling()
    if args.max_n > ceiling:
        print(
            f"error: --max-n {args.max_n} above ceiling {ceiling} "
            f"(raise with {MAX_N_ENV}, hard cap {HARD_SCAN_CEILING})",
            file=sys.stderr,
        )
        return EXIT_USAGE
    if args.min_n < 2 or args.min_n > args.max_n:
        print("error: need 2 <= --min-n <= --max-n", file=sys.stderr)
        return EXIT_USAGE
    os.makedirs(args.out, exist_ok=True)
    report_buf = io.StringIO()
    writer = csv.writer(report_buf, lineterminator="\n")
    writer.writerow(["n", "tree_count", "max_modulus", "argmax_tree_id",
                     "violations", "boundary_hits", "seconds"])
    any_violation = False
    for n in range(args.min_n, args.max_n + 1):
        report = scan_order(
            n,
            regions=_regions_for(n, args.regions),
            workers=args.workers,
            precision=args.precision,
            include_roots=True,
        )
        _atomic_write(
            os.path.join(args.out, f"roots_n{n:02d}.csv"),
            _root_rows_csv(report.root_rows),
        )
        writer.writerow([
            n, report.tree_count, _fmt(report.max_root_modulus),
            report.argmax_tree_id, len(report.violations),
            len(report.boundary_hits), _fmt(report.elapsed_seconds),
        ])
        status = "VIOLATIONS" if report.violations else "ok"
        print(
            f"n={n}: {report.tree_count} trees, max modulus "
            f"{report.max_root_modulus:.12f} (tree {report.argmax_tree_id}), "
            f"{len(report.violations)} violations, "
            f"{len(report.boundary_hits)} boundary hits [{status}]"
        )
        for v in report.violations:
            print(f"  violation: tree {v.tree_id} root {v.root!r} "
                  f"outside {v.region_kind} by {v.distance:.3e}")
        if report.violations:
            any_violation = True
    _atomic_write(os.path.join(args.out, "report.csv"), report_buf.getvalue())
    return EXIT_VIOLATION if any_violation else 0


def cmd_closure(args) -> int:
    if not (-2.0 < args.target < -1.0):
        print("error: --target must lie strictly inside (-2, -1)", file=sys.stderr)
        return EXIT_USAGE
    if args.eps <= 0:
        print("error: --eps must be positive", file=sys.stderr)
        return EXIT_USAGE
    result = approximate_target_root(ClosureTarget(args.target, args.eps))
    w = result.result
    print(f"target: {_fmt(args.target)}")
    print(f"witness: spider a={w.a * w.multiplier} b={w.b * w.multiplier} "
          f"(base a={w.a} b={w.b}, multiplier {w.multiplier})")
    print(f"tree_order: {w.tree_order}")
    print(f"achieved_root: {_fmt(w.achieved_root)}")
    print(f"error: {_fmt(abs(w.achieved_root - args.target))}")
    return 0


def cmd_verify(args) -> int:
    for n in range(max(2, args.min_n), args.max_n + 1):
        report = verify_root_free_intervals(n, workers=args.workers)
        print(f"n={n}: root-free intervals ok "
              f"({report.tree_count} trees, "
              f"{report.rational_points} rational sample points)")
    top = min(args.max_n, 14)
    for n in range(max(2, args.min_n), top + 1):
        report = verify_local_vs_deleted(n, samples=args.samples,
                                         workers=args.workers)
        print(f"n={n}: local-vs-deleted modulus ok "
              f"({report.tree_count} trees x {report.samples_per_vertex} points)")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="subtree-spectra",
        description="subtree polynomials of trees and the geometry of their roots",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_poly = sub.add_parser("poly", help="polynomial and invariants of one tree")
    _add_tree_source(p_poly)
    p_poly.set_defaults(func=cmd_poly)

    p_roots = sub.add_parser("roots", help="root set of one tree as CSV")
    _add_tree_source(p_roots)
    p_roots.add_argument("--out", help="write CSV here instead of stdout")
    p_roots.add_argument("--precision", choices=("std", "ext"), default="std")
    p_roots.set_defaults(func=cmd_roots)

    p_scan = sub.add_parser("scan", help="scan all free trees of orders min..max")
    p_scan.add_argument("--min-n", type=int, default=2)
    p_scan.add_argument("--max-n", type=int, required=True)
    p_scan.add_argument("--regions", choices=_REGION_CHOICES, default="all")
    p_scan.add_argument("--out", default="scan-output")
    p_scan.add_argument("--precision", choices=("std", "ext"), default="std")
    p_scan.add_argument("--workers", type=int, default=0,
                        help="0 = all available cores")
    p_scan.set_defaults(func=cmd_scan)

    p_clo = sub.add_parser("closure", help="spider witness near a real target")
    p_clo.add_argument("--target", type=float, required=True)
    p_clo.add_argument("--eps", type=float, default=1e-2)
    p_clo.set_defaults(func=cmd_closure)

    p_ver = sub.add_parser("verify", help="interval and deletion-modulus checks")
    p_ver.add_argument("--min-n", type=int, default=2)
    p_ver.add_argument("--max-n", type=int, required=True)
    p_ver.add_argument("--samples", type=int, default=20)
    p_ver.add_argument("--workers", type=int, default=0)
    p_ver.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (SubtreeSpectraError, OSError) as exc:
        kind = type(exc).__name__
        print(f"error ({kind}): {exc}", file=sys.stderr)
        if isinstance(exc, NoConvergence):
            return EXIT_NO_CONVERGENCE
        if isinstance(exc, CounterexampleFound):
            return EXIT_VIOLATION
        if isinstance(exc, BudgetExhausted):
            return EXIT_BUDGET
        if isinstance(exc, InternalInvariantViolation):
            return EXIT_INVARIANT
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
