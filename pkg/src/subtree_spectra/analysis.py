"""Exhaustive root scans over all free trees of an order, and the
one-parameter spider family whose real roots fill [-2, -1].

Scanning work is per-tree independent; a worker pool processes trees in
enumeration order and results are reduced associatively, so reports are
deterministic for a fixed package version.
"""

from __future__ import annotations

import functools
import math
import multiprocessing
import time
from dataclasses import dataclass, replace
from fractions import Fraction

from .errors import (
    BudgetExhausted,
    CounterexampleFound,
    InternalInvariantViolation,
    NoConvergence,
)
from .root_solver import (
    GLOBAL_DISK_RADIUS,
    PAIRING_TOL,
    RegionPredicate,
    RootSet,
    certify_real_root,
    conjugate_pairing_defect,
    find_roots,
    global_disk,
    max_modulus,
    order_annulus,
    order_disk,
    real_interval,
    real_roots_in,
    reconstruction_residual,
    refine_extended,
)
from .subtree_engine import (
    all_local_polynomials,
    closed_form,
    forest_polynomial,
    subtree_polynomial,
)
from .tree_enum import enumerate_free_trees
from .tree_model import FamilySpec, Tree, delete_vertex

DEFAULT_SCAN_CEILING = 15
HARD_SCAN_CEILING = 18
HISTOGRAM_BINS = 64
ROOT_FREE_TOL = 1e-9

# rational sample grid in [-1, 0) for the exact negativity/monotonicity checks
_RATIONAL_SAMPLES = [Fraction(-1), Fraction(-7, 8), Fraction(-3, 4),
                     Fraction(-5, 8), Fraction(-1, 2), Fraction(-3, 8),
                     Fraction(-1, 4), Fraction(-1, 8), Fraction(-1, 16)]


@dataclass(frozen=True)
class Violation:
    tree_id: int
    root: complex
    region_kind: str
    distance: float


@dataclass(frozen=True)
class BoundaryHit:
    tree_id: int
    root: complex
    region_kind: str


@dataclass
class ScanReport:
    n: int
    tree_count: int
    max_root_modulus: float
    argmax_tree_id: int
    violations: list[Violation]
    boundary_hits: list[BoundaryHit]
    real_root_histogram: tuple[int, ...]
    elapsed_seconds: float
    real_roots: list[tuple[int, float]]
    max_reconstruction_residual: float
    max_pairing_defect: float
    root_rows: list[tuple] | None = None


def standard_regions(n: int) -> list[RegionPredicate]:
    return [global_disk(), order_disk(n), order_annulus(n)]


def _histogram_bin(x: float) -> int:
    lo = -GLOBAL_DISK_RADIUS
    frac = (x - lo) / (0.0 - lo)
    return min(HISTOGRAM_BINS - 1, max(0, int(frac * HISTOGRAM_BINS)))


def _scan_one(task, regions, precision):
    """Worker: roots and region classification for one tree (zero root
    excluded; it is inside both disks and on the annulus inner circle by
    construction)."""
    n, tree_id, edges = task
    t = Tree(n, edges)
    poly = subtree_polynomial(t)
    try:
        rs = find_roots(poly, precision)
    except NoConvergence as exc:
        raise NoConvergence(f"tree ({n},{tree_id}): {exc}") from exc
    violations = []
    hits = []
    for region in regions:
        for z in rs.roots:
            side = region.classify_point(z)
            if side == "outside":
                violations.append(
                    Violation(tree_id, z, region.kind, region.signed_distance(z))
                )
            elif side == "boundary":
                hits.append(BoundaryHit(tree_id, z, region.kind))
    reals = [
        z.real for z in rs.roots
        if abs(z.imag) <= PAIRING_TOL * max(1.0, abs(z))
    ]
    return (
        tree_id,
        rs,
        max_modulus(rs),
        violations,
        hits,
        reals,
        reconstruction_residual(poly, rs),
        conjugate_pairing_defect(rs),
    )


def _pool_map(func, tasks, workers):
    if workers is None or workers < 1:
        workers = multiprocessing.cpu_count()
    if workers == 1:
        for task in tasks:
            yield func(task)
        return
    chunk = max(1, len(tasks) // (workers * 8))
    with multiprocessing.Pool(workers) as pool:
        yield from pool.imap(func, tasks, chunksize=chunk)


def scan_order(n: int, regions: list[RegionPredicate] | None = None,
               workers: int = 1, precision: str = "std",
               include_roots: bool = False) -> ScanReport:
    """Roots of every free tree of order n, classified against each region."""
    if not (2 <= n <= HARD_SCAN_CEILING):
        raise ValueError(f"scan order must be in 2..{HARD_SCAN_CEILING}")
    if regions is None:
        regions = standard_regions(n)
    started = time.perf_counter()
    tasks = [
        (n, tree_id, t.edges())
        for tree_id, t in enumerate(enumerate_free_trees(n))
    ]
    worker = functools.partial(_scan_one, regions=regions, precision=precision)
    histogram = [0] * HISTOGRAM_BINS
    violations: list[Violation] = []
    hits: list[BoundaryHit] = []
    real_roots: list[tuple[int, float]] = []
    rows: list[tuple] | None = [] if include_roots else None
    best_mod, best_id = 0.0, -1
    worst_recon, worst_pair = 0.0, 0.0
    for result in _pool_map(worker, tasks, workers):
        tree_id, rs, mod, tree_viol, tree_hits, reals, recon, pair = result
        if mod > best_mod:
            best_mod, best_id = mod, tree_id
        violations.extend(tree_viol)
        hits.extend(tree_hits)
        for x in reals:
            real_roots.append((tree_id, x))
            if -GLOBAL_DISK_RADIUS - 1e-6 <= x <= 0.0:
                histogram[_histogram_bin(x)] += 1
        worst_recon = max(worst_recon, recon)
        worst_pair = max(worst_pair, pair)
        if rows is not None:
            for z, res in zip(rs.roots, rs.residuals):
                rows.append((n, tree_id, z.real, z.imag, abs(z), res))
    return ScanReport(
        n=n,
        tree_count=len(tasks),
        max_root_modulus=best_mod,
        argmax_tree_id=best_id,
        violations=violations,
        boundary_hits=hits,
        real_root_histogram=tuple(histogram),
        elapsed_seconds=time.perf_counter() - started,
        real_roots=real_roots,
        max_reconstruction_residual=worst_recon,
        max_pairing_defect=worst_pair,
        root_rows=rows,
    )


# --------------------------------------------------------------------------
# Root-free-interval verification
# --------------------------------------------------------------------------

def root_free_intervals() -> list[RegionPredicate]:
    """The three intervals that contain no subtree root, padded by the
    scan tolerance so boundary roots (0 and -1-3^(1/3)) stay outside."""
    return [
        real_interval(-math.inf, -GLOBAL_DISK_RADIUS - ROOT_FREE_TOL,
                      hi_open=False, tol=0.0),
        real_interval(-1.0 + ROOT_FREE_TOL, -ROOT_FREE_TOL, tol=0.0),
        real_interval(ROOT_FREE_TOL, math.inf, tol=0.0),
    ]


@dataclass
class IntervalReport:
    n: int
    tree_count: int
    rational_points: int
    elapsed_seconds: float


def _interval_check_one(task, precision):
    n, tree_id, edges = task
    t = Tree(n, edges)
    poly = subtree_polynomial(t)
    rs = find_roots(poly, precision)
    for interval in root_free_intervals():
        found = real_roots_in(rs, interval)
        if found:
            certified = certify_real_root(poly, found[0])
            return (tree_id, f"real root {found[0]!r} in "
                             f"[{interval.lo}, {interval.hi}] "
                             f"(exact-bracket certified: {certified})")
    deriv = poly.derivative()
    for x in _RATIONAL_SAMPLES:
        if poly.eval_exact(x) >= 0:
            return (tree_id, f"P({x}) = {poly.eval_exact(x)} >= 0")
        if x != -1 and deriv.eval_exact(x) <= 0:
            return (tree_id, f"P'({x}) = {deriv.eval_exact(x)} <= 0")
    return None


def verify_root_free_intervals(n: int, workers: int = 1,
                               precision: str = "std") -> IntervalReport:
    """Check every free tree of order n for roots in the root-free
    intervals, plus exact rational negativity/monotonicity on [-1, 0)."""
    if not (2 <= n <= HARD_SCAN_CEILING):
        raise ValueError(f"order must be in 2..{HARD_SCAN_CEILING}")
    started = time.perf_counter()
    tasks = [
        (n, tree_id, t.edges())
        for tree_id, t in enumerate(enumerate_free_trees(n))
    ]
    worker = functools.partial(_interval_check_one, precision=precision)
    for failure in _pool_map(worker, tasks, workers):
        if failure is not None:
            tree_id, witness = failure
            raise CounterexampleFound(
                f"order {n} tree {tree_id}: {witness}",
                n=n, tree_id=tree_id, witness=witness,
            )
    return IntervalReport(
        n=n,
        tree_count=len(tasks),
        rational_points=len(_RATIONAL_SAMPLES),
        elapsed_seconds=time.perf_counter() - started,
    )


# --------------------------------------------------------------------------
# Local-vs-deleted modulus comparison
# --------------------------------------------------------------------------

LOCAL_VS_DELETED_SLACK = 1e-10


@dataclass
class LocalDeletedReport:
    n: int
    tree_count: int
    samples_per_vertex: int
    elapsed_seconds: float


def _sample_annulus_points(count: int, seed: int) -> list[complex]:
    """Deterministic pseudo-random points with modulus in
    [1+3^(1/3), 4]."""
    import random

    rng = random.Random(seed)
    points = []
    for _ in range(count):
        r = rng.uniform(GLOBAL_DISK_RADIUS, 4.0)
        theta = rng.uniform(0.0, 2.0 * math.pi)
        points.append(complex(r * math.cos(theta), r * math.sin(theta)))
    return points


def _local_deleted_one(task, samples, seed):
    n, tree_id, edges = task
    t = Tree(n, edges)
    locals_ = all_local_polynomials(t)
    points = _sample_annulus_points(samples, seed + tree_id)
    for v in range(t.n):
        deleted = forest_polynomial(delete_vertex(t, v))
        local = locals_[v]
        for z in points:
            lhs = abs(local.eval_complex(z))
            rhs = abs(deleted.eval_complex(z))
            if lhs < rhs * (1.0 - LOCAL_VS_DELETED_SLACK):
                return (tree_id,
                        f"vertex {v}, z={z!r}: |local|={lhs!r} < |deleted|={rhs!r}")
    return None


def verify_local_vs_deleted(n: int, samples: int = 20, workers: int = 1,
                            seed: int = 20260809) -> LocalDeletedReport:
    """Sampled check that removing any vertex can only shrink the modulus
    of the subtree generating function, for |z| >= 1+3^(1/3).

    The comparison allows 1e-10 relative slack: one tree (the 3-star at
    its boundary point) attains equality rather than strict inequality.
    """
    if not (2 <= n <= 14):
        raise ValueError("order must be in 2..14")
    started = time.perf_counter()
    tasks = [
        (n, tree_id, t.edges())
        for tree_id, t in enumerate(enumerate_free_trees(n))
    ]
    worker = functools.partial(_local_deleted_one, samples=samples, seed=seed)
    for failure in _pool_map(worker, tasks, workers):
        if failure is not None:
            tree_id, witness = failure
            raise CounterexampleFound(
                f"order {n} tree {tree_id}: {witness}",
                n=n, tree_id=tree_id, witness=witness,
            )
    return LocalDeletedReport(
        n=n,
        tree_count=len(tasks),
        samples_per_vertex=samples,
        elapsed_seconds=time.perf_counter() - started,
    )


# --------------------------------------------------------------------------
# Spider family scalar root machinery
# --------------------------------------------------------------------------

def _spider_root_delta(a: int, b: int, y: float) -> float:
    """Sign-compatible surrogate for y^a (y^2+y+1)^b - a - b(1-y), y > 0.

    Evaluated in log space so enormous exponents stay finite.
    """
    rhs = a + b * (1.0 - y)
    if rhs <= 0.0:
        return 1.0
    return a * math.log(y) + b * math.log(y * y + y + 1.0) - math.log(rhs)


def _spider_positive_root(a: int, b: int) -> float:
    """Unique y > 0 where y^a (y^2+y+1)^b = a + b(1-y), by bisection.

    The left side rises from 0 and the right side falls, so the sign
    surrogate brackets cleanly: negative near 0, positive for large y.
    """
    lo = 1e-12
    hi = 1.0
    while _spider_root_delta(a, b, hi) <= 0.0:
        hi *= 2.0
        if hi > 1e9:
            raise InternalInvariantViolation(f"no sign change for ({a},{b})")
    for _ in range(200):
        mid = (lo + hi) / 2.0
        if mid == lo or mid == hi:
            break
        if _spider_root_delta(a, b, mid) > 0.0:
            hi = mid
        else:
            lo = mid
    return (lo + hi) / 2.0


def spider_real_root(a: int, b: int) -> float:
    """The one real root below -1 of the spider(a,b) subtree polynomial.

    Valid for odd a: substituting x = -1-y turns the polynomial into
    (y+1) times a monotone expression with a single positive zero.
    """
    if a < 1 or a % 2 == 0:
        raise ValueError("a must be odd and >= 1")
    if b < 1:
        raise ValueError("b must be >= 1")
    return -1.0 - _spider_positive_root(a, b)


def closure_parameter(rho: float) -> float:
    """log(rho^2+rho+1) / log(rho + 1 + 1/rho): strictly increasing
    (0,1) -> (0,1); the exponent mix t for which rho solves
    y^t (y^2+y+1)^(1-t) = 1."""
    if not (0.0 < rho < 1.0):
        raise ValueError("rho must be in (0,1)")
    return math.log(rho * rho + rho + 1.0) / math.log(rho + 1.0 + 1.0 / rho)


def closure_root_map(t: float) -> float:
    """Inverse of closure_parameter: the unique root in (0,1) of
    y^t (y^2+y+1)^(1-t) = 1, found by bisecting the monotone forward map."""
    if not (0.0 < t < 1.0):
        raise ValueError("t must be in (0,1)")
    lo, hi = 1e-15, 1.0 - 1e-16
    for _ in range(200):
        mid = (lo + hi) / 2.0
        if mid == lo or mid == hi:
            break
        if closure_parameter(mid) > t:
            hi = mid
        else:
            lo = mid
    return (lo + hi) / 2.0


def _limit_root(a: int, b: int) -> float:
    """Positive root of y^a (y^2+y+1)^b = 1, the n -> infinity limit of
    the multiplied spider roots."""
    return closure_root_map(a / (a + b))


# --------------------------------------------------------------------------
# Density construction: hit any target in (-2, -1)
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class ClosureWitness:
    a: int
    b: int
    multiplier: int
    achieved_root: float
    tree_order: int


@dataclass(frozen=True)
class ClosureTarget:
    target: float
    tolerance: float
    result: ClosureWitness | None = None


MAX_MULTIPLIER = 999_999
MAX_CANDIDATES = 48
SOLVER_CROSSCHECK_MAX_ORDER = 60
SOLVER_CROSSCHECK_TOL = 1e-8


def _continued_fraction_convergents(x: float, max_den: int) -> list[tuple[int, int]]:
    """(numerator, denominator) convergents of x with denominator <= max_den."""
    out = []
    h0, h1 = 1, 0
    k0, k1 = 0, 1
    value = x
    for _ in range(64):
        a = math.floor(value)
        h0, h1 = h1, a * h1 + h0
        k0, k1 = k1, a * k1 + k0
        if k1 > max_den:
            break
        out.append((h1, k1))
        frac = value - a
        if frac < 1e-15:
            break
        value = 1.0 / frac
    return out


def _candidate_pairs(y_target: float) -> list[tuple[int, int]]:
    """Spider (a, b) base pairs to try, cheapest witnesses first.

    Small-order pairs are ranked by how close their multiplier-1 root
    already is; they are followed by odd-numerator convergents of the
    exponent mix, which approximate arbitrarily well at the price of
    larger trees.
    """
    small = []
    for a in range(1, SOLVER_CROSSCHECK_MAX_ORDER, 2):
        for b in range(1, (SOLVER_CROSSCHECK_MAX_ORDER - a) // 2 + 1):
            if a + 2 * b + 1 > SOLVER_CROSSCHECK_MAX_ORDER:
                continue
            small.append((abs(_spider_positive_root(a, b) - y_target), a, b))
    small.sort()
    ordered = [(a, b) for _, a, b in small[:24]]

    t_star = closure_parameter(y_target)
    approx = []
    for p, q in _continued_fraction_convergents(t_star, 10_000):
        if p >= 1 and q - p >= 1 and p % 2 == 1:
            approx.append((abs(p / q - t_star), p, q - p))
    for q in range(2, 301):
        a = round(t_star * q)
        if a % 2 == 0:
            a += 1 if (t_star * q - a) >= 0 else -1
        if 1 <= a <= q - 1:
            approx.append((abs(a / q - t_star), a, q - a))
    approx.sort()
    seen = set(ordered)
    for _, a, b in approx:
        if (a, b) not in seen:
            seen.add((a, b))
            ordered.append((a, b))
        if len(ordered) >= MAX_CANDIDATES:
            break
    return ordered


def _best_multiplier(a: int, b: int, y_target: float) -> tuple[int, float]:
    """Odd multiplier m minimizing |root(f at (am, bm)) - y_target|.

    The root decreases monotonically in m toward the limit root, so a
    binary search over odd m finds the crossing.
    """
    y1 = _spider_positive_root(a, b)
    if y1 <= y_target:
        return 1, y1
    lo, hi = 1, 3
    while _spider_positive_root(a * hi, b * hi) > y_target:
        lo = hi
        hi *= 4
        hi += (hi + 1) % 2  # keep odd
        if hi > MAX_MULTIPLIER:
            hi = MAX_MULTIPLIER if MAX_MULTIPLIER % 2 else MAX_MULTIPLIER - 1
            break
    # smallest odd m in (lo, hi] with root <= y_target (may not exist at cap)
    while hi - lo > 2:
        mid = (lo + hi) // 2
        mid += (mid + 1) % 2
        if _spider_positive_root(a * mid, b * mid) > y_target:
            lo = mid
        else:
            hi = mid
    best_m, best_err = 1, abs(y1 - y_target)
    for m in (lo, hi):
        err = abs(_spider_positive_root(a * m, b * m) - y_target)
        if err < best_err:
            best_m, best_err = m, err
    root = _spider_positive_root(a * best_m, b * best_m)
    return best_m, root


def _crosscheck_witness(a: int, b: int, achieved: float) -> None:
    """Confirm the closed-form root against the full root solver.

    Witness polynomials carry huge coefficients, so the double-precision
    roots are refined at extended precision before comparing.
    """
    poly = closed_form(FamilySpec("spider", (a, b)))
    rs = refine_extended(poly, find_roots(poly))
    real_candidates = [
        z.real for z in rs.roots
        if abs(z.imag) <= PAIRING_TOL * max(1.0, abs(z)) and z.real < -1.0
    ]
    if not real_candidates:
        raise InternalInvariantViolation(
            f"solver found no real root below -1 for spider({a},{b})"
        )
    nearest = min(real_candidates, key=lambda x: abs(x - achieved))
    if abs(nearest - achieved) > SOLVER_CROSSCHECK_TOL:
        raise InternalInvariantViolation(
            f"spider({a},{b}) closed-form root {achieved!r} vs solver {nearest!r}"
        )


def approximate_target_root(ct: ClosureTarget) -> ClosureTarget:
    """Find a spider whose real subtree root is within tolerance of the target.

    Tries cheap small spiders first, then rational approximations of the
    limiting exponent mix with odd multipliers.  Witnesses of order at
    most 60 are re-verified with the full complex root solver.
    """
    if not (-2.0 < ct.target < -1.0):
        raise ValueError("target must lie in (-2, -1)")
    if ct.tolerance <= 0.0:
        raise ValueError("tolerance must be positive")
    y_target = -1.0 - ct.target
    best: ClosureWitness | None = None
    best_err = math.inf
    for a, b in _candidate_pairs(y_target):
        mult, root = _best_multiplier(a, b, y_target)
        err = abs(root - y_target)
        if err < best_err:
            order = (a + 2 * b) * mult + 1
            best = ClosureWitness(a, b, mult, -1.0 - root, order)
            best_err = err
        if best_err <= ct.tolerance:
            assert best is not None
            if best.tree_order <= SOLVER_CROSSCHECK_MAX_ORDER:
                _crosscheck_witness(best.a * best.multiplier,
                                    best.b * best.multiplier,
                                    best.achieved_root)
            return replace(ct, result=best)
    raise BudgetExhausted(
        f"no witness within {ct.tolerance} of {ct.target}; "
        f"best achieved {best.achieved_root if best else None}",
        best=replace(ct, result=best),
    )
