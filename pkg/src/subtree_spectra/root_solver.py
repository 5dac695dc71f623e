"""All complex roots of exact integer polynomials, plus root-region tests.

The solver factors out the exact power of x, runs the Aberth-Ehrlich
simultaneous iteration on the cofactor in double precision, Newton-polishes,
and checks a scaled backward error per root:

    residual(z) = |p(z)| / sum_k |a_k| |z|^k

If any residual exceeds the tolerance the whole computation re-runs once
under mpmath at 40 significant digits before giving up.

Region predicates cover the disk of radius 1 + 3^(1/3) (which contains
every subtree root), the order-dependent disk of radius 1 + (n-1)^(1/(n-1)),
the annulus 1/2 <= |z + 1/2| <= 1/2 + (n-1)^(1/(n-1)), and real intervals.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .errors import NoConvergence
from .poly_core import ExactPolynomial

DELTA_TOL = 1e-14          # per-root update threshold that ends the iteration
RESIDUAL_TOL = 1e-10       # scaled backward error each root must meet
MAX_ITERATIONS = 200
POLISH_STEPS = 3
EXTENDED_DPS = 40          # decimal digits for the escalation pass
PAIRING_TOL = 1e-10        # |Im z| below this (scaled) counts as real
BOUNDARY_TOL = 1e-9        # default relative tolerance for region boundaries

GLOBAL_DISK_RADIUS = 1.0 + 3.0 ** (1.0 / 3.0)

# irrational angular offset so start points never align with axes or roots
_START_ANGLE_OFFSET = math.sqrt(2.0)


@dataclass(frozen=True)
class RootSet:
    """Roots of one polynomial; the root at the origin is factored exactly."""

    roots: tuple[complex, ...]
    residuals: tuple[float, ...]
    zero_multiplicity: int

    def __len__(self) -> int:
        return len(self.roots)


def order_radius(n: int) -> float:
    """(n-1)^(1/(n-1)), the growth factor in the order-dependent regions."""
    if n < 2:
        raise ValueError("order-dependent regions need n >= 2")
    return (n - 1) ** (1.0 / (n - 1))


@dataclass(frozen=True)
class RegionPredicate:
    """Membership test with a relative boundary tolerance.

    kinds: disk_global, disk_order_n (needs n), annulus_order_n (needs n),
    real_interval (lo/hi with openness flags).
    """

    kind: str
    n: int = 0
    lo: float = math.nan
    hi: float = math.nan
    lo_open: bool = False
    hi_open: bool = False
    boundary_tolerance: float = BOUNDARY_TOL

    def radii(self) -> tuple[complex, float, float]:
        """(center, inner radius, outer radius) of the circular regions."""
        if self.kind == "disk_global":
            return 0j, 0.0, GLOBAL_DISK_RADIUS
        if self.kind == "disk_order_n":
            return 0j, 0.0, 1.0 + order_radius(self.n)
        if self.kind == "annulus_order_n":
            return -0.5 + 0j, 0.5, 0.5 + order_radius(self.n)
        raise ValueError(f"{self.kind} is not a circular region")

    def classify_point(self, z: complex) -> str:
        """'inside', 'boundary', or 'outside' for a single point."""
        tol = self.boundary_tolerance * max(1.0, abs(z))
        if self.kind == "real_interval":
            if abs(z.imag) > tol:
                return "outside"
            x = z.real
            for endpoint in (self.lo, self.hi):
                if math.isfinite(endpoint) and abs(x - endpoint) <= tol:
                    return "boundary"
            if self.lo < x < self.hi:
                return "inside"
            return "outside"
        center, inner, outer = self.radii()
        w = abs(z - center)
        if abs(w - outer) <= tol:
            return "boundary"
        if inner > 0.0 and abs(w - inner) <= tol:
            return "boundary"
        if inner < w < outer:
            return "inside"
        return "outside"

    def signed_distance(self, z: complex) -> float:
        """Distance outside the region (positive = violation) for circular kinds."""
        center, inner, outer = self.radii()
        w = abs(z - center)
        if w > outer:
            return w - outer
        if w < inner:
            return inner - w
        return max(w - outer, inner - w)


def global_disk(tol: float = BOUNDARY_TOL) -> RegionPredicate:
    return RegionPredicate("disk_global", boundary_tolerance=tol)


def order_disk(n: int, tol: float = BOUNDARY_TOL) -> RegionPredicate:
    return RegionPredicate("disk_order_n", n=n, boundary_tolerance=tol)


def order_annulus(n: int, tol: float = BOUNDARY_TOL) -> RegionPredicate:
    return RegionPredicate("annulus_order_n", n=n, boundary_tolerance=tol)


def real_interval(lo: float, hi: float, lo_open: bool = False,
                  hi_open: bool = False, tol: float = BOUNDARY_TOL) -> RegionPredicate:
    return RegionPredicate("real_interval", lo=lo, hi=hi,
                           lo_open=lo_open, hi_open=hi_open,
                           boundary_tolerance=tol)


# --------------------------------------------------------------------------
# Aberth-Ehrlich iteration
# --------------------------------------------------------------------------

def _horner(coeffs, z):
    acc = coeffs[-1]
    for c in reversed(coeffs[:-1]):
        acc = acc * z + c
    return acc


def _start_points(degree: int, radius: float) -> list[complex]:
    return [
        radius * cmath.exp(1j * (2.0 * math.pi * k / degree + _START_ANGLE_OFFSET))
        for k in range(degree)
    ]


def _root_bound(coeffs) -> float:
    """Fujiwara upper bound on root moduli: stays modest even when
    low-order coefficients are astronomically larger than the leading one
    (the Cauchy bound would overflow the start-circle evaluation)."""
    d = len(coeffs) - 1
    lead = abs(coeffs[-1])
    bound = 0.0
    for k in range(1, d + 1):
        c = abs(coeffs[d - k])
        if c:
            bound = max(bound, (c / lead) ** (1.0 / k))
    return 2.0 * bound


def _aberth_double(int_coeffs) -> list[complex]:
    """Simultaneous iteration in double precision; may return unconverged points."""
    coeffs = [float(c) for c in int_coeffs]   # may raise OverflowError upstream
    degree = len(coeffs) - 1
    deriv = [k * c for k, c in enumerate(coeffs)][1:]
    z = _start_points(degree, (1.0 + _root_bound(coeffs)) / 2.0)
    for _ in range(MAX_ITERATIONS):
        converged = True
        for i in range(degree):
            zi = z[i]
            pv = _horner(coeffs, zi)
            if pv == 0:
                continue
            dv = _horner(deriv, zi)
            if dv == 0:
                z[i] = zi * (1.0 + 1e-8) + 1e-8
                converged = False
                continue
            newton = pv / dv
            s = 0j
            for j in range(degree):
                if j != i:
                    s += 1.0 / (zi - z[j])
            denom = 1.0 - newton * s
            step = newton if denom == 0 else newton / denom
            z[i] = zi - step
            if abs(step) > DELTA_TOL * max(1.0, abs(z[i])):
                converged = False
        if converged:
            break
    # Newton polish
    for i in range(degree):
        zi = z[i]
        for _ in range(POLISH_STEPS):
            pv = _horner(coeffs, zi)
            dv = _horner(deriv, zi)
            if dv == 0 or pv == 0:
                break
            zi = zi - pv / dv
        z[i] = zi
    return z


def _aberth_extended(int_coeffs, warm_start=None) -> list[complex]:
    """Same iteration under mpmath at EXTENDED_DPS digits; rounds back to complex.

    warm_start seeds the iteration from approximate roots (e.g. the
    double-precision solution) instead of the start circle.
    """
    with mpmath.workdps(EXTENDED_DPS):
        coeffs = [mpmath.mpf(c) for c in int_coeffs]
        degree = len(coeffs) - 1
        lead = abs(coeffs[-1])
        deriv = [k * c for k, c in enumerate(coeffs)][1:]
        if warm_start is not None:
            z = [mpmath.mpc(w) for w in warm_start]
            for i in range(degree):      # coincident seeds would zero the
                for j in range(i):       # repulsion term; nudge them apart
                    if abs(z[i] - z[j]) < mpmath.mpf("1e-30"):
                        z[i] += mpmath.mpf("1e-20") * (1 + 1j) * (i + 1)
        else:
            bound = max(
                (abs(coeffs[degree - k]) / lead) ** (mpmath.mpf(1) / k)
                for k in range(1, degree + 1)
                if coeffs[degree - k]
            )
            radius = (1 + 2 * bound) / 2
            z = [
                radius * mpmath.expjpi(2 * mpmath.mpf(k) / degree)
                * mpmath.expj(_START_ANGLE_OFFSET)
                for k in range(degree)
            ]
        delta_tol = mpmath.mpf(10) ** (-(EXTENDED_DPS - 12))
        one = mpmath.mpf(1)
        # ill-conditioned clusters leave the steps jittering at the noise
        # floor; three non-improving sweeps below 1e-12 relative also stop
        prev_worst = mpmath.inf
        stalled = 0
        for _ in range(MAX_ITERATIONS):
            worst = mpmath.mpf(0)
            for i in range(degree):
                zi = z[i]
                pv = _horner(coeffs, zi)
                if pv == 0:
                    continue
                dv = _horner(deriv, zi)
                if dv == 0:
                    z[i] = zi * (1 + delta_tol) + delta_tol
                    worst = mpmath.inf
                    continue
                newton = pv / dv
                s = mpmath.mpc(0)
                for j in range(degree):
                    if j != i:
                        diff = zi - z[j]
                        if diff != 0:
                            s += 1 / diff
                denom = 1 - newton * s
                step = newton if denom == 0 else newton / denom
                z[i] = zi - step
                worst = max(worst, abs(step) / max(one, abs(z[i])))
            if worst <= delta_tol:
                break
            if worst >= prev_worst * mpmath.mpf("0.5"):
                stalled += 1
                if stalled >= 3 and worst < mpmath.mpf("1e-12"):
                    break
            else:
                stalled = 0
            prev_worst = worst
        for i in range(degree):
            zi = z[i]
            for _ in range(POLISH_STEPS):
                pv = _horner(coeffs, zi)
                dv = _horner(deriv, zi)
                if dv == 0 or pv == 0:
                    break
                zi = zi - pv / dv
            z[i] = zi
        return [complex(zi) for zi in z]


def _scaled_residual(int_coeffs, z: complex) -> float:
    """Backward error |p(z)| / sum |a_k||z|^k of one computed root."""
    try:
        floats = [float(c) for c in int_coeffs]
    except OverflowError:
        with mpmath.workdps(EXTENDED_DPS):
            zz = mpmath.mpc(z)
            az = abs(zz)
            den = mpmath.mpf(0)
            power = mpmath.mpf(1)
            for c in int_coeffs:
                den += abs(mpmath.mpf(c)) * power
                power *= az
            acc = mpmath.mpc(0)
            for c in reversed(int_coeffs):
                acc = acc * zz + c
            return float(abs(acc) / den) if den > 0 else math.inf
    num = abs(_horner(floats, z))
    az = abs(z)
    den = 0.0
    power = 1.0
    for c in floats:
        den += abs(c) * power
        power *= az
    return num / den if den > 0 else math.inf


def refine_extended(p: ExactPolynomial, rs: RootSet) -> RootSet:
    """Re-run the simultaneous iteration at EXTENDED_DPS digits.

    The double-precision pass has a tiny backward error, but polynomials
    with huge coefficients can still leave large forward errors in the
    roots.  Seeding the extended iteration with the double roots converges
    in a few sweeps; if that fails the circle start is used instead.
    """
    cofactor = p.coefficients[rs.zero_multiplicity:]
    refined = _aberth_extended(cofactor, warm_start=rs.roots)
    refined.sort(key=lambda w: (w.real, w.imag))
    residuals = tuple(_scaled_residual(cofactor, w) for w in refined)
    if any(r > RESIDUAL_TOL for r in residuals):
        refined = _aberth_extended(cofactor)
        refined.sort(key=lambda w: (w.real, w.imag))
        residuals = tuple(_scaled_residual(cofactor, w) for w in refined)
    return RootSet(tuple(refined), residuals, rs.zero_multiplicity)


def find_roots(p: ExactPolynomial, precision: str = "std") -> RootSet:
    """All roots of p.  precision 'std' escalates once to 'ext' on failure."""
    if p.degree < 1:
        raise ValueError("find_roots needs degree >= 1")
    zero_mult = 0
    while p.coefficients[zero_mult] == 0:
        zero_mult += 1
    cofactor = p.coefficients[zero_mult:]
    if len(cofactor) == 1:
        return RootSet((), (), zero_mult)

    if precision not in ("std", "ext"):
        raise ValueError(f"unknown precision {precision!r}")
    attempts = ("std", "ext") if precision == "std" else ("ext",)
    last_residuals: tuple[float, ...] = ()
    for attempt in attempts:
        if attempt == "std":
            try:
                roots = _aberth_double(cofactor)
            except OverflowError:
                continue  # coefficients too large for doubles; use extended
        else:
            roots = _aberth_extended(cofactor)
        roots.sort(key=lambda w: (w.real, w.imag))
        residuals = tuple(_scaled_residual(cofactor, w) for w in roots)
        last_residuals = residuals
        if all(r <= RESIDUAL_TOL for r in residuals):
            return RootSet(tuple(roots), residuals, zero_mult)
    raise NoConvergence(
        f"residuals up to {max(last_residuals):.3e} after {attempts} attempts"
    )


# --------------------------------------------------------------------------
# Queries on root sets
# --------------------------------------------------------------------------

def max_modulus(rs: RootSet) -> float:
    return max((abs(z) for z in rs.roots), default=0.0)


def classify(rs: RootSet, region: RegionPredicate) -> tuple[str, ...]:
    return tuple(region.classify_point(z) for z in rs.roots)


def exact_sign_change(p: ExactPolynomial, lo: Fraction, hi: Fraction) -> bool:
    """True if p provably has a root in [lo, hi] by an exact sign bracket."""
    a = p.eval_exact(lo)
    b = p.eval_exact(hi)
    if a == 0 or b == 0:
        return True
    return (a < 0) != (b < 0)


def certify_real_root(p: ExactPolynomial, x: float, width: float = 1e-7) -> bool:
    """Exact certificate that p has a real root within `width` of x.

    Only possible where p changes sign; an even-multiplicity root cannot
    be certified this way and yields False without meaning "no root".
    """
    delta = width * max(1.0, abs(x))
    return exact_sign_change(p, Fraction(x - delta), Fraction(x + delta))


def real_roots_in(rs: RootSet, interval: RegionPredicate) -> list[float]:
    """Real roots (tiny imaginary part) lying in the interval.

    Endpoint handling is tolerance-aware: open endpoints shrink the
    interval by the boundary tolerance, closed endpoints extend it, so a
    root computed at an endpoint lands on the intended side.  Callers that
    treat a hit as a counterexample follow up with certify_real_root.
    """
    if interval.kind != "real_interval":
        raise ValueError("real_roots_in needs a real_interval predicate")
    out = []
    for z in rs.roots:
        scale = max(1.0, abs(z))
        if abs(z.imag) > PAIRING_TOL * scale:
            continue
        x = z.real
        tol = interval.boundary_tolerance * scale
        lo_eff = interval.lo + tol if interval.lo_open else interval.lo - tol
        hi_eff = interval.hi - tol if interval.hi_open else interval.hi + tol
        if lo_eff <= x <= hi_eff:
            out.append(x)
    return out


def reconstruction_residual(p: ExactPolynomial, rs: RootSet) -> float:
    """Relative coefficient error of prod (x - root) vs the monic cofactor."""
    cofactor = p.coefficients[rs.zero_multiplicity:]
    lead = float(cofactor[-1])
    target = [float(c) / lead for c in cofactor]
    recon = [1.0 + 0j]  # ascending coefficients of prod (x - root)
    for r in rs.roots:
        nxt = [0j] * (len(recon) + 1)
        for i, c in enumerate(recon):
            nxt[i + 1] += c
            nxt[i] -= c * r
        recon = nxt
    scale = max(abs(c) for c in target)
    worst = max(
        abs(recon[k] - target[k]) for k in range(len(target))
    )
    return worst / scale


def conjugate_pairing_defect(rs: RootSet) -> float:
    """Worst distance between a nonreal root's conjugate and its nearest peer."""
    worst = 0.0
    for z in rs.roots:
        if abs(z.imag) <= PAIRING_TOL * max(1.0, abs(z)):
            continue
        best = min(abs(z.conjugate() - w) for w in rs.roots)
        worst = max(worst, best)
    return worst
