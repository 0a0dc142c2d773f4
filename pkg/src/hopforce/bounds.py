"""Closed-form and numerically rooted bounds on the hopping number fraction.

Three bounds per degree d: the spectral (expander-mixing) lower bound, the
configuration-model lower bound obtained as the root of an entropy rate, and
the constructive upper bound achieved by hopping along a Hamilton cycle.
All logarithms are natural; the convention 0*log(0) = 0 applies throughout.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass
from fractions import Fraction

from scipy.integrate import quad

TABLE1_DEGREES = (3, 4, 5, 6, 7, 8, 9, 10, 20, 40, 80, 160, 320, 640, 1280)


def upper_fraction(d: int) -> Fraction:
    """Exact upper-bound fraction (d-1)! (d-2)^(d-1) / prod_i (i(d-2)+1)."""
    if d < 3:
        raise ValueError("need d >= 3")
    num = math.factorial(d - 1) * (d - 2) ** (d - 1)
    den = 1
    for i in range(1, d):
        den *= i * (d - 2) + 1
    return Fraction(num, den)


def upper_fraction_integral(d: int) -> float:
    """The same fraction as the integral of (1-(1-x)^(d-2))^(d-1) over [0,1]."""
    if d < 3:
        raise ValueError("need d >= 3")
    val, _ = quad(lambda x: (1.0 - (1.0 - x) ** (d - 2)) ** (d - 1), 0.0, 1.0,
                  epsabs=1e-12, epsrel=1e-12)
    return val


def eml_fraction(d: int, lam: float) -> float:
    """Spectral lower-bound fraction max(1 - 2*lam/d, (d-lam)/(d+3*lam)).

    Clamped below at zero: the bound is vacuous once lam is large.
    """
    if not 0 <= lam <= d:
        raise ValueError("need 0 <= lambda <= d")
    return max(0.0, 1.0 - 2.0 * lam / d, (d - lam) / (d + 3.0 * lam))


def friedman_lambda(d: int) -> float:
    """The a.a.s. eigenvalue scale 2*sqrt(d-1) of random d-regular graphs."""
    return 2.0 * math.sqrt(d - 1)


def rational_str(fr: Fraction) -> str:
    """str(fr) with the int-to-decimal digit cap lifted as needed.

    The exact upper-bound numerators reach thousands of digits for large d.
    """
    need = (fr.numerator.bit_length() + fr.denominator.bit_length()) // 3 + 16
    if hasattr(sys, "get_int_max_str_digits") and sys.get_int_max_str_digits() < need:
        sys.set_int_max_str_digits(need)
    return str(fr)


def _xlogx(v: float) -> float:
    return 0.0 if v <= 0.0 else v * math.log(v)


def maximizing_z(x: float) -> float:
    """The z in (0, 1/2) maximizing the balanced partition rate at fixed x."""
    if not 0.0 < x < 1.0:
        raise ValueError("need x in (0,1)")
    return (1.0 - math.sqrt(1.0 - 2.0 * (1.0 - x) * x)) / (2.0 * x)


def partition_rate(d: int, x: float, y: float, z: float) -> float:
    """Exponential rate (per vertex) of the expected number of partitions
    (S, T, U) with |U| = xn, |S| = |T| = (1-x)n/2, no S-T edge, and
    cross-edge fractions y (U-S) and z (U-T)."""
    if not 0.0 < x < 1.0:
        raise ValueError("need x in (0,1)")
    if y < 0 or z < 0 or y + z > 1:
        raise ValueError("need y, z >= 0 and y + z <= 1")
    half = (1.0 - x) / 2.0
    if y * x > half or z * x > half:
        raise ValueError("cross-edge fractions exceed the side blocks")
    return (
        (d - 1 - d * (y + z) - (1 - y - z) * d / 2.0) * x * math.log(x)
        + (d - 1) * (1 - x) * math.log(half)
        - d * x * _xlogx(y)
        - d * x * _xlogx(z)
        - (d * x / 2.0) * _xlogx(1.0 - y - z)
        - (d / 2.0) * _xlogx(half - y * x)
        - (d / 2.0) * _xlogx(half - z * x)
    )


def balanced_partition_rate(d: int, x: float, z: float) -> float:
    """The partition rate at equal cross-edge fractions y = z."""
    if not 0.0 < x < 1.0:
        raise ValueError("need x in (0,1)")
    if z < 0 or 2 * z * x > (1 - x):
        raise ValueError("z out of the feasible region")
    half = (1.0 - x) / 2.0
    return (
        (d / 2.0 - 1.0 - d * z) * x * math.log(x)
        + (d - 1) * (1 - x) * math.log(half)
        - 2.0 * d * x * _xlogx(z)
        - (d * x / 2.0) * _xlogx(1.0 - 2.0 * z)
        - d * _xlogx(half - z * x)
    )


def best_partition_rate(d: int, x: float) -> float:
    """The partition rate maximized over the cross-edge fraction."""
    return balanced_partition_rate(d, x, maximizing_z(x))


@dataclass(frozen=True)
class EntropyPoint:
    """One validated sample of the balanced rate surface."""

    x: float
    z: float
    value: float

    @classmethod
    def evaluate(cls, d: int, x: float, z: float) -> "EntropyPoint":
        if not 0.0 < z < 0.5:
            raise ValueError("need z in (0, 1/2)")
        return cls(x=x, z=z, value=balanced_partition_rate(d, x, z))

    @classmethod
    def at_maximizer(cls, d: int, x: float) -> "EntropyPoint":
        z = maximizing_z(x)
        return cls(x=x, z=z, value=balanced_partition_rate(d, x, z))


class BracketNotFound(Exception):
    """The rate function showed no negative-to-positive crossing."""


class InvariantViolation(Exception):
    """A computed quantity broke an internal consistency requirement."""


def config_fraction(d: int, tol: float = 1e-10, grid_step: float = 1e-3,
                    verify_shape: bool = True) -> float:
    """The unique root of the maximized partition rate on (0, 1).

    The rate is negative near 0 and has a positive interior maximum, so the
    root is bracketed by a grid scan of the negative-to-positive crossing
    and then bisected. With verify_shape the scan also checks that exactly
    one sign change occurs (the rate stays positive up to x -> 1).
    """
    if d < 3:
        raise ValueError("need d >= 3")
    steps = int(round(1.0 / grid_step))
    lo = hi = None
    crossings = 0
    prev_x = grid_step
    prev_h = best_partition_rate(d, prev_x)
    for k in range(2, steps):
        x = k * grid_step
        h = best_partition_rate(d, x)
        if prev_h < 0 <= h or h < 0 <= prev_h:
            crossings += 1
            if lo is None:
                lo, hi = prev_x, x
        prev_x, prev_h = x, h
        if lo is not None and not verify_shape:
            break
    if lo is None:
        raise BracketNotFound(f"no sign change for d={d}")
    if verify_shape and crossings != 1:
        raise InvariantViolation(
            f"expected a single sign change for d={d}, saw {crossings}")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if best_partition_rate(d, mid) < 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def matchings_count(i: int) -> int:
    """Number of perfect matchings on i labelled points: i! / ((i/2)! 2^(i/2))."""
    if i < 0 or i % 2 != 0:
        raise ValueError("need an even nonnegative point count")
    return math.factorial(i) // (math.factorial(i // 2) * 2 ** (i // 2))


def _lg(m: float) -> float:
    """log Gamma(m+1); real-valued block sizes are fine at this scale."""
    if m < 0:
        raise ValueError("negative block size")
    return math.lgamma(m + 1.0)


def _log_matchings(m: float) -> float:
    return _lg(m) - _lg(m / 2.0) - (m / 2.0) * math.log(2.0)


def log_partition_count(d: int, x: float, y: float, z: float, n: float) -> float:
    """log of the expected number of (S, T, U) partitions with no S-T edge
    and cross-edge counts y*dxn and z*dxn, at finite n.

    Evaluated through log-Gamma on the simplified factorial product; divided
    by n it converges to partition_rate(d, x, y, z) like O(log(n)/n).
    """
    if not 0.0 < x < 1.0:
        raise ValueError("need x in (0,1)")
    half = (1.0 - x) / 2.0
    blocks = (y * d * x * n, z * d * x * n, (1 - y - z) * d * x * n,
              d * (half - y * x) * n, d * (half - z * x) * n)
    if any(b < -1e-9 for b in blocks):
        raise ValueError("infeasible block sizes")
    uy, uz, uu, us, ut = (max(b, 0.0) for b in blocks)
    ln2 = math.log(2.0)
    return (
        _lg(n) + _lg(d * x * n) + 2.0 * _lg(d * (1 - x) * n / 2.0)
        + (d * n / 2.0) * ln2 + _lg(d * n / 2.0)
        - _lg(x * n) - 2.0 * _lg((1 - x) * n / 2.0)
        - _lg(uy) - _lg(uz)
        - (uu / 2.0) * ln2 - _lg(uu / 2.0)
        - (us / 2.0) * ln2 - _lg(us / 2.0)
        - (ut / 2.0) * ln2 - _lg(ut / 2.0)
        - _lg(d * n)
    )


def log_partition_count_direct(d: int, x: float, y: float, z: float, n: float) -> float:
    """The same count from the unsimplified product of binomials, placement
    factorials and matching counts; cross-checks the simplification."""
    if not 0.0 < x < 1.0:
        raise ValueError("need x in (0,1)")
    half = (1.0 - x) / 2.0

    def log_binom(a, b):
        return _lg(a) - _lg(b) - _lg(a - b)

    ey, ez = y * d * x * n, z * d * x * n
    side = d * (1 - x) * n / 2.0
    return (
        log_binom(n, x * n)
        + log_binom((1 - x) * n, (1 - x) * n / 2.0)
        + log_binom(d * x * n, ey) + log_binom(side, ey) + _lg(ey)
        + log_binom((1 - y) * d * x * n, ez) + log_binom(side, ez) + _lg(ez)
        + _log_matchings((1 - y - z) * d * x * n)
        + _log_matchings(d * (half - y * x) * n)
        + _log_matchings(d * (half - z * x) * n)
        - _log_matchings(d * n)
    )


@dataclass
class BoundReport:
    """One row of the per-degree bound comparison."""

    d: int
    eml_fraction: float
    config_fraction: float
    upper_rational: Fraction
    upper_float: float

    def validate(self) -> None:
        ok = 0.0 < self.eml_fraction <= self.config_fraction < self.upper_float < 1.0
        if not ok:
            raise InvariantViolation(f"bound ordering violated for d={self.d}: {self}")


def bound_report(d: int) -> BoundReport:
    """All three bound fractions for one degree, eigenvalue at the a.a.s. scale."""
    ur = upper_fraction(d)
    rep = BoundReport(
        d=d,
        eml_fraction=eml_fraction(d, friedman_lambda(d)),
        config_fraction=config_fraction(d),
        upper_rational=ur,
        upper_float=float(ur),
    )
    rep.validate()
    return rep
