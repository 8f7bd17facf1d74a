"""Certified nearest integers A_n to alpha**n and the distance ||alpha**n||.

Whether alpha**n is rational is decided algebraically, never numerically.
alpha**n can be rational only when the minimal polynomial is a binomial
v X^d - u and d divides n, and then alpha**n = (u/v)**(n/d) is handled in
exact rational arithmetic.  Every other power is irrational, so it is never
an integer or a half-integer, and interval refinement always terminates.

Reported distance intervals are centered on a dyadic midpoint with radius
2**(floor(log2 mid) - out_prec - 1).  The error actually achieved is kept
below 1/8 of that radius.  As a result, a record recomputed at doubled
``out_prec`` lies inside the original record.
"""

from __future__ import annotations

import math
import statistics
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .certroots import MAX_PREC, AlgebraicNumber, modulus_classes
from .errors import CertificationError, InsufficientData, ZeroNotExcluded
from .interval import ComplexBox, Interval
from .intpoly import power_support_decompose

__all__ = [
    "PowerFracRecord",
    "ProbeValue",
    "DecayFit",
    "nearest_power",
    "nearest_power_interval",
    "scan",
    "lambda_probe",
    "decay_fit",
    "rational_power",
    "interval_ln",
]


@dataclass(frozen=True)
class PowerFracRecord:
    n: int
    A: int
    dist: Interval
    sign: int  # sign of delta_n = alpha**n - A_n
    exact_zero: bool
    precision_used: int
    exact: Fraction | None = None  # set when alpha**n is rational

    @property
    def delta(self) -> Interval:
        return self.dist if self.sign >= 0 else -self.dist


def rational_power(a: AlgebraicNumber, n: int) -> Fraction | None:
    """alpha**n as an exact rational when it is one, else None."""
    f = a.poly
    m, _ = power_support_decompose(f)
    if m != f.degree or n % m:
        return None
    # f = v X^d - u with u/v = alpha**d > 0
    u, v = -f.constant, f.leading
    return Fraction(u, v) ** (n // m)


def _nearest(q: Fraction) -> int:
    """Nearest integer, halves rounded up."""
    return math.floor(q + Fraction(1, 2))


def _present(center: Interval, out_prec: int) -> Interval:
    """Interval of radius 2**(floor(log2 center) - out_prec - 1) about center."""
    e = center.magnitude_exp() - out_prec - 1
    return center + Interval(-1, 1, e)


_HALF_RANGE = Interval(0, 1, -1)


def _finish(raw: Interval, out_prec: int) -> Interval | None:
    """Round a positive enclosure to its presentation form, or None if it
    is not yet accurate enough to do so soundly."""
    if raw.is_point():
        return raw
    if raw.lo <= 0:
        return None
    e = raw.lower_exp() - out_prec - 1  # radius exponent lower bound
    if raw.width() > Fraction(2) ** (e - 3):
        return None
    mid = Interval.from_fraction(raw.mid(), out_prec + 24)
    center = Interval(mid.lo, mid.lo, mid.exp)
    out = _present(center, out_prec)
    if not out.contains(raw):
        return None
    if out.certainly_gt(Fraction(1, 2)) or out.hi <= 0:
        return None
    return out.intersect(_HALF_RANGE) if out.upper() > Fraction(1, 2) else out


def _rational_record(n: int, q: Fraction, out_prec: int) -> PowerFracRecord:
    A = _nearest(q)
    delta = q - A
    dist = abs(delta)
    if dist == 0:
        iv = Interval(0)
    else:
        iv = Interval.from_fraction(dist, out_prec + 24)
        if not iv.is_point():
            iv = _present(Interval(iv.lo, iv.lo, iv.exp), out_prec)
    sign = (delta > 0) - (delta < 0)
    return PowerFracRecord(n, A, iv, sign, dist == 0, 0, q)


def _log2_upper(x: Interval) -> float:
    return x.magnitude_exp() + 1


def nearest_power_interval(a: AlgebraicNumber, n: int, out_prec: int = 64,
                           max_prec: int = MAX_PREC) -> PowerFracRecord:
    """Interval route only: no algebraic shortcut.

    Diverges (hits ``max_prec``) when alpha**n is an integer or half-integer
    and alpha is not an exact dyadic; :func:`nearest_power` avoids that.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if out_prec < 16:
        raise ValueError("out_prec must be at least 16")
    nbits = n.bit_length()
    prec = math.ceil(n * _log2_upper(a.alpha)) + out_prec + 64
    while prec <= max_prec:
        alpha = a.enclosure(prec + nbits + 4)
        if alpha.is_point():
            power = alpha.pow(n)
        else:
            power = alpha.pow(n, prec + nbits + 4)
        k_lo = math.floor(power.lower() + Fraction(1, 2))
        k_hi = math.floor(power.upper() + Fraction(1, 2))
        if k_lo == k_hi:
            delta = power - k_lo
            if delta.is_point() and delta.lo == 0:
                return PowerFracRecord(n, k_lo, Interval(0), 0, True, prec)
            s = delta.sign()
            if s:
                dist = _finish(delta.abs(), out_prec)
                if dist is not None:
                    return PowerFracRecord(n, k_lo, dist, s, False, prec)
                # |delta| is known to be nonzero: jump straight to the target
                ratio = delta.width() / delta.abs().lower()
                deficit = ratio.numerator.bit_length() - ratio.denominator.bit_length()
                prec += max(32, deficit + out_prec + 8)
                continue
        prec *= 2
    raise CertificationError(f"could not certify ||alpha^{n}|| below {max_prec} bits")


def nearest_power(a: AlgebraicNumber, n: int, out_prec: int = 64,
                  max_prec: int = MAX_PREC) -> PowerFracRecord:
    """Nearest integer A_n to alpha**n and a certified enclosure of ||alpha**n||."""
    if n < 1:
        raise ValueError("n must be positive")
    if out_prec < 16:
        raise ValueError("out_prec must be at least 16")
    q = rational_power(a, n)
    if q is not None:
        return _rational_record(n, q, out_prec)
    return nearest_power_interval(a, n, out_prec, max_prec)


def scan(a: AlgebraicNumber, n_min: int, n_max: int, out_prec: int = 64,
         max_prec: int = MAX_PREC) -> list[PowerFracRecord]:
    if not 1 <= n_min <= n_max:
        raise ValueError("need 1 <= n_min <= n_max")
    # one refinement up front serves every exponent in the range
    a.enclosure(math.ceil(n_max * _log2_upper(a.alpha)) + out_prec + 64 + n_max.bit_length() + 4)
    return [nearest_power(a, n, out_prec, max_prec) for n in range(n_min, n_max + 1)]


# -- proof probes --------------------------------------------------------------

@dataclass(frozen=True)
class ProbeValue:
    n: int
    value: Interval
    variant: str  # "Lambda" (|beta| > alpha) or "Lambda'" (|beta| <= alpha)


def _beta_exceeds_alpha(a: AlgebraicNumber, i: int) -> bool:
    mc = modulus_classes(a)
    return i in mc.above_alpha()


def _trace_pair_is_integer(a: AlgebraicNumber, i: int, n: int, A: int) -> bool:
    """Exact test of A_n == alpha**n + beta**n for quadratic alpha.

    For d = 2 the sum of both conjugates' n-th powers is the rational
    trace, so the probe Lambda'_n equals 1 exactly when that trace is A_n.
    """
    f = a.poly
    if f.degree != 2:
        return False
    # power sums of the roots of c2 X^2 + c1 X + c0 over Q
    c0, c1, c2 = (Fraction(c) for c in f.coeffs)
    s = [Fraction(2), -c1 / c2]
    for k in range(2, n + 1):
        s.append(-(c1 * s[k - 1] + c0 * s[k - 2]) / c2)
    return s[n] == A


def lambda_probe(a: AlgebraicNumber, conj_index: int, n: int, out_prec: int = 64,
                 max_prec: int = 1 << 16) -> ProbeValue:
    """Certified enclosure of |Lambda_n - 1| or |Lambda'_n - 1|.

    With beta the chosen conjugate: when |beta| > alpha the quantity is
    Lambda_n = (beta**n - A_n) / beta**n, so |Lambda_n - 1| = A_n / |beta|**n.
    Otherwise Lambda'_n = (A_n - beta**n) / alpha**n and
    |Lambda'_n - 1| = |A_n - alpha**n - beta**n| / alpha**n.
    """
    if conj_index == a.alpha_index:
        raise ValueError("conjugate index must differ from the index of alpha")
    if not 0 <= conj_index < a.degree:
        raise IndexError(f"conjugate index {conj_index} out of range")
    rec = nearest_power(a, n, out_prec)
    A = rec.A
    first_case = _beta_exceeds_alpha(a, conj_index)
    if not first_case and _trace_pair_is_integer(a, conj_index, n, A):
        raise ZeroNotExcluded(f"Lambda'_{n} = 1 exactly: A_n equals the trace of alpha^{n}")
    nbits = n.bit_length()
    prec = math.ceil(n * _log2_upper(a.alpha)) + out_prec + 64
    while prec <= max_prec:
        wp = prec + nbits + 8
        beta = a.conjugate_box(conj_index, wp)
        if first_case:
            mod_n = beta.abs(wp).pow(n, wp)
            value = Interval(A).div(mod_n, wp)
        else:
            alpha_n = a.enclosure(wp).pow(n, wp)
            num = (ComplexBox(Interval(A) - alpha_n) - beta.pow(n, wp)).abs(wp)
            value = num.div(alpha_n, wp) if num.excludes_zero() else num
        if value.excludes_zero() and value.width() <= value.lower() * Fraction(2) ** (-out_prec):
            return ProbeValue(n, value.round(out_prec + 16), "Lambda" if first_case else "Lambda'")
        prec *= 2
    raise ZeroNotExcluded(f"probe enclosure for n={n} still contains 0 at {max_prec} bits")


# -- decay fits ----------------------------------------------------------------

@dataclass(frozen=True)
class DecayFit:
    slope: float
    intercept: float
    max_residual: float
    count: int


def interval_ln(x: Interval, which: str = "mid") -> float:
    """Natural log of a positive interval endpoint or midpoint, as a float.

    Works far outside the float exponent range.
    """
    if which == "lo":
        m, e = x.lo, x.exp
    elif which == "hi":
        m, e = x.hi, x.exp
    else:
        m, e = x.lo + x.hi, x.exp - 1
    if m <= 0:
        raise ValueError("logarithm of a non-positive value")
    return math.log(m) + e * math.log(2)


def decay_fit(values: Iterable, n_min: int = 1) -> DecayFit:
    """Least-squares slope of -ln(value) against n, using midpoints.

    ``values`` holds PowerFracRecord, ProbeValue, or (n, Interval) pairs.
    """
    pts = []
    for v in values:
        if isinstance(v, PowerFracRecord):
            n, iv = v.n, v.dist
        elif isinstance(v, ProbeValue):
            n, iv = v.n, v.value
        else:
            n, iv = v
            iv = Interval.coerce(iv)
        if n < n_min:
            continue
        if iv.hi <= 0 or iv.mid() <= 0:
            raise InsufficientData(f"zero value at n={n}")
        pts.append((n, -interval_ln(iv)))
    if len(pts) < 8:
        raise InsufficientData(f"need at least 8 values with n >= {n_min}, got {len(pts)}")
    xs = [float(n) for n, _ in pts]
    ys = [y for _, y in pts]
    if len(set(xs)) < 2:
        raise InsufficientData("need at least two distinct exponents")
    slope, intercept = statistics.linear_regression(xs, ys)
    resid = max(abs(y - (slope * x + intercept)) for x, y in zip(xs, ys))
    return DecayFit(slope, intercept, resid, len(pts))
