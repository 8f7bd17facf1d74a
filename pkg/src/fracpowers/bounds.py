"""Certified bound checks and empirical statistics.

The Liouville lower bound ||alpha^n|| >= 3^-(d-1) C^-n is verified by
certified interval comparison.  The Pisot trace bound ||alpha^n|| <= d rho^n
is checked the same way, with rho the largest other conjugate modulus
(rho = alpha^-eta).  The nu and tau statistics are measurements, not proofs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Iterable, Sequence

from .certroots import MAX_PREC, AlgebraicNumber
from .classify import Classification, compute_C, _max_other_modulus
from .errors import CertificationError, InsufficientData, NotPisot
from .interval import Interval
from .intpoly import power_sums
from .powerfrac import PowerFracRecord, decay_fit, interval_ln, nearest_power, scan

__all__ = [
    "BoundRow",
    "BoundSummary",
    "BoundReport",
    "NuStat",
    "liouville_lower",
    "verify_liouville",
    "pisot_upper_check",
    "verify",
    "nu_stat",
    "tau_margin",
]


@dataclass(frozen=True)
class BoundRow:
    n: int
    in_N_alpha: bool
    A: int
    dist: Interval
    exact_zero: bool
    liouville_lower: Interval | None
    pisot_upper: Interval | None
    status: str  # "pass", "equality", "violation" or "skipped" (alpha^n integral)
    margin_tau: float | None
    neg_log_dist_over_n: float | None
    trace_ok: bool | None = None


@dataclass(frozen=True)
class BoundSummary:
    violations: int
    equalities: int
    checked: int
    nu_max: float | None
    nu_argmax: int | None
    tau_min_tail: float | None
    decay_slope: float | None
    trace_tail_start: int | None = None
    trace_mismatches: tuple[int, ...] = ()


@dataclass(frozen=True)
class BoundReport:
    alpha: str
    rows: tuple[BoundRow, ...]
    summary: BoundSummary


# -- Liouville ----------------------------------------------------------------

def liouville_lower(cls: Classification, n: int, prec: int = 128, C: Interval | None = None) -> Interval:
    """Enclosure of 3^-(d-1) * C^-n over the whole C interval.

    Its lower endpoint comes from the upper endpoint of C, the conservative
    direction for a lower bound.
    """
    if n < 1:
        raise ValueError("n must be positive")
    C = cls.C_alpha if C is None else C
    denom = C.pow(n, prec + 16).mul(Interval(3 ** (cls.d - 1)), prec + 16)
    return Interval(1).div(denom, prec)


def _tau(C: Interval, n: int, dist: Interval) -> float | None:
    lnC = interval_ln(C)
    if lnC <= 0 or dist.hi <= 0:
        return None
    return 1.0 + interval_ln(dist) / (n * lnC)


def tau_margin(cls: Classification, record: PowerFracRecord) -> float:
    """tau_n with dist = C^-(1 - tau_n) n, from midpoints and natural logs."""
    if not cls.C_alpha.certainly_gt(1):
        raise ValueError("C(alpha) = 1: alpha is an integer and tau is undefined")
    if record.exact_zero or record.dist.hi <= 0:
        raise ValueError("tau is undefined when alpha^n is an integer")
    return _tau(cls.C_alpha, record.n, record.dist)


def _neg_log_over_n(rec: PowerFracRecord) -> float | None:
    if rec.exact_zero:
        return None
    return -interval_ln(rec.dist, "lo") / rec.n


def _compare_lower(dist: Interval, lower: Interval) -> str | None:
    if dist.is_point() and lower.is_point() and dist.lower() == lower.lower():
        return "equality"
    if dist.certainly_ge(lower):
        return "pass"
    if dist.certainly_lt(lower):
        return "violation"
    return None


def _summarize(cls: Classification, rows: list[BoundRow], n_max: int) -> BoundSummary:
    violations = sum(r.status == "violation" for r in rows)
    equalities = sum(r.status == "equality" for r in rows)
    checked = sum(r.status != "skipped" for r in rows)
    nu = [(r.neg_log_dist_over_n, r.n) for r in rows if r.neg_log_dist_over_n is not None]
    nu_max, nu_arg = None, None
    if nu:
        nu_max, neg_arg = max((v, -n) for v, n in nu)
        nu_arg = -neg_arg
    tail = [r.margin_tau for r in rows
            if r.margin_tau is not None and r.in_N_alpha and 2 * r.n >= n_max]
    slope = None
    pts = [(r.n, r.dist) for r in rows if not r.exact_zero]
    if len(pts) >= 8:
        slope = decay_fit(pts).slope
    return BoundSummary(violations, equalities, checked, nu_max, nu_arg,
                        min(tail) if tail else None, slope)


def verify_liouville(a: AlgebraicNumber, cls: Classification, n_max: int, n_min: int = 1,
                     out_prec: int = 64, max_prec: int = MAX_PREC) -> BoundReport:
    """Certified check of the Liouville bound for every n in n_min..n_max.

    Rows where alpha^n is an integer are skipped.  An undecided comparison
    escalates the precision of both sides until it is decided.
    """
    if n_max < 2 or not 1 <= n_min <= n_max:
        raise ValueError("need 1 <= n_min <= n_max and n_max >= 2")
    c_prec = 128
    C = compute_C(a, c_prec) if not cls.C_alpha.is_point() else cls.C_alpha
    rows = []
    for rec in scan(a, n_min, n_max, out_prec, max_prec):
        n = rec.n
        if rec.exact_zero:
            rows.append(BoundRow(n, cls.in_n_alpha(n), rec.A, rec.dist, True, None, None,
                                 "skipped", None, None))
            continue
        p = out_prec
        while True:
            lower = liouville_lower(cls, n, max(p, c_prec), C)
            status = _compare_lower(rec.dist, lower)
            if status is not None:
                break
            p *= 2
            if p > max_prec:
                raise CertificationError(f"Liouville comparison undecided at n={n}")
            rec = nearest_power(a, n, p, max_prec)
            if p > c_prec:
                c_prec = 2 * p
                C = compute_C(a, c_prec)
        rows.append(BoundRow(n, cls.in_n_alpha(n), rec.A, rec.dist, False, lower.round(out_prec + 8),
                             None, status, _tau(C, n, rec.dist), _neg_log_over_n(rec)))
    return BoundReport(str(cls.poly), tuple(rows), _summarize(cls, rows, n_max))


# -- Pisot trace bound -------------------------------------------------------

def _trace_tail_start(d: int, rho: Interval) -> int:
    """Smallest n0 with (d - 1) rho^n < 1/2 certified for every n >= n0."""
    hi = rho.upper()
    if hi >= 1:
        raise NotPisot("other conjugates are not certifiably inside the unit disc")
    n = 0
    bound = Fraction(d - 1)
    while bound >= Fraction(1, 2):
        n += 1
        bound *= hi
    return max(n, 1)


def pisot_upper_check(a: AlgebraicNumber, cls: Classification, n_max: int, n_min: int = 1,
                      out_prec: int = 64, max_prec: int = MAX_PREC,
                      records: Sequence[PowerFracRecord] | None = None) -> BoundReport:
    """Certified check of ||alpha^n|| <= d alpha^(-eta n) = d rho^n.

    A_n is also compared with the exact trace of alpha^n, which must agree
    once the other conjugates' contribution is below 1/2 (from
    ``summary.trace_tail_start`` on).  Disagreements past that point count
    as violations; earlier ones are only listed.
    """
    if not cls.pisot:
        raise NotPisot(f"{cls.poly} does not define a Pisot number")
    if not 1 <= n_min <= n_max:
        raise ValueError("need 1 <= n_min <= n_max")
    d = cls.d
    if d == 1:
        raise NotPisot("an integer has no other conjugates; the trace bound is vacuous")
    recs = list(records) if records is not None else scan(a, n_min, n_max, out_prec, max_prec)
    traces = power_sums(cls.poly, n_max)
    rho_prec = 128
    rho = _max_other_modulus(a, rho_prec)
    n0 = _trace_tail_start(d, rho)
    rows = []
    mismatches = []
    for rec in recs:
        n = rec.n
        p = out_prec
        while True:
            upper = rho.pow(n, max(p, rho_prec) + 16).mul(Interval(d), max(p, rho_prec))
            if rec.dist.certainly_le(upper):
                status = "pass"
                break
            if rec.dist.certainly_gt(upper):
                status = "violation"
                break
            p *= 2
            if p > max_prec:
                raise CertificationError(f"Pisot comparison undecided at n={n}")
            rec = nearest_power(a, n, p, max_prec)
            if p > rho_prec:
                rho_prec = 2 * p
                rho = _max_other_modulus(a, rho_prec)
        trace_ok = rec.A == traces[n]
        if not trace_ok:
            mismatches.append(n)
            if n >= n0:
                status = "violation"
        rows.append(BoundRow(n, cls.in_n_alpha(n), rec.A, rec.dist, rec.exact_zero, None,
                             upper.round(out_prec + 8), status, None, _neg_log_over_n(rec), trace_ok))
    base = _summarize(cls, rows, n_max)
    summary = replace(base, trace_tail_start=n0, trace_mismatches=tuple(mismatches))
    return BoundReport(str(cls.poly), tuple(rows), summary)


def verify(a: AlgebraicNumber, cls: Classification, n_max: int, n_min: int = 1,
           out_prec: int = 64, max_prec: int = MAX_PREC) -> BoundReport:
    """Liouville check, merged with the Pisot check when alpha is Pisot."""
    lio = verify_liouville(a, cls, n_max, n_min, out_prec, max_prec)
    if not cls.pisot or cls.d == 1:
        return lio
    recs = [PowerFracRecord(r.n, r.A, r.dist, 0, r.exact_zero, 0) for r in lio.rows]
    pis = pisot_upper_check(a, cls, n_max, n_min, out_prec, max_prec, records=recs)
    rows = []
    for lr, pr in zip(lio.rows, pis.rows):
        status = lr.status
        if pr.status == "violation":
            status = "violation"
        rows.append(replace(lr, pisot_upper=pr.pisot_upper, trace_ok=pr.trace_ok,
                            dist=pr.dist if pr.dist.width() < lr.dist.width() else lr.dist,
                            status=status))
    base = _summarize(cls, rows, n_max)
    summary = replace(base, trace_tail_start=pis.summary.trace_tail_start,
                      trace_mismatches=pis.summary.trace_mismatches)
    return BoundReport(lio.alpha, tuple(rows), summary)


# -- nu statistic ---------------------------------------------------------------

@dataclass(frozen=True)
class NuStat:
    nu_max: float
    argmax: int
    series: tuple[tuple[int, float], ...]


def nu_stat(a: AlgebraicNumber, n_min: int, n_max: int, out_prec: int = 64,
            exponents: Iterable[int] | None = None) -> NuStat:
    """max of -ln(dist)/n over the range, using the lower dist endpoint.

    ``exponents`` restricts the range (for instance to odd n).  Rows with
    alpha^n an integer are excluded.
    """
    if not 1 <= n_min <= n_max:
        raise ValueError("need 1 <= n_min <= n_max")
    wanted = sorted(set(exponents)) if exponents is not None else range(n_min, n_max + 1)
    wanted = [n for n in wanted if n_min <= n <= n_max]
    if wanted:
        a.enclosure(math.ceil(max(wanted) * (a.alpha.magnitude_exp() + 1)) + out_prec + 96)
    series = []
    for n in wanted:
        rec = nearest_power(a, n, out_prec)
        v = _neg_log_over_n(rec)
        if v is not None:
            series.append((n, v))
    if not series:
        raise InsufficientData("no exponent with a nonzero distance in range")
    best, neg_arg = max((v, -n) for n, v in series)
    return NuStat(best, -neg_arg, tuple(series))
