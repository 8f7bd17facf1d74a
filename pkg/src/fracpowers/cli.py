"""Command-line front end and the stable JSON / CSV formats.

Certified intervals are printed as a decimal midpoint (25 significant
digits) with an explicit radius rounded up, and in JSON also as the exact
dyadic endpoints, so documents round-trip without loss.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from decimal import ROUND_CEILING, ROUND_FLOOR, ROUND_HALF_EVEN, Context, Decimal
from fractions import Fraction
from typing import Any, Sequence

from .bounds import BoundReport, liouville_lower, nu_stat, verify, _tau
from .certroots import AlgebraicNumber, distinguished_root, modulus_classes
from .classify import BoydDecomposition, Classification, classify, compute_C
from .errors import (CertificationError, FracPowError, InsufficientData, NoRootGreaterThanOne,
                     NotPisot, ParseError, ScreenFailure)
from .interval import Interval
from .intpoly import IntPolynomial, parse_poly
from .powerfrac import PowerFracRecord, decay_fit, interval_ln, lambda_probe, nearest_power, scan

__all__ = [
    "main",
    "decimal_str",
    "interval_to_json",
    "interval_from_json",
    "classification_to_json",
    "classification_from_json",
    "record_to_json",
    "scan_csv",
]

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INPUT = 2
EXIT_VIOLATION = 3
EXIT_CERT = 4

DIGITS = 25


# -- formatting -------------------------------------------------------------

def decimal_str(q: Fraction, digits: int = DIGITS, rounding: str = ROUND_HALF_EVEN) -> str:
    """q rounded to ``digits`` significant decimal digits."""
    q = Fraction(q)
    if q == 0:
        return "0"
    ctx = Context(prec=digits, rounding=rounding)
    v = ctx.divide(Decimal(q.numerator), Decimal(q.denominator))
    return format(v, "f") if -7 < v.adjusted() < 30 else format(v, "e")


def radius_str(iv: Interval) -> str:
    """Radius rounded up to 3 significant digits; never understates."""
    return decimal_str(iv.rad(), 3, ROUND_CEILING)


def interval_to_json(iv: Interval | None) -> dict | None:
    if iv is None:
        return None
    return {
        "mid": decimal_str(iv.mid()),
        "radius": radius_str(iv),
        "lo": iv.lo,
        "hi": iv.hi,
        "exp": iv.exp,
    }


def interval_from_json(doc: dict | None) -> Interval | None:
    if doc is None:
        return None
    return Interval(int(doc["lo"]), int(doc["hi"]), int(doc["exp"]))


def classification_to_json(c: Classification) -> dict:
    return {
        "poly": str(c.poly),
        "coefficients": list(c.poly.coeffs),
        "d": c.d,
        "a_d": c.a_d,
        "alpha": interval_to_json(c.alpha),
        "alpha_index": c.alpha_index,
        "C_alpha": interval_to_json(c.C_alpha),
        "is_rational": c.is_rational,
        "is_integer": c.is_integer,
        "pisot": c.pisot,
        "salem_flag": c.salem_flag,
        "qpu": None if c.qpu is None else {"a": c.qpu[0], "b": c.qpu[1]},
        "boyd": {
            "m": c.boyd.m,
            "g": list(c.boyd.g.coeffs),
            "max_modulus_count": c.boyd.max_modulus_count,
            "hypothesis": c.boyd.hypothesis,
        },
        "h": c.h,
        "eta": interval_to_json(c.eta),
        "max_other_modulus": interval_to_json(c.max_other_modulus),
        "conjugate_moduli": [interval_to_json(m) for m in c.conjugate_moduli],
        "modulus_order": [list(k) for k in c.modulus_order],
        "n_alpha_rule": c.n_alpha_rule,
        "note": c.note,
    }


def classification_from_json(doc: dict) -> Classification:
    boyd = doc["boyd"]
    qpu = doc["qpu"]
    return Classification(
        poly=IntPolynomial(tuple(doc["coefficients"])),
        d=doc["d"],
        a_d=doc["a_d"],
        alpha=interval_from_json(doc["alpha"]),
        C_alpha=interval_from_json(doc["C_alpha"]),
        is_rational=doc["is_rational"],
        is_integer=doc["is_integer"],
        pisot=doc["pisot"],
        salem_flag=doc["salem_flag"],
        qpu=None if qpu is None else (qpu["a"], qpu["b"]),
        boyd=BoydDecomposition(boyd["m"], IntPolynomial(tuple(boyd["g"])),
                               boyd["max_modulus_count"], boyd["hypothesis"]),
        h=doc["h"],
        eta=interval_from_json(doc["eta"]),
        max_other_modulus=interval_from_json(doc["max_other_modulus"]),
        conjugate_moduli=tuple(interval_from_json(m) for m in doc["conjugate_moduli"]),
        modulus_order=tuple(tuple(k) for k in doc["modulus_order"]),
        alpha_index=doc["alpha_index"],
        n_alpha_rule=doc["n_alpha_rule"],
        note=doc["note"],
    )


def record_to_json(rec: PowerFracRecord, cls: Classification | None = None) -> dict:
    out = {
        "n": rec.n,
        "A_n": rec.A,
        "dist": interval_to_json(rec.dist),
        "sign": rec.sign,
        "exact_zero": rec.exact_zero,
        "exact": None if rec.exact is None else str(rec.exact),
        "precision_used": rec.precision_used,
    }
    if cls is not None:
        out["in_N_alpha"] = cls.in_n_alpha(rec.n)
    return out


def _float(x: float | None) -> str:
    return "" if x is None else f"{x:.12g}"


def _bool(x: bool | None) -> str:
    return "" if x is None else ("true" if x else "false")


def _lower_str(iv: Interval) -> str:
    """Certified lower endpoint, rounded down."""
    return decimal_str(iv.lower(), DIGITS, ROUND_FLOOR)


def _upper_str(iv: Interval) -> str:
    return decimal_str(iv.upper(), DIGITS, ROUND_CEILING)


def _csv(header: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


SCAN_COLUMNS = ("n", "A_n", "dist", "dist_radius", "exact_zero", "in_N_alpha",
                "neg_log_dist_over_n", "liouville_lower", "margin_tau")


def scan_csv(a: AlgebraicNumber, cls: Classification, n_min: int, n_max: int, out_prec: int = 64) -> str:
    """The scan table.  Logarithms are natural; liouville_lower is the
    certified lower endpoint of the bound, rounded down."""
    rows = []
    for rec in scan(a, n_min, n_max, out_prec):
        low = liouville_lower(cls, rec.n, max(out_prec, 64))
        tau = None if rec.exact_zero else _tau(cls.C_alpha, rec.n, rec.dist)
        nl = None if rec.exact_zero else -interval_ln(rec.dist, "lo") / rec.n
        rows.append((rec.n, rec.A, decimal_str(rec.dist.mid()), radius_str(rec.dist),
                     _bool(rec.exact_zero), _bool(cls.in_n_alpha(rec.n)), _float(nl),
                     _lower_str(low), _float(tau)))
    return _csv(SCAN_COLUMNS, rows)


REPORT_COLUMNS = ("n", "A_n", "dist", "dist_radius", "exact_zero", "in_N_alpha", "status",
                  "liouville_lower", "pisot_upper", "trace_ok", "neg_log_dist_over_n", "margin_tau")


def report_csv(rep: BoundReport) -> str:
    rows = []
    for r in rep.rows:
        rows.append((r.n, r.A, decimal_str(r.dist.mid()), radius_str(r.dist), _bool(r.exact_zero),
                     _bool(r.in_N_alpha), r.status,
                     "" if r.liouville_lower is None else _lower_str(r.liouville_lower),
                     "" if r.pisot_upper is None else _upper_str(r.pisot_upper),
                     _bool(r.trace_ok), _float(r.neg_log_dist_over_n), _float(r.margin_tau)))
    return _csv(REPORT_COLUMNS, rows)


def summary_to_json(rep: BoundReport) -> dict:
    s = rep.summary
    return {
        "alpha": rep.alpha,
        "violations": s.violations,
        "equalities": s.equalities,
        "checked": s.checked,
        "nu_max": s.nu_max,
        "nu_argmax": s.nu_argmax,
        "tau_min_tail": s.tau_min_tail,
        "decay_slope": s.decay_slope,
        "trace_tail_start": s.trace_tail_start,
        "trace_mismatches": list(s.trace_mismatches),
    }


def report_to_json(rep: BoundReport) -> dict:
    rows = []
    for r in rep.rows:
        rows.append({
            "n": r.n,
            "A_n": r.A,
            "dist": interval_to_json(r.dist),
            "exact_zero": r.exact_zero,
            "in_N_alpha": r.in_N_alpha,
            "status": r.status,
            "liouville_lower": interval_to_json(r.liouville_lower),
            "pisot_upper": interval_to_json(r.pisot_upper),
            "trace_ok": r.trace_ok,
            "neg_log_dist_over_n": r.neg_log_dist_over_n,
            "margin_tau": r.margin_tau,
        })
    return {"summary": summary_to_json(rep), "rows": rows}


def _dumps(doc: Any) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


# -- argument handling ----------------------------------------------------------

class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="fracpowers",
                description="Certified distances from powers of algebraic numbers to the nearest integer.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, fmt=("json", "csv")):
        sp.add_argument("poly", help='minimal polynomial, "x^2-x-1" or ascending coefficients "-1,-1,1"')
        sp.add_argument("--out-prec", type=int, default=64, help="output precision in bits (>= 16)")
        sp.add_argument("--format", choices=fmt, default=fmt[0])

    def ranged(sp, default_min=1):
        sp.add_argument("--n-min", type=int, default=default_min)
        sp.add_argument("--n-max", type=int, required=True)

    common(sub.add_parser("classify", help="case analysis of alpha"))
    common(sub.add_parser("cvalue", help="certified C(alpha)"))
    sp = sub.add_parser("powfrac", help="A_n and ||alpha^n|| for one n")
    common(sp)
    sp.add_argument("--n", type=int, required=True)
    sp = sub.add_parser("scan", help="table of ||alpha^n|| over a range")
    common(sp, ("csv", "json"))
    ranged(sp)
    sp = sub.add_parser("verify", help="certified Liouville (and Pisot) bound check")
    common(sp)
    ranged(sp)
    sp = sub.add_parser("nu", help="series of -ln||alpha^n||/n")
    common(sp, ("csv", "json"))
    ranged(sp)
    sp.add_argument("--odd", action="store_true", help="odd exponents only")
    sp = sub.add_parser("probe", help="|Lambda_n - 1| or |Lambda'_n - 1| series")
    common(sp, ("csv", "json"))
    ranged(sp)
    sp.add_argument("--conj-index", type=int, default=None,
                    help="conjugate index (default: a root of maximal modulus other than alpha)")
    return p


def _check_range(args) -> None:
    if args.out_prec < 16:
        raise _UsageError("--out-prec must be at least 16")
    if hasattr(args, "n") and args.n is not None and args.n < 1:
        raise _UsageError("--n must be positive")
    if hasattr(args, "n_max") and not 1 <= args.n_min <= args.n_max:
        raise _UsageError("need 1 <= --n-min <= --n-max")


def _default_conjugate(a: AlgebraicNumber) -> int:
    mc = modulus_classes(a)
    for cls in reversed(mc.classes):
        others = [i for i in cls if i != a.alpha_index]
        if others:
            return others[0]
    raise _UsageError("alpha has no other conjugates")


def run(args, out, err) -> int:
    _check_range(args)
    f = parse_poly(args.poly)
    a = distinguished_root(f)
    cmd = args.command
    if cmd == "classify":
        c = classify(a)
        doc = classification_to_json(c)
        if args.format == "json":
            out.write(_dumps(doc))
        else:
            flat = [(k, json.dumps(v)) for k, v in doc.items()]
            out.write(_csv(("field", "value"), flat))
        return EXIT_OK
    if cmd == "cvalue":
        C = compute_C(a, max(args.out_prec, 64) + 16).round(args.out_prec + 8)
        if args.format == "json":
            out.write(_dumps({"poly": str(f), "C_alpha": interval_to_json(C)}))
        else:
            out.write(_csv(("poly", "C_alpha", "C_alpha_radius"), [(str(f), decimal_str(C.mid()), radius_str(C))]))
        return EXIT_OK
    if cmd == "powfrac":
        c = classify(a)
        rec = nearest_power(a, args.n, args.out_prec)
        if args.format == "json":
            out.write(_dumps(record_to_json(rec, c)))
        else:
            out.write(scan_csv(a, c, args.n, args.n, args.out_prec))
        return EXIT_OK
    if cmd == "scan":
        c = classify(a)
        if args.format == "csv":
            out.write(scan_csv(a, c, args.n_min, args.n_max, args.out_prec))
        else:
            recs = scan(a, args.n_min, args.n_max, args.out_prec)
            out.write(_dumps([record_to_json(r, c) for r in recs]))
        return EXIT_OK
    if cmd == "verify":
        c = classify(a)
        if args.n_max < 2:
            raise _UsageError("verify needs --n-max >= 2")
        rep = verify(a, c, args.n_max, args.n_min, args.out_prec)
        if args.format == "json":
            out.write(_dumps(report_to_json(rep)))
        else:
            out.write(report_csv(rep))
        for k, v in summary_to_json(rep).items():
            err.write(f"{k}: {v}\n")
        return EXIT_VIOLATION if rep.summary.violations else EXIT_OK
    if cmd == "nu":
        exps = range(args.n_min | 1, args.n_max + 1, 2) if args.odd else None
        st = nu_stat(a, args.n_min, args.n_max, args.out_prec, exps)
        if args.format == "csv":
            out.write(_csv(("n", "neg_log_dist_over_n"), [(n, _float(v)) for n, v in st.series]))
        else:
            out.write(_dumps({"nu_max": st.nu_max, "nu_argmax": st.argmax,
                              "series": [[n, v] for n, v in st.series]}))
        err.write(f"nu_max: {st.nu_max:.12g}\nnu_argmax: {st.argmax}\n")
        return EXIT_OK
    if cmd == "probe":
        k = args.conj_index if args.conj_index is not None else _default_conjugate(a)
        if not 0 <= k < a.degree or k == a.alpha_index:
            raise _UsageError(f"--conj-index must be in 0..{a.degree - 1} and differ from {a.alpha_index}")
        vals = [lambda_probe(a, k, n, args.out_prec) for n in range(args.n_min, args.n_max + 1)]
        if args.format == "csv":
            out.write(_csv(("n", "variant", "value", "value_radius"),
                           [(v.n, v.variant, decimal_str(v.value.mid()), radius_str(v.value)) for v in vals]))
        else:
            out.write(_dumps([{"n": v.n, "variant": v.variant, "value": interval_to_json(v.value)}
                              for v in vals]))
        if len(vals) >= 8:
            err.write(f"decay_slope: {decay_fit(vals).slope:.12g}\n")
        return EXIT_OK
    raise _UsageError(f"unknown command {cmd}")


_NEG_COEFFS = re.compile(r"^-\d+(\s*,\s*[+-]?\d+)+$")


def _shield_coefficients(argv: Sequence[str]) -> list[str]:
    # "-1,-1,1" would otherwise be taken for an option; parse_poly strips the space
    return [" " + a if _NEG_COEFFS.match(a) else a for a in argv]


def main(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    argv = sys.argv[1:] if argv is None else argv
    try:
        args = _build_parser().parse_args(_shield_coefficients(argv))
        return run(args, out, err)
    except (_UsageError, ParseError, NotPisot, InsufficientData) as e:
        err.write(f"error: {e}\n")
        return EXIT_USAGE
    except (NoRootGreaterThanOne, ScreenFailure) as e:
        err.write(f"error: {e}\n")
        return EXIT_INPUT
    except CertificationError as e:
        err.write(f"certification failure: {e}\n")
        return EXIT_CERT
    except FracPowError as e:
        err.write(f"error: {e}\n")
        return EXIT_CERT


if __name__ == "__main__":
    sys.exit(main())
