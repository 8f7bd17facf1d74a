"""Dyadic interval arithmetic with outward rounding.

An :class:`Interval` holds two integer mantissas sharing one binary exponent,
so its endpoints are the exact rationals ``lo * 2**exp`` and ``hi * 2**exp``.
Operators ``+``, ``-`` and ``*`` are exact; anything that must discard bits
(``round``, ``mul(..., prec)``, ``div``, ``sqrt``, ``ln``) moves the lower
endpoint down and the upper endpoint up.  An enclosure therefore never loses
the value it encloses, whatever precision is requested.

:class:`ComplexBox` is the rectangular complex counterpart.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational

from mpmath.libmp import fone, from_man_exp, mpf_log

__all__ = ["Interval", "ComplexBox", "horner", "dyadic_ln"]


def _floor_shift(m: int, s: int) -> int:
    """floor(m / 2**s) for any sign of s."""
    return m >> s if s >= 0 else m << -s


def _ceil_shift(m: int, s: int) -> int:
    return -((-m) >> s) if s >= 0 else m << -s


def _is_pow2(n: int) -> bool:
    return n > 0 and n & (n - 1) == 0


def _cmp_dyadic(m1: int, e1: int, m2: int, e2: int) -> int:
    e = min(e1, e2)
    a = m1 << (e1 - e)
    b = m2 << (e2 - e)
    return (a > b) - (a < b)


class Interval:
    """Closed real interval ``[lo * 2**exp, hi * 2**exp]``.

    Instances are treated as immutable.
    """

    __slots__ = ("lo", "hi", "exp")

    def __init__(self, lo: int, hi: int | None = None, exp: int = 0):
        if hi is None:
            hi = lo
        lo = int(lo)
        hi = int(hi)
        if lo > hi:
            raise ValueError(f"empty interval: lo={lo} > hi={hi}")
        self.lo = lo
        self.hi = hi
        self.exp = int(exp)

    # -- construction -------------------------------------------------

    @classmethod
    def coerce(cls, x) -> Interval:
        if isinstance(x, Interval):
            return x
        if isinstance(x, int):
            return cls(x, x, 0)
        if isinstance(x, Rational):
            return cls.from_fraction(Fraction(x))
        raise TypeError(f"cannot convert {type(x).__name__} to Interval")

    @classmethod
    def from_fraction(cls, q: Fraction, prec: int = 128) -> Interval:
        """Enclose the rational ``q``; exact when its denominator is a power of two."""
        q = Fraction(q)
        num, den = q.numerator, q.denominator
        if _is_pow2(den):
            return cls(num, num, -(den.bit_length() - 1))
        # scale so the quotient carries about prec bits
        k = prec - (abs(num).bit_length() - den.bit_length()) + 1
        if k >= 0:
            lo = (num << k) // den
        else:
            lo = num // (den << -k)
        return cls(lo, lo + 1, -k)

    @classmethod
    def from_endpoints(cls, lo: Fraction, hi: Fraction, prec: int = 128) -> Interval:
        """Smallest convenient dyadic enclosure of the rational range [lo, hi]."""
        a = cls.from_fraction(lo, prec)
        b = cls.from_fraction(hi, prec)
        e = min(a.exp, b.exp)
        return cls(a.lo << (a.exp - e), b.hi << (b.exp - e), e)

    # -- exact views --------------------------------------------------

    def lower(self) -> Fraction:
        return _to_fraction(self.lo, self.exp)

    def upper(self) -> Fraction:
        return _to_fraction(self.hi, self.exp)

    def mid(self) -> Fraction:
        return _to_fraction(self.lo + self.hi, self.exp - 1)

    def rad(self) -> Fraction:
        return _to_fraction(self.hi - self.lo, self.exp - 1)

    def width(self) -> Fraction:
        return _to_fraction(self.hi - self.lo, self.exp)

    def is_point(self) -> bool:
        return self.lo == self.hi

    def __float__(self) -> float:
        return float(self.mid())

    def __repr__(self) -> str:
        if self.is_point():
            return f"Interval({_short(self.mid())})"
        return f"Interval([{_short(self.lower())}, {_short(self.upper())}])"

    def __eq__(self, other) -> bool:
        if not isinstance(other, Interval):
            return NotImplemented
        return (_cmp_dyadic(self.lo, self.exp, other.lo, other.exp) == 0
                and _cmp_dyadic(self.hi, self.exp, other.hi, other.exp) == 0)

    def __hash__(self) -> int:
        return hash((self.lower(), self.upper()))

    # -- predicates ---------------------------------------------------

    def contains(self, x) -> bool:
        if isinstance(x, Interval):
            return (_cmp_dyadic(self.lo, self.exp, x.lo, x.exp) <= 0
                    and _cmp_dyadic(x.hi, x.exp, self.hi, self.exp) <= 0)
        q = Fraction(x)
        return self.lower() <= q <= self.upper()

    def contains_zero(self) -> bool:
        return self.lo <= 0 <= self.hi

    def excludes_zero(self) -> bool:
        return self.lo > 0 or self.hi < 0

    def certainly_lt(self, other) -> bool:
        o = Interval.coerce(other)
        return _cmp_dyadic(self.hi, self.exp, o.lo, o.exp) < 0

    def certainly_le(self, other) -> bool:
        o = Interval.coerce(other)
        return _cmp_dyadic(self.hi, self.exp, o.lo, o.exp) <= 0

    def certainly_gt(self, other) -> bool:
        return Interval.coerce(other).certainly_lt(self)

    def certainly_ge(self, other) -> bool:
        return Interval.coerce(other).certainly_le(self)

    def overlaps(self, other: Interval) -> bool:
        return not (self.certainly_lt(other) or other.certainly_lt(self))

    def sign(self) -> int:
        """+1 / -1 when the sign is certain, 0 otherwise."""
        if self.lo > 0:
            return 1
        if self.hi < 0:
            return -1
        return 0

    # -- exact arithmetic ---------------------------------------------

    def __neg__(self) -> Interval:
        return Interval(-self.hi, -self.lo, self.exp)

    def __add__(self, other) -> Interval:
        if isinstance(other, int):
            if self.exp <= 0:
                s = other << -self.exp
                return Interval(self.lo + s, self.hi + s, self.exp)
            other = Interval(other)
        else:
            other = Interval.coerce(other)
        e = min(self.exp, other.exp)
        a, b = self.exp - e, other.exp - e
        return Interval((self.lo << a) + (other.lo << b),
                        (self.hi << a) + (other.hi << b), e)

    __radd__ = __add__

    def __sub__(self, other) -> Interval:
        return self + (-Interval.coerce(other))

    def __rsub__(self, other) -> Interval:
        return Interval.coerce(other) + (-self)

    def __mul__(self, other) -> Interval:
        if isinstance(other, int):
            if other >= 0:
                return Interval(self.lo * other, self.hi * other, self.exp)
            return Interval(self.hi * other, self.lo * other, self.exp)
        other = Interval.coerce(other)
        e = self.exp + other.exp
        if self.lo >= 0 and other.lo >= 0:
            return Interval(self.lo * other.lo, self.hi * other.hi, e)
        p = (self.lo * other.lo, self.lo * other.hi,
             self.hi * other.lo, self.hi * other.hi)
        return Interval(min(p), max(p), e)

    __rmul__ = __mul__

    def scale2(self, k: int) -> Interval:
        """Multiply by 2**k (exact)."""
        return Interval(self.lo, self.hi, self.exp + k)

    def abs(self) -> Interval:
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return -self
        return Interval(0, max(-self.lo, self.hi), self.exp)

    def sqr(self, prec: int | None = None) -> Interval:
        a = self.abs()
        r = Interval(a.lo * a.lo, a.hi * a.hi, 2 * a.exp)
        return r.round(prec) if prec else r

    # -- rounded arithmetic -------------------------------------------

    def round(self, prec: int | None) -> Interval:
        """Round outward so both mantissas fit in ``prec`` bits."""
        if prec is None:
            return self
        bits = max(abs(self.lo), abs(self.hi)).bit_length()
        s = bits - prec
        if s <= 0:
            return self
        return Interval(self.lo >> s, -((-self.hi) >> s), self.exp + s)

    def mul(self, other, prec: int | None) -> Interval:
        return (self * other).round(prec)

    def pow(self, n: int, prec: int | None = None) -> Interval:
        """``self**n`` by repeated squaring; exact when ``prec`` is None."""
        if n < 0:
            raise ValueError("negative exponent; use inv()")
        if n == 0:
            return Interval(1)
        if self.lo >= 0:
            # monotone: power the endpoints separately
            lo = _pow_floor(self.lo, self.exp, n, prec)
            hi = _pow_ceil(self.hi, self.exp, n, prec)
            e = min(lo[1], hi[1])
            return Interval(lo[0] << (lo[1] - e), hi[0] << (hi[1] - e), e)
        if self.hi <= 0:
            r = (-self).pow(n, prec)
            return r if n % 2 == 0 else -r
        if n % 2 == 0:
            return self.abs().pow(n, prec)
        # odd power of an interval around zero is monotone increasing
        lo = -Interval(-self.lo, -self.lo, self.exp).pow(n, prec)
        hi = Interval(self.hi, self.hi, self.exp).pow(n, prec)
        return lo.hull(hi)

    def div(self, other, prec: int) -> Interval:
        o = Interval.coerce(other)
        if not o.excludes_zero():
            raise ZeroDivisionError("divisor interval contains zero")
        if o.hi < 0:
            return (-self).div(-o, prec)
        # target exponent chosen so quotients carry about prec bits
        top = max(abs(self.lo), abs(self.hi)).bit_length() + self.exp
        bot = o.lo.bit_length() + o.exp
        E = top - bot - prec - 2
        lo_den = o.hi if self.lo >= 0 else o.lo
        hi_den = o.lo if self.hi >= 0 else o.hi
        lo = _div_floor(self.lo, self.exp, lo_den, o.exp, E)
        hi = -_div_floor(-self.hi, self.exp, hi_den, o.exp, E)
        return Interval(lo, hi, E)

    def inv(self, prec: int) -> Interval:
        return Interval(1).div(self, prec)

    def sqrt(self, prec: int) -> Interval:
        if self.hi < 0:
            raise ValueError("sqrt of a negative interval")
        lo_m = max(self.lo, 0)
        top = self.hi.bit_length() + self.exp
        E = (top // 2) - prec - 2
        # x = m * 2**exp, sqrt(x) = sqrt(m * 2**(exp - 2E)) * 2**E
        s = self.exp - 2 * E
        n_lo = _floor_shift(lo_m, -s)
        n_hi = _ceil_shift(self.hi, -s)
        r_lo = math.isqrt(n_lo)
        r_hi = math.isqrt(n_hi)
        if r_hi * r_hi < n_hi:
            r_hi += 1
        return Interval(r_lo, r_hi, E)

    def ln(self, prec: int) -> Interval:
        if self.lo <= 0:
            raise ValueError("logarithm of an interval not certainly positive")
        return dyadic_ln(self.lo, self.exp, prec).hull(dyadic_ln(self.hi, self.exp, prec))

    # -- set operations -----------------------------------------------

    def hull(self, other: Interval) -> Interval:
        e = min(self.exp, other.exp)
        a, b = self.exp - e, other.exp - e
        return Interval(min(self.lo << a, other.lo << b), max(self.hi << a, other.hi << b), e)

    def intersect(self, other: Interval) -> Interval:
        e = min(self.exp, other.exp)
        a, b = self.exp - e, other.exp - e
        lo = max(self.lo << a, other.lo << b)
        hi = min(self.hi << a, other.hi << b)
        if lo > hi:
            raise ValueError("disjoint intervals")
        return Interval(lo, hi, e)

    def magnitude_exp(self) -> int:
        """floor(log2 |x|) for the endpoint of largest magnitude (x != 0)."""
        m = max(abs(self.lo), abs(self.hi))
        if m == 0:
            raise ValueError("zero interval has no magnitude")
        return m.bit_length() - 1 + self.exp

    def lower_exp(self) -> int:
        """floor(log2 lo) for an interval with lo > 0."""
        if self.lo <= 0:
            raise ValueError("interval not certainly positive")
        return self.lo.bit_length() - 1 + self.exp


def _to_fraction(m: int, e: int) -> Fraction:
    return Fraction(m << e) if e >= 0 else Fraction(m, 1 << -e)


def _short(q: Fraction) -> str:
    try:
        return f"{float(q):.17g}"
    except OverflowError:
        return "inf" if q > 0 else "-inf"


def _div_floor(xm: int, xe: int, ym: int, ye: int, E: int) -> int:
    """floor(x / y / 2**E) with x = xm*2**xe, y = ym*2**ye, ym > 0."""
    k = xe - ye - E
    if k >= 0:
        return (xm << k) // ym
    return xm // (ym << -k)


def _pow_floor(m: int, e: int, n: int, prec: int | None) -> tuple[int, int]:
    """Lower bound of (m * 2**e)**n for m >= 0, as (mantissa, exponent)."""
    rm, re_ = 1, 0
    bm, be = m, e
    while True:
        if n & 1:
            rm, re_ = rm * bm, re_ + be
            if prec:
                s = rm.bit_length() - prec
                if s > 0:
                    rm >>= s
                    re_ += s
        n >>= 1
        if not n:
            return rm, re_
        bm, be = bm * bm, 2 * be
        if prec:
            s = bm.bit_length() - prec
            if s > 0:
                bm >>= s
                be += s


def _pow_ceil(m: int, e: int, n: int, prec: int | None) -> tuple[int, int]:
    rm, re_ = 1, 0
    bm, be = m, e
    while True:
        if n & 1:
            rm, re_ = rm * bm, re_ + be
            if prec:
                s = rm.bit_length() - prec
                if s > 0:
                    rm = -((-rm) >> s)
                    re_ += s
        n >>= 1
        if not n:
            return rm, re_
        bm, be = bm * bm, 2 * be
        if prec:
            s = bm.bit_length() - prec
            if s > 0:
                bm = -((-bm) >> s)
                be += s


def _signed_man_exp(v) -> tuple[int, int]:
    sign, man, exp, _ = v
    return (-int(man) if sign else int(man)), int(exp)


def dyadic_ln(m: int, e: int, prec: int) -> Interval:
    """Enclosure of ln(m * 2**e) for m > 0.

    mpmath rounds directed but only promises faithful results for
    transcendental functions, so the enclosure is widened by four ulps.
    """
    x = from_man_exp(m, e)
    if x == fone:
        return Interval(0)
    lo_m, lo_e = _signed_man_exp(mpf_log(x, prec + 8, "f"))
    hi_m, hi_e = _signed_man_exp(mpf_log(x, prec + 8, "c"))
    ex = min(lo_e, hi_e)
    return Interval((lo_m << (lo_e - ex)) - 4, (hi_m << (hi_e - ex)) + 4, ex)


class ComplexBox:
    """Rectangle ``re x im`` in the complex plane."""

    __slots__ = ("re", "im")

    def __init__(self, re: Interval, im: Interval | None = None):
        self.re = Interval.coerce(re)
        self.im = Interval(0) if im is None else Interval.coerce(im)

    @property
    def is_real(self) -> bool:
        return self.im.lo == 0 and self.im.hi == 0

    @property
    def width(self) -> Fraction:
        return max(self.re.width(), self.im.width())

    def center(self) -> tuple[Fraction, Fraction]:
        return self.re.mid(), self.im.mid()

    def __repr__(self) -> str:
        if self.is_real:
            return f"ComplexBox({self.re!r})"
        return f"ComplexBox({self.re!r}, {self.im!r})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, ComplexBox):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self) -> int:
        return hash((self.re, self.im))

    def conj(self) -> ComplexBox:
        return ComplexBox(self.re, -self.im)

    def contains(self, other: ComplexBox) -> bool:
        return self.re.contains(other.re) and self.im.contains(other.im)

    def contains_zero(self) -> bool:
        return self.re.contains_zero() and self.im.contains_zero()

    def disjoint(self, other: ComplexBox) -> bool:
        return (self.re.certainly_lt(other.re) or other.re.certainly_lt(self.re)
                or self.im.certainly_lt(other.im) or other.im.certainly_lt(self.im))

    def intersect(self, other: ComplexBox) -> ComplexBox:
        return ComplexBox(self.re.intersect(other.re), self.im.intersect(other.im))

    def __neg__(self) -> ComplexBox:
        return ComplexBox(-self.re, -self.im)

    def __add__(self, other) -> ComplexBox:
        if isinstance(other, ComplexBox):
            return ComplexBox(self.re + other.re, self.im + other.im)
        return ComplexBox(self.re + other, self.im)

    __radd__ = __add__

    def __sub__(self, other) -> ComplexBox:
        return self + (-other)

    def __rsub__(self, other) -> ComplexBox:
        return (-self) + other

    def mul(self, other, prec: int | None) -> ComplexBox:
        if not isinstance(other, ComplexBox):
            return ComplexBox(self.re.mul(other, prec), self.im.mul(other, prec))
        if self.is_real and other.is_real:
            return ComplexBox(self.re.mul(other.re, prec))
        a, b, c, d = self.re, self.im, other.re, other.im
        return ComplexBox((a * c - b * d).round(prec), (a * d + b * c).round(prec))

    def sqr(self, prec: int | None) -> ComplexBox:
        if self.is_real:
            return ComplexBox(self.re.sqr(prec))
        a, b = self.re, self.im
        return ComplexBox((a.sqr() - b.sqr()).round(prec), (a * b).scale2(1).round(prec))

    def pow(self, n: int, prec: int | None = None) -> ComplexBox:
        if self.is_real:
            return ComplexBox(self.re.pow(n, prec))
        result = None
        base = self
        while n:
            if n & 1:
                result = base if result is None else result.mul(base, prec)
            n >>= 1
            if n:
                base = base.sqr(prec)
        return ComplexBox(Interval(1)) if result is None else result

    def abs2(self, prec: int | None = None) -> Interval:
        return (self.re.sqr() + self.im.sqr()).round(prec)

    def abs(self, prec: int) -> Interval:
        if self.is_real:
            return self.re.abs()
        return self.abs2().sqrt(prec)


def horner(coeffs, x, prec: int | None):
    """Evaluate the ascending-coefficient integer polynomial at ``x``.

    ``x`` is an :class:`Interval` or :class:`ComplexBox`; each step rounds
    outward to ``prec`` bits.
    """
    wrap = ComplexBox if isinstance(x, ComplexBox) else (lambda c: c)
    acc = wrap(Interval(coeffs[-1]))
    for c in reversed(coeffs[:-1]):
        acc = acc.mul(x, prec) + c
    return acc
