"""Exact integer polynomials: parsing, screening, support decomposition and
minimal polynomials of powers of a root.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Sequence

from .errors import ParseError

__all__ = [
    "IntPolynomial",
    "ScreenReport",
    "parse_poly",
    "screen_irreducible",
    "power_support_decompose",
    "minpoly_of_power",
    "power_sums",
]


@dataclass(frozen=True)
class IntPolynomial:
    """Primitive integer polynomial with positive leading coefficient.

    ``coeffs[k]`` multiplies ``X**k``.  Any nonzero sequence is accepted and
    normalized (trailing zeros stripped, content divided out, sign fixed), so
    two polynomials are equal exactly when they define the same roots with
    the same multiplicities.
    """

    coeffs: tuple[int, ...]

    def __post_init__(self):
        c = [int(x) for x in self.coeffs]
        while c and c[-1] == 0:
            c.pop()
        if not c:
            raise ParseError("zero polynomial")
        g = reduce(math.gcd, c)
        if c[-1] < 0:
            g = -g
        object.__setattr__(self, "coeffs", tuple(x // g for x in c))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1]

    @property
    def constant(self) -> int:
        return self.coeffs[0]

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> list[int]:
        return [k * c for k, c in enumerate(self.coeffs)][1:]

    def is_monic(self) -> bool:
        return self.leading == 1

    def is_reciprocal(self) -> bool:
        """True when X^d f(1/X) = +-f(X)."""
        c = self.coeffs
        return c == c[::-1] or c == tuple(-x for x in c[::-1])

    def substitute_power(self, m: int) -> IntPolynomial:
        """The polynomial f(X**m)."""
        out = [0] * (self.degree * m + 1)
        for k, c in enumerate(self.coeffs):
            out[k * m] = c
        return IntPolynomial(tuple(out))

    def canonical(self) -> str:
        return ",".join(str(c) for c in self.coeffs)

    def __str__(self) -> str:
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if k == 0:
                body = str(a)
            else:
                mono = "x" if k == 1 else f"x^{k}"
                body = mono if a == 1 else f"{a}{mono}"
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


_COEFF_LIST = re.compile(r"^\s*[+-]?\d+(\s*,\s*[+-]?\d+)*\s*$")
_TERM = re.compile(
    r"""\s*(?P<sign>[+-])?\s*
        (?:
          (?P<coef>\d+)\s*(?:\*\s*)?(?P<var1>[xX])(?:\s*(?:\^|\*\*)\s*(?P<exp1>\d+))?
        | (?P<var2>[xX])(?:\s*(?:\^|\*\*)\s*(?P<exp2>\d+))?
        | (?P<const>\d+)
        )\s*""",
    re.VERBOSE,
)


def parse_poly(text: str) -> IntPolynomial:
    """Parse ``"-1,-1,1"`` (ascending coefficients) or ``"x^2 - x - 1"``."""
    if not isinstance(text, str) or not text.strip():
        raise ParseError("empty polynomial text")
    if _COEFF_LIST.match(text):
        coeffs = [int(t) for t in text.split(",")]
    else:
        coeffs = _parse_expression(text)
    if not any(coeffs):
        raise ParseError(f"zero polynomial: {text!r}")
    f = IntPolynomial(tuple(coeffs))
    if f.degree < 1:
        raise ParseError(f"constant polynomial: {text!r}")
    return f


def _parse_expression(text: str) -> list[int]:
    acc: dict[int, int] = {}
    pos = 0
    first = True
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"syntax error at column {pos + 1} in {text!r}")
        if m.group("sign") is None and not first:
            raise ParseError(f"missing operator at column {pos + 1} in {text!r}")
        sign = -1 if m.group("sign") == "-" else 1
        if m.group("const") is not None:
            coef, exp = int(m.group("const")), 0
        elif m.group("var1") is not None:
            coef = int(m.group("coef"))
            exp = int(m.group("exp1")) if m.group("exp1") else 1
        else:
            coef = 1
            exp = int(m.group("exp2")) if m.group("exp2") else 1
        acc[exp] = acc.get(exp, 0) + sign * coef
        pos = m.end()
        first = False
    if first:
        raise ParseError(f"no terms in {text!r}")
    out = [0] * (max(acc) + 1)
    for e, c in acc.items():
        out[e] = c
    return out


# -- dense polynomial helpers over Q (ascending lists) ----------------------

def _trim(p: list) -> list:
    while p and p[-1] == 0:
        p.pop()
    return p


def _divmod(a: list, b: list) -> tuple[list, list]:
    a = [Fraction(x) for x in a]
    b = [Fraction(x) for x in b]
    _trim(a)
    _trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b) and a:
        shift = len(a) - len(b)
        c = a[-1] / b[-1]
        q[shift] = c
        for i, bc in enumerate(b):
            a[i + shift] -= c * bc
        a.pop()
        _trim(a)
    return q, a


def _gcd(a: list, b: list) -> list:
    a = _trim([Fraction(x) for x in a])
    b = _trim([Fraction(x) for x in b])
    while b:
        _, r = _divmod(a, b)
        a, b = b, r
    if not a:
        return a
    lead = a[-1]
    return [x / lead for x in a]


def _to_primitive(p: Sequence[Fraction]) -> IntPolynomial:
    den = reduce(lambda x, y: x * y // math.gcd(x, y), (Fraction(c).denominator for c in p), 1)
    return IntPolynomial(tuple(int(Fraction(c) * den) for c in p))


# -- screening ---------------------------------------------------------------

@dataclass(frozen=True)
class ScreenReport:
    """Outcome of the necessary-condition screen.

    ``passed`` does not certify irreducibility; a failure does certify that
    the polynomial is reducible or has a repeated root.
    """

    passed: bool
    squarefree: bool
    rational_roots: tuple[Fraction, ...] = ()
    trivial_degree_one: bool = False
    reasons: tuple[str, ...] = field(default=())


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    k = 1
    while k * k <= n:
        if n % k == 0:
            small.append(k)
            if k * k != n:
                large.append(n // k)
        k += 1
    return small + large[::-1]


def rational_roots(f: IntPolynomial) -> list[Fraction]:
    c = f.coeffs
    roots = []
    if c[0] == 0:
        roots.append(Fraction(0))
        k = next(i for i, x in enumerate(c) if x)
        c = c[k:]
        if len(c) == 1:
            return roots
    g = IntPolynomial(c)
    for q in _divisors(g.leading):
        for p in _divisors(g.constant):
            for r in (Fraction(p, q), Fraction(-p, q)):
                if r.denominator == q and g(r) == 0 and r not in roots:
                    roots.append(r)
    return sorted(roots)


def screen_irreducible(f: IntPolynomial) -> ScreenReport:
    reasons = []
    if f.degree < 1:
        return ScreenReport(False, False, reasons=("degree 0",))
    g = _gcd(list(f.coeffs), f.derivative())
    squarefree = len(g) <= 1
    if not squarefree:
        reasons.append(f"repeated root: gcd(f, f') has degree {len(g) - 1}")
    if f.degree == 1:
        return ScreenReport(squarefree, squarefree, trivial_degree_one=True,
                            reasons=tuple(reasons))
    roots = tuple(rational_roots(f))
    if roots:
        reasons.append("rational root(s) " + ", ".join(str(r) for r in roots))
    return ScreenReport(squarefree and not roots, squarefree, roots, False, tuple(reasons))


# -- structure ---------------------------------------------------------------

def power_support_decompose(f: IntPolynomial) -> tuple[int, IntPolynomial]:
    """Largest m with f(X) = g(X**m); returns (m, g)."""
    m = reduce(math.gcd, (k for k, c in enumerate(f.coeffs) if c), f.degree)
    if m == 0:
        m = 1
    return m, IntPolynomial(f.coeffs[::m])


def _companion(f: IntPolynomial) -> list[list[Fraction]]:
    d = f.degree
    lead = Fraction(f.leading)
    C = [[Fraction(0)] * d for _ in range(d)]
    for i in range(1, d):
        C[i][i - 1] = Fraction(1)
    for i in range(d):
        C[i][d - 1] = -f.coeffs[i] / lead
    return C


def _matmul(A, B):
    Bt = list(zip(*B))
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def _matpow(M, h: int):
    n = len(M)
    R = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    while h:
        if h & 1:
            R = _matmul(R, M)
        h >>= 1
        if h:
            M = _matmul(M, M)
    return R


def _charpoly(M) -> list[Fraction]:
    """Characteristic polynomial det(XI - M), ascending, via Faddeev-LeVerrier."""
    n = len(M)
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    Mk = [[Fraction(0)] * n for _ in range(n)]
    c = Fraction(1)
    for k in range(1, n + 1):
        # Mk <- M (M_{k-1}) + c_{n-k+1} I
        Mk = _matmul(M, Mk)
        for i in range(n):
            Mk[i][i] += c
        AM = _matmul(M, Mk)
        c = -sum(AM[i][i] for i in range(n)) / k
        coeffs[n - k] = c
    return coeffs


def minpoly_of_power(f: IntPolynomial, h: int) -> IntPolynomial:
    """Minimal polynomial over Z of alpha**h, alpha any root of irreducible f."""
    if h < 1:
        raise ValueError("h must be a positive integer")
    if f.degree < 1:
        raise ValueError("polynomial of degree 0 has no roots")
    if h == 1:
        return f
    chi = _charpoly(_matpow(_companion(f), h))
    der = [k * c for k, c in enumerate(chi)][1:]
    g = _gcd(chi, der)
    radical, rem = _divmod(chi, g) if len(g) > 1 else (chi, [])
    assert not rem
    return _to_primitive(radical)


def power_sums(f: IntPolynomial, n_max: int) -> list[int]:
    """Exact traces s_n = sum_i alpha_i**n for n = 0..n_max (monic f only).

    Newton's identities seed the integer linear recurrence whose
    characteristic polynomial is f.
    """
    if not f.is_monic():
        raise ValueError("power sums are integral only for monic polynomials")
    d = f.degree
    e = f.coeffs  # f = X^d + e[d-1] X^(d-1) + ... + e[0]
    s = [d]
    for k in range(1, n_max + 1):
        acc = sum(e[d - i] * s[k - i] for i in range(1, min(k - 1, d) + 1))
        if k <= d:
            acc += k * e[d - k]
        s.append(-acc)
    return s
