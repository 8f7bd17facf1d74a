"""Case analysis of a real algebraic number alpha > 1.

Computes the Liouville constant C(alpha), Pisot / Salem-like flags, the
quadratic-Pisot-unit shape, the decomposition f(X) = g(X^m) tied to the
roots of maximal modulus, the smallest power h with alpha^h an integer or a
quadratic Pisot unit, and the Pisot decay exponent eta.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .certroots import MAX_PREC, AlgebraicNumber, distinguished_root, modulus_classes, unit_circle_roots
from .errors import BoydMismatch, NotPisot, Undecided
from .interval import Interval
from .intpoly import IntPolynomial, minpoly_of_power, power_support_decompose

__all__ = [
    "BoydDecomposition",
    "PisotCertificate",
    "Classification",
    "compute_C",
    "boyd_decompose",
    "is_pisot",
    "qpu_check",
    "smallest_h",
    "n_alpha_contains",
    "pisot_eta",
    "classify",
]

N_ALPHA_NOTE = (
    "N_alpha is taken as the exponents n not divisible by h. On multiples of h "
    "the power alpha^n is an integer (distance 0) or a quadratic Pisot unit "
    "power with distance exactly C(alpha)^-n, so no improvement over the "
    "Liouville rate is possible there."
)


def compute_C(a: AlgebraicNumber, prec: int = 128) -> Interval:
    """Certified C(alpha) = a_d * alpha^(d-1) * prod_{|alpha_i| > alpha} |alpha_i| / alpha.

    Conjugates tied with alpha in modulus contribute exactly 1.
    """
    d = a.degree
    wp = prec + 16 + 2 * d
    alpha = a.enclosure(wp)
    C = Interval(a.poly.leading)
    if d == 1:
        return C
    C = C.mul(alpha.pow(d - 1, wp), wp)
    mc = modulus_classes(a)
    above = mc.above_alpha()
    if above:
        rs = a.refined_roots(wp)
        for i in above:
            C = C.mul(rs.boxes[i].abs(wp).div(alpha, wp), wp)
    return C


@dataclass(frozen=True)
class BoydDecomposition:
    """f(X) = g(X^m).

    ``hypothesis`` records whether a root of maximal modulus is real and
    positive.  Only then does the max-modulus count have to equal m, and
    ``max_modulus_count`` is reported either way.
    """

    m: int
    g: IntPolynomial
    max_modulus_count: int
    hypothesis: bool


def boyd_decompose(a: AlgebraicNumber) -> BoydDecomposition:
    mc = modulus_classes(a)
    top = mc.top
    m_support, g = power_support_decompose(a.poly)
    boxes = a.roots.boxes
    hypothesis = any(boxes[i].is_real and boxes[i].re.lo > 0 for i in top)
    if hypothesis and len(top) != m_support:
        raise BoydMismatch(
            f"{a.poly}: {len(top)} roots of maximal modulus but exponent-support gcd {m_support}"
        )
    return BoydDecomposition(m_support, g, len(top), hypothesis)


@dataclass(frozen=True)
class PisotCertificate:
    pisot: bool
    salem_flag: bool
    max_other_modulus: Interval | None
    unit_circle: frozenset[int] = field(default_factory=frozenset)


def is_pisot(a: AlgebraicNumber, max_prec: int = MAX_PREC) -> PisotCertificate:
    """Pisot test with certificate.

    Unit-circle membership is only ever established structurally (reciprocal
    polynomial); any other modulus is separated from 1 by refinement.
    """
    f = a.poly
    d = f.degree
    if d == 1:
        return PisotCertificate(f.is_monic(), False, None)
    others = [i for i in range(d) if i != a.alpha_index]
    circle = unit_circle_roots(a, max_prec)
    must_decide = f.is_monic() or bool(circle)
    prec = a.roots.precision
    while True:
        rs = a.refined_roots(prec)
        mods2 = {i: rs.boxes[i].abs2(prec + 16) for i in others}
        pending = [i for i in others if i not in circle
                   and not (mods2[i].certainly_lt(1) or mods2[i].certainly_gt(1))]
        if not must_decide or not pending:
            break
        if prec * 2 > max_prec:
            raise Undecided(pending[0], a.alpha_index, prec)
        prec *= 2
    rho = _max_other_modulus(a, prec + 16)
    if not must_decide:
        return PisotCertificate(False, False, rho, circle)
    inside = all(i in circle or mods2[i].certainly_lt(1) for i in others)
    pisot = f.is_monic() and inside and not circle
    salem = inside and bool(circle)
    return PisotCertificate(pisot, salem, rho, circle)


def qpu_check(f: IntPolynomial) -> tuple[int, int] | None:
    """(a, b) when f = X^2 - aX + b with a >= 1, b = +-1, (a, b) not (1, 1) or (2, 1)."""
    if f.degree != 2 or not f.is_monic():
        return None
    b, minus_a, _ = f.coeffs
    a = -minus_a
    if b not in (-1, 1) or a < 1 or (a, b) in ((1, 1), (2, 1)):
        return None
    return a, b


def _divisors(n: int) -> list[int]:
    return [k for k in range(1, n + 1) if n % k == 0]


def smallest_h(a: AlgebraicNumber) -> int | None:
    """Smallest h, searched over the divisors of d, with alpha^h an integer
    or a quadratic Pisot unit."""
    for h in _divisors(a.degree):
        g = minpoly_of_power(a.poly, h)
        if (g.degree == 1 and g.is_monic()) or qpu_check(g) is not None:
            return h
    return None


def n_alpha_contains(h: int | None, n: int) -> bool:
    if n < 1:
        raise ValueError("n must be positive")
    return h is None or n % h != 0


def pisot_eta(a: AlgebraicNumber, prec: int = 128, cert: PisotCertificate | None = None) -> Interval:
    """eta = -ln(max other conjugate modulus) / ln(alpha)."""
    cert = cert or is_pisot(a)
    if not cert.pisot:
        raise NotPisot(f"{a.poly} does not define a Pisot number")
    if cert.max_other_modulus is None:
        raise NotPisot("an integer has no other conjugates; eta is unbounded")
    wp = prec + 16
    rho = _max_other_modulus(a, wp)
    return (-rho.ln(wp)).div(a.enclosure(wp).ln(wp), wp)


def _max_other_modulus(a: AlgebraicNumber, prec: int) -> Interval:
    """Enclosure of max |alpha_i| over i != alpha_index."""
    rs = a.refined_roots(prec)
    best = None
    for i, b in enumerate(rs.boxes):
        if i == a.alpha_index:
            continue
        m = b.abs(prec)
        if best is None:
            best = m
        else:
            lo = best if best.lower() >= m.lower() else m
            hi = best if best.upper() >= m.upper() else m
            e = min(lo.exp, hi.exp)
            best = Interval(lo.lo << (lo.exp - e), hi.hi << (hi.exp - e), e)
    return best


@dataclass(frozen=True)
class Classification:
    poly: IntPolynomial
    d: int
    a_d: int
    alpha: Interval
    C_alpha: Interval
    is_rational: bool
    is_integer: bool
    pisot: bool
    salem_flag: bool
    qpu: tuple[int, int] | None
    boyd: BoydDecomposition
    h: int | None
    eta: Interval | None
    max_other_modulus: Interval | None
    conjugate_moduli: tuple[Interval, ...]
    modulus_order: tuple[tuple[int, ...], ...]
    alpha_index: int
    n_alpha_rule: str
    note: str = N_ALPHA_NOTE

    def in_n_alpha(self, n: int) -> bool:
        return n_alpha_contains(self.h, n)


def _rule_text(h: int | None) -> str:
    if h is None:
        return "all n >= 1"
    if h == 1:
        return "empty"
    return f"n >= 1 with {h} not dividing n"


def classify(f: IntPolynomial | AlgebraicNumber, precision: int = 128) -> Classification:
    a = f if isinstance(f, AlgebraicNumber) else distinguished_root(f)
    poly = a.poly
    d = poly.degree
    C = compute_C(a, precision)
    boyd = boyd_decompose(a)
    cert = is_pisot(a)
    h = smallest_h(a)
    qpu = qpu_check(minpoly_of_power(poly, h)) if h is not None else None
    eta = None
    rho = None
    if d > 1:
        rho = _max_other_modulus(a, precision + 16).round(precision + 8)
        if cert.pisot:
            eta = pisot_eta(a, precision, cert).round(precision + 8)
    mc = modulus_classes(a)
    rs = a.refined_roots(precision)
    moduli = tuple(b.abs(precision + 16).round(precision + 8) for b in rs.boxes)
    return Classification(
        poly=poly,
        d=d,
        a_d=poly.leading,
        alpha=a.enclosure(precision),
        C_alpha=C.round(precision + 8),
        is_rational=d == 1,
        is_integer=d == 1 and poly.is_monic(),
        pisot=cert.pisot,
        salem_flag=cert.salem_flag,
        qpu=qpu,
        boyd=boyd,
        h=h,
        eta=eta,
        max_other_modulus=rho,
        conjugate_moduli=moduli,
        modulus_order=mc.classes,
        alpha_index=a.alpha_index,
        n_alpha_rule=_rule_text(h),
    )
