"""Certified isolation and refinement of the complex roots of an IntPolynomial.

Approximate roots come from mpmath (``polyroots`` then Newton polishing);
they are only starting points.  Certification uses Smith's inclusion
theorem: for distinct approximations z_1..z_d of the roots of f with leading
coefficient a_d, the disks

    |z - z_i| <= d * |f(z_i)| / (|a_d| * prod_{j != i} |z_i - z_j|)

cover all roots, and every connected component made of k disks holds
exactly k roots.  Every quantity is evaluated in outward-rounded interval
arithmetic, so pairwise-disjoint disks each provably hold one root.

Each reported box is the disk's center widened to a fixed half-width
2**(E - prec), with E = floor(log2 max(1, |center|)).  The Smith radius is
required to be at most 1/16 of that, which makes a box computed at a higher
precision fall inside the box computed at a lower one.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from .errors import CertificationError, NoRootGreaterThanOne, NotSquarefree, ScreenFailure, Undecided
from .interval import ComplexBox, Interval, horner
from .intpoly import IntPolynomial, power_support_decompose, screen_irreducible, _gcd

__all__ = [
    "MAX_PREC",
    "RootSet",
    "AlgebraicNumber",
    "ModulusClasses",
    "isolate_roots",
    "distinguished_root",
    "refine",
    "modulus_classes",
    "unit_circle_roots",
]

MAX_PREC = 1 << 20


@dataclass(frozen=True)
class RootSet:
    """All d roots of ``polynomial`` in pairwise-disjoint certified boxes."""

    polynomial: IntPolynomial
    boxes: tuple[ComplexBox, ...]
    precision: int

    def __len__(self) -> int:
        return len(self.boxes)

    def mirror_index(self, i: int) -> int:
        """Index of the box holding the complex conjugate of root i."""
        b = self.boxes[i]
        if b.is_real:
            return i
        target = b.conj()
        for k, other in enumerate(self.boxes):
            if other == target:
                return k
        raise AssertionError("root boxes are not closed under conjugation")


# -- approximation -------------------------------------------------------------

def _mpf_point(x) -> Interval:
    sign, man, exp, _ = x._mpf_
    man = int(man)
    return Interval(-man if sign else man, None, exp)


def _newton(coeffs_desc, z, wp: int, max_iter: int = 200):
    tol = mpmath.mpf(2) ** (-wp + 6)
    for _ in range(max_iter):
        fz, dfz = mpmath.polyval(coeffs_desc, z, derivative=True)
        if dfz == 0:
            break
        step = fz / dfz
        z -= step
        if abs(step) <= tol * max(1, abs(z)):
            break
    return z


def _approximate(f: IntPolynomial, prec: int):
    """Approximate roots as (re, im) mpf pairs with exact conjugate symmetry."""
    wp = prec + 32
    with mpmath.workprec(wp):
        desc = [mpmath.mpf(c) for c in reversed(f.coeffs)]
        try:
            raw = mpmath.polyroots(desc, maxsteps=100 + prec // 2, extraprec=wp)
        except mpmath.libmp.NoConvergence:
            return None
        tol = mpmath.mpf(2) ** (-(prec // 2))
        reals, upper, lower = [], [], 0
        for z in raw:
            z = mpmath.mpc(z)
            if abs(z.imag) <= tol * max(1, abs(z)):
                reals.append(mpmath.re(z))
            elif z.imag > 0:
                upper.append(z)
            else:
                lower += 1
        if lower != len(upper):
            return None
        out = []
        for x in reals:
            x = _newton(desc, x, wp)
            out.append((x, mpmath.mpf(0)))
        for z in upper:
            z = _newton(desc, z, wp)
            out.append((z.real, z.imag))
            out.append((z.real, -z.imag))
        return out


# -- certification -------------------------------------------------------------

def _grid_round(p: Interval, e: int) -> Interval:
    """Round a point to the nearest multiple of 2**e (no enclosure implied)."""
    if p.exp >= e:
        return p
    s = e - p.exp
    m = (abs(p.lo) + (1 << (s - 1))) >> s
    return Interval(-m if p.lo < 0 else m, None, e)


def _center_exp(re: Interval, im: Interval) -> int:
    """floor(log2 max(1, |re|, |im|)) of a point center."""
    e = 0
    for x in (re, im):
        if x.lo != 0:
            e = max(e, x.magnitude_exp())
    return e


def _box_around(re: Interval, im: Interval, half_exp: int) -> ComplexBox:
    R = Interval(-1, 1, half_exp)
    if im.lo == 0 and im.hi == 0:
        return ComplexBox(re + R)
    return ComplexBox(re + R, im + R)


def _certify(f: IntPolynomial, centers, prec: int):
    """Smith-disk certificate; returns boxes or None if not yet conclusive."""
    d = f.degree
    wp = prec + 48
    pts = []
    for re_, im_ in centers:
        re_p, im_p = _mpf_point(re_), _mpf_point(im_)
        E = _center_exp(re_p, im_p)
        g = E - prec - 20
        pts.append((_grid_round(re_p, g), _grid_round(im_p, g) if im_p.lo else Interval(0), E))
    zs = [ComplexBox(re_, im_) for re_, im_, _ in pts]
    lead2 = f.leading ** 2
    boxes = []
    for i, (re_, im_, E) in enumerate(pts):
        F2 = horner(f.coeffs, zs[i], wp).abs2(wp)
        if F2.hi == 0:
            boxes.append(ComplexBox(re_, im_))
            continue
        den = Interval(lead2)
        for j in range(d):
            if j != i:
                den = den.mul((zs[i] - zs[j]).abs2(wp), wp)
        if den.lo <= 0:
            return None
        r2 = (F2 * (d * d)).div(den, wp)
        # need r <= R/16 = 2**(E - prec - 4)
        if not r2.certainly_le(Interval(1, 1, 2 * (E - prec - 4))):
            return None
        boxes.append(_box_around(re_, im_, E - prec))
    for i in range(d):
        for k in range(i + 1, d):
            if not boxes[i].disjoint(boxes[k]):
                return None
    return boxes


def _sort_key(b: ComplexBox):
    return (b.re.mid(), b.im.mid())


def _check_squarefree(f: IntPolynomial) -> None:
    if len(_gcd(list(f.coeffs), f.derivative())) > 1:
        raise NotSquarefree(f"{f} has a repeated root")


def isolate_roots(f: IntPolynomial, precision: int = 64, max_prec: int = MAX_PREC) -> RootSet:
    """Certified boxes for all roots of a squarefree polynomial.

    Precision starts at max(64, precision) and doubles on failure.
    """
    _check_squarefree(f)
    prec = max(64, precision)
    while prec <= max_prec:
        approx = _approximate(f, prec)
        if approx is not None and len(approx) == f.degree:
            boxes = _certify(f, approx, prec)
            if boxes is not None:
                return RootSet(f, tuple(sorted(boxes, key=_sort_key)), prec)
        prec *= 2
    raise CertificationError(f"root isolation of {f} failed below {max_prec} bits")


def _refine_rootset(rs: RootSet, precision: int, max_prec: int) -> RootSet:
    f = rs.polynomial
    prec = precision
    while prec <= max_prec:
        with mpmath.workprec(prec + 32):
            desc = [mpmath.mpf(c) for c in reversed(f.coeffs)]
            centers = [None] * len(rs)
            for i, b in enumerate(rs.boxes):
                if centers[i] is not None:
                    continue
                re0 = mpmath.mpf(b.re.mid().numerator) / b.re.mid().denominator
                if b.is_real:
                    x = _newton(desc, re0, prec + 32)
                    centers[i] = (x, mpmath.mpf(0))
                else:
                    im0 = mpmath.mpf(b.im.mid().numerator) / b.im.mid().denominator
                    z = _newton(desc, mpmath.mpc(re0, im0), prec + 32)
                    k = rs.mirror_index(i)
                    centers[i] = (z.real, z.imag)
                    centers[k] = (z.real, -z.imag)
            boxes = _certify(f, centers, prec)
        if boxes is not None:
            nested = []
            for i, nb in enumerate(boxes):
                if any(not nb.disjoint(ob) for k, ob in enumerate(rs.boxes) if k != i):
                    nested = None
                    break
                nested.append(nb.intersect(rs.boxes[i]))
            if nested is not None:
                return RootSet(f, tuple(nested), precision)
        prec = prec + max(32, prec // 2)
    raise CertificationError(f"refinement of {f} to {precision} bits failed")


# -- the distinguished root ----------------------------------------------------

def _sign_at(f: IntPolynomial, m: int, e: int) -> int:
    """Exact sign of f(m * 2**e)."""
    if e >= 0:
        v = f(m << e)
    else:
        s = -e
        d = f.degree
        c = f.coeffs
        v = c[d]
        for k in range(d - 1, -1, -1):
            v = v * m + (c[k] << (s * (d - k)))
    return (v > 0) - (v < 0)


def _refine_real_root(f: IntPolynomial, iv: Interval, prec: int) -> Interval:
    """Shrink an isolating interval of a simple real root by Newton steps
    certified with an exact sign change."""
    wp = prec + 32
    for attempt in range(6):
        with mpmath.workprec(wp):
            desc = [mpmath.mpf(c) for c in reversed(f.coeffs)]
            mid = iv.mid()
            x = _newton(desc, mpmath.mpf(mid.numerator) / mid.denominator, wp)
            xp = _mpf_point(x)
        E = _center_exp(xp, Interval(0))
        xp = _grid_round(xp, E - prec - 8)
        eps = Interval(-1, 1, E - prec - 2)
        cand = xp + eps
        if iv.contains(cand):
            s_lo = _sign_at(f, cand.lo, cand.exp)
            s_hi = _sign_at(f, cand.hi, cand.exp)
            if s_lo * s_hi < 0:
                return cand
            if s_lo == 0 and s_hi == 0:
                break
        wp += wp // 2
    raise CertificationError(f"could not refine real root of {f} to {prec} bits")


@dataclass(frozen=True)
class AlgebraicNumber:
    """A real root alpha > 1 of ``poly`` together with all its conjugates.

    ``alpha_index`` points into ``roots.boxes``.  The private cache keeps the
    most refined enclosures seen so far; it never changes what any method
    returns, only how fast.
    """

    poly: IntPolynomial
    roots: RootSet
    alpha_index: int
    _cache: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    @property
    def degree(self) -> int:
        return self.poly.degree

    @property
    def alpha(self) -> Interval:
        return self.roots.boxes[self.alpha_index].re

    def is_exact(self) -> bool:
        return self.alpha.is_point()

    def enclosure(self, prec: int) -> Interval:
        """Enclosure of alpha of width at most 2**(1 - prec) * max(1, alpha)."""
        cur = self._cache.get("alpha", self.alpha)
        if cur.is_point():
            return cur
        E = max(0, cur.magnitude_exp())
        if cur.width() <= Fraction(2) ** (E + 1 - prec):
            return cur
        if self.degree == 1:
            new = Interval.from_fraction(Fraction(-self.poly.constant, self.poly.leading), prec + 2)
            new = new.intersect(cur)
        else:
            new = _refine_real_root(self.poly, cur, prec).intersect(cur)
        self._cache["alpha"] = new
        return new

    def refined_roots(self, prec: int) -> RootSet:
        cur = self._cache.get("roots", self.roots)
        if prec <= cur.precision:
            return cur
        new = _refine_rootset(cur, prec, self._cache.get("max_prec", MAX_PREC))
        self._cache["roots"] = new
        return new

    def conjugate_box(self, i: int, prec: int) -> ComplexBox:
        if i == self.alpha_index:
            return ComplexBox(self.enclosure(prec))
        return self.refined_roots(prec).boxes[i]


def distinguished_root(f: IntPolynomial, precision: int = 64, max_prec: int = MAX_PREC) -> AlgebraicNumber:
    """The largest real root of f, certified to exceed 1."""
    report = screen_irreducible(f)
    if not report.passed:
        cls = NotSquarefree if not report.squarefree else ScreenFailure
        raise cls(f"{f} fails the irreducibility screen: " + "; ".join(report.reasons))
    rs = isolate_roots(f, precision, max_prec)
    reals = [i for i, b in enumerate(rs.boxes) if b.is_real]
    if not reals:
        raise NoRootGreaterThanOne(f"{f} has no real roots")
    j = max(reals, key=lambda i: rs.boxes[i].re.mid())
    a = AlgebraicNumber(f, rs, j)
    prec = rs.precision
    while not a.alpha.certainly_gt(1):
        if a.alpha.certainly_le(1):
            raise NoRootGreaterThanOne(f"largest real root of {f} is at most 1")
        prec *= 2
        if prec > max_prec:
            raise CertificationError("could not compare the largest real root with 1")
        a = refine(a, prec)
    return a


def refine(a: AlgebraicNumber, precision: int) -> AlgebraicNumber:
    """Same number with every box shrunk to the requested precision (nested)."""
    if precision <= a.roots.precision:
        return a
    return AlgebraicNumber(a.poly, a.refined_roots(precision), a.alpha_index, dict(a._cache))


# -- modulus structure ----------------------------------------------------------

@dataclass(frozen=True)
class ModulusClasses:
    """Conjugate indices grouped by equal modulus, in increasing modulus order.

    ``moduli2[k]`` encloses the common squared modulus of ``classes[k]``.
    Within the class containing alpha, alpha is listed last.
    """

    classes: tuple[tuple[int, ...], ...]
    moduli2: tuple[Interval, ...]
    alpha_class: int
    precision: int

    def above_alpha(self) -> tuple[int, ...]:
        return tuple(i for c in self.classes[self.alpha_class + 1:] for i in c)

    def ties_with_alpha(self, alpha_index: int) -> tuple[int, ...]:
        return tuple(i for i in self.classes[self.alpha_class] if i != alpha_index)

    @property
    def top(self) -> tuple[int, ...]:
        return self.classes[-1]


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, i: int) -> int:
        while self.parent[i] != i:
            self.parent[i] = self.parent[self.parent[i]]
            i = self.parent[i]
        return i

    def union(self, i: int, k: int) -> None:
        a, b = self.find(i), self.find(k)
        if a != b:
            self.parent[max(a, b)] = min(a, b)

    def groups(self) -> list[list[int]]:
        out: dict[int, list[int]] = {}
        for i in range(len(self.parent)):
            out.setdefault(self.find(i), []).append(i)
        return list(out.values())


def _power_images(a: AlgebraicNumber, m: int, g: IntPolynomial, max_prec: int) -> tuple[list[int], RootSet]:
    """For each root z of f = g(X^m), the index of the root of g equal to z**m."""
    prec = a.roots.precision
    while prec <= max_prec:
        grs = isolate_roots(g, prec, max_prec)
        rs = a.refined_roots(prec)
        images = []
        for b in rs.boxes:
            w = b.pow(m, prec + 16)
            hits = [k for k, gb in enumerate(grs.boxes) if not w.disjoint(gb)]
            if len(hits) != 1:
                break
            images.append(hits[0])
        else:
            return images, grs
        prec *= 2
    raise CertificationError("could not match roots of f with roots of g under X -> X^m")


def modulus_classes(a: AlgebraicNumber, max_prec: int = MAX_PREC) -> ModulusClasses:
    """Partition conjugates by modulus; structural ties first, then refinement.

    Raises Undecided when two moduli are neither structurally equal nor
    separated at ``max_prec`` bits.
    """
    cache_key = ("classes", max_prec)
    if cache_key in a._cache:
        return a._cache[cache_key]
    f = a.poly
    d = f.degree
    uf = _UnionFind(d)
    for i in range(d):
        uf.union(i, a.roots.mirror_index(i))
    circle = sorted(unit_circle_roots(a, max_prec))
    for i in circle[1:]:
        uf.union(circle[0], i)
    m, g = power_support_decompose(f)
    if m > 1:
        images, grs = _power_images(a, m, g, max_prec)
        by_image: dict[int, int] = {}
        for i, k in enumerate(images):
            if k in by_image:
                uf.union(i, by_image[k])
            by_image[k] = i
        for k, i in by_image.items():
            kk = grs.mirror_index(k)
            if kk in by_image:
                uf.union(i, by_image[kk])
    groups = uf.groups()
    prec = a.roots.precision
    while True:
        rs = a.refined_roots(prec)
        mods = []
        for grp in groups:
            mod = rs.boxes[grp[0]].abs2(prec + 16)
            for i in grp[1:]:
                mod = mod.intersect(rs.boxes[i].abs2(prec + 16))
            mods.append(mod)
        clash = None
        for x in range(len(groups)):
            for y in range(x + 1, len(groups)):
                if mods[x].overlaps(mods[y]):
                    clash = (groups[x][0], groups[y][0])
                    break
            if clash:
                break
        if clash is None:
            break
        if prec * 2 > max_prec:
            raise Undecided(clash[0], clash[1], prec)
        prec *= 2
    order = sorted(range(len(groups)), key=lambda x: mods[x].mid())
    classes = []
    alpha_class = -1
    for pos, x in enumerate(order):
        grp = sorted(groups[x])
        if a.alpha_index in grp:
            grp.remove(a.alpha_index)
            grp.append(a.alpha_index)
            alpha_class = pos
        classes.append(tuple(grp))
    result = ModulusClasses(tuple(classes), tuple(mods[x] for x in order), alpha_class, prec)
    a._cache[cache_key] = result
    return result


def unit_circle_roots(a: AlgebraicNumber, max_prec: int = MAX_PREC) -> frozenset[int]:
    """Indices of non-real roots proven to lie on the unit circle.

    Only reciprocal polynomials qualify: their roots are closed under
    z -> 1/z, so if the box of 1/z meets only the box of conj(z), then
    1/z = conj(z) and |z| = 1 exactly.
    """
    f = a.poly
    if not f.is_reciprocal():
        return frozenset()
    prec = a.roots.precision
    on_circle = set()
    pending = [i for i, b in enumerate(a.roots.boxes) if not b.is_real]
    while pending and prec <= max_prec:
        rs = a.refined_roots(prec)
        left = []
        for i in pending:
            b = rs.boxes[i]
            inv_mod2 = b.abs2(prec + 16).inv(prec + 16)
            inv = ComplexBox(b.re.mul(inv_mod2, prec + 16), (-b.im).mul(inv_mod2, prec + 16))
            hits = [k for k, ob in enumerate(rs.boxes) if not inv.disjoint(ob)]
            if len(hits) != 1:
                left.append(i)
            elif hits[0] == rs.mirror_index(i):
                on_circle.add(i)
        pending = left
        prec *= 2
    return frozenset(on_circle)
