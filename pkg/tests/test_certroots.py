from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from fracpowers.certroots import (distinguished_root, isolate_roots, modulus_classes, refine,
                                  unit_circle_roots)
from fracpowers.errors import NoRootGreaterThanOne, NotSquarefree, ScreenFailure
from fracpowers.interval import ComplexBox, Interval
from fracpowers.intpoly import IntPolynomial, parse_poly

from oracles import CUBIC_B_ALPHA, PLASTIC, QUARTIC_ALPHA, SALEM4, close

CORPUS = ["2x-3", "x^2-2", "x^3-2", "x^2-x-1", "x^2-2x-1", "x^2-3x+1", "x^3-x-1",
          "x^3-x^2+2x-3", "x^4-x^2-1", "2x^2-4x+1", "x^4-2x^2-1", "x^6-2", "x^4-x^3-x^2-x+1"]


def mp_roots(f: IntPolynomial):
    with mpmath.workdps(60):
        return mpmath.polyroots([int(c) for c in reversed(f.coeffs)], maxsteps=400, extraprec=400)


def box_holds(b: ComplexBox, z) -> bool:
    eps = Fraction(1, 10 ** 50)
    re = Fraction(mpmath.nstr(mpmath.re(z), 58))
    im = Fraction(mpmath.nstr(mpmath.im(z), 58))
    return close(b.re, re, eps) and close(b.im, im, eps)


@pytest.mark.parametrize("text", CORPUS)
def test_boxes_hold_independent_roots(text):
    f = parse_poly(text)
    rs = isolate_roots(f, 64)
    assert len(rs) == f.degree
    for z in mp_roots(f):
        assert sum(box_holds(b, z) for b in rs.boxes) == 1


@pytest.mark.parametrize("text", CORPUS)
def test_boxes_disjoint_and_closed_under_conjugation(text):
    rs = isolate_roots(parse_poly(text), 64)
    for i, b in enumerate(rs.boxes):
        assert rs.boxes[rs.mirror_index(i)] == b.conj()
        for k in range(i + 1, len(rs)):
            assert b.disjoint(rs.boxes[k])


@pytest.mark.parametrize("text", CORPUS)
def test_vieta_sum_of_roots(text):
    f = parse_poly(text)
    rs = isolate_roots(f, 128)
    s_re, s_im = Interval(0), Interval(0)
    for b in rs.boxes:
        s_re, s_im = s_re + b.re, s_im + b.im
    target = Fraction(-f.coeffs[-2], f.leading)
    assert s_re.contains(target) and s_im.contains(0)


@pytest.mark.parametrize("text", ["x^3-x-1", "x^3-x^2+2x-3", "x^6-2"])
def test_refinement_nests(text):
    a = distinguished_root(parse_poly(text))
    coarse = a.refined_roots(64)
    fine = a.refined_roots(256)
    assert fine.precision >= 256
    for c, g in zip(coarse.boxes, fine.boxes):
        assert c.contains(g)
        assert g.width <= Fraction(2) ** (2 - 256)
    b = refine(a, 300)
    assert a.alpha.contains(b.alpha)


@settings(max_examples=25, deadline=None)
@given(st.integers(2, 40), st.integers(2, 4))
def test_pure_roots_nest(u, d):
    f = IntPolynomial((-u,) + (0,) * (d - 1) + (1,))
    if round(u ** (1 / d)) ** d == u:
        return
    a = distinguished_root(f)
    e1 = a.enclosure(100)
    e2 = a.enclosure(400)
    assert e1.contains(e2)
    assert e2.pow(d, 500).contains(u)


@pytest.mark.parametrize("text, value", [
    ("x^3-x-1", PLASTIC), ("x^3-x^2+2x-3", CUBIC_B_ALPHA),
    ("x^4-x^2-1", QUARTIC_ALPHA), ("x^4-x^3-x^2-x+1", SALEM4),
])
def test_distinguished_root_value(text, value):
    a = distinguished_root(parse_poly(text))
    assert close(a.enclosure(140), value)


def test_rational_alpha_is_exact_when_dyadic():
    a = distinguished_root(parse_poly("2x-3"))
    assert a.is_exact() and a.alpha.lower() == Fraction(3, 2)


@pytest.mark.parametrize("text, err", [
    ("x^2+1", NoRootGreaterThanOne),
    ("2x-1", NoRootGreaterThanOne),
    ("x^2-1", ScreenFailure),
    ("x^4-2x^2+1", NotSquarefree),
    ("x^3-x", ScreenFailure),
])
def test_distinguished_root_errors(text, err):
    with pytest.raises(err):
        distinguished_root(parse_poly(text))


def test_root_below_one_rejected():
    # roots of 3x^2 - 2 are +-0.816
    with pytest.raises(NoRootGreaterThanOne):
        distinguished_root(parse_poly("3x^2-2"))


def test_modulus_classes_structural_ties():
    mc = modulus_classes(distinguished_root(parse_poly("x^6-2")))
    assert len(mc.classes) == 1 and len(mc.top) == 6
    mc = modulus_classes(distinguished_root(parse_poly("x^4-2x^2-1")))
    assert [len(c) for c in mc.classes] == [2, 2]
    a = distinguished_root(parse_poly("x^3-x^2+2x-3"))
    mc = modulus_classes(a)
    assert mc.classes[0] == (a.alpha_index,)
    assert len(mc.above_alpha()) == 2


def test_unit_circle_roots():
    a = distinguished_root(parse_poly("x^4-x^3-x^2-x+1"))
    on = unit_circle_roots(a)
    assert len(on) == 2
    for i in on:
        assert a.refined_roots(128).boxes[i].abs2(160).contains(1)
    assert unit_circle_roots(distinguished_root(parse_poly("x^3-x-1"))) == frozenset()
    # reciprocal but with no root on the circle
    assert unit_circle_roots(distinguished_root(parse_poly("x^2-3x+1"))) == frozenset()
