from fractions import Fraction

import pytest

from fracpowers.certroots import distinguished_root, modulus_classes
from fracpowers.classify import (boyd_decompose, classify, compute_C, is_pisot, n_alpha_contains,
                                 pisot_eta, qpu_check, smallest_h)
from fracpowers.errors import NotPisot
from fracpowers.interval import Interval
from fracpowers.intpoly import minpoly_of_power, parse_poly

from oracles import CBRT4, CUBIC_B_C, NONMONIC_C, PHI, PLASTIC_C, QUARTIC_C, SQRT2, close

CORPUS = ["2x-3", "x^2-2", "x^3-2", "x^2-x-1", "x^2-2x-1", "x^2-3x+1", "x^3-x-1",
          "x^3-x^2+2x-3", "x^4-x^2-1", "2x^2-4x+1", "x^4-2x^2-1", "x^6-2", "x^4-x^3-x^2-x+1"]


def alg(text):
    return distinguished_root(parse_poly(text))


@pytest.mark.parametrize("text, value", [
    ("x^3-2", CBRT4), ("x^2-2", SQRT2), ("x^2-x-1", PHI), ("x^3-x-1", PLASTIC_C),
    ("x^3-x^2+2x-3", CUBIC_B_C), ("x^4-x^2-1", QUARTIC_C), ("2x^2-4x+1", NONMONIC_C),
])
def test_compute_C(text, value):
    C = compute_C(alg(text), 128)
    assert close(C, value)
    assert C.width() < Fraction(2) ** -120


def test_compute_C_rational():
    assert compute_C(alg("2x-3")) == Interval(2)


@pytest.mark.parametrize("u, d", [(2, 2), (2, 3), (3, 2), (5, 3), (2, 6), (7, 4)])
def test_compute_C_pure_root_closed_form(u, d):
    # C(u^(1/d)) = u^((d-1)/d), i.e. C^d = u^(d-1)
    f = parse_poly(f"x^{d}-{u}")
    C = compute_C(alg(f.canonical()), 160)
    assert C.pow(d, 200).contains(u ** (d - 1))


@pytest.mark.parametrize("text", CORPUS)
def test_C_at_least_alpha_power(text):
    a = alg(text)
    C = compute_C(a)
    floor_bound = Interval(a.poly.leading).mul(a.enclosure(128).pow(a.degree - 1, 128), 128)
    if modulus_classes(a).above_alpha():
        assert C.certainly_gt(floor_bound)
    else:
        assert C.overlaps(floor_bound)


@pytest.mark.parametrize("text, m, g", [
    ("x^2-x-1", 1, "x^2-x-1"),
    ("x^4-2x^2-1", 2, "x^2-2x-1"),
    ("x^6-2", 6, "x-2"),
    ("x^4-x^2-1", 2, "x^2-x-1"),
])
def test_boyd(text, m, g):
    b = boyd_decompose(alg(text))
    assert (b.m, b.g) == (m, parse_poly(g))
    assert b.max_modulus_count == m and b.hypothesis
    assert b.g.substitute_power(b.m) == parse_poly(text)


def test_boyd_outside_hypothesis():
    # the top modulus class is a complex pair, so no real positive root has maximal modulus
    b = boyd_decompose(alg("x^3-x^2+2x-3"))
    assert not b.hypothesis
    assert b.max_modulus_count == 2 and b.m == 1


@pytest.mark.parametrize("text", CORPUS)
def test_boyd_consistent_on_corpus(text):
    b = boyd_decompose(alg(text))
    assert b.g.substitute_power(b.m) == parse_poly(text)
    assert parse_poly(text).degree % b.m == 0
    if b.hypothesis:
        assert b.max_modulus_count == b.m


@pytest.mark.parametrize("text, pisot, salem", [
    ("x^2-x-1", True, False), ("x^3-x-1", True, False), ("x^2-3x+1", True, False),
    ("x^4-x^3-x^2-x+1", False, True), ("x^10+x^9-x^7-x^6-x^5-x^4-x^3+x+1", False, True),
    ("x^3-2", False, False), ("2x^2-4x+1", False, False), ("x^3-x^2+2x-3", False, False),
    ("2x-3", False, False), ("x-3", True, False),
])
def test_is_pisot(text, pisot, salem):
    cert = is_pisot(alg(text))
    assert (cert.pisot, cert.salem_flag) == (pisot, salem)


@pytest.mark.parametrize("text, expected", [
    ("x^2-3x+1", (3, 1)), ("x^2-2x-1", (2, -1)), ("x^2-x-1", (1, -1)),
    ("x^2-x+1", None), ("x^2-2x-2", None), ("x^3-x-1", None), ("2x^2-4x+1", None),
])
def test_qpu_check(text, expected):
    assert qpu_check(parse_poly(text)) == expected


def test_qpu_excluded_pair():
    from fracpowers.intpoly import IntPolynomial
    assert qpu_check(IntPolynomial((1, -2, 1))) is None
    assert qpu_check(IntPolynomial((1, -1, 1))) is None


@pytest.mark.parametrize("text, h", [
    ("x^3-2", 3), ("x^4-x^2-1", 2), ("x^2-x-1", 1), ("x^3-x-1", None), ("x^2-2", 2),
    ("x^6-2", 6), ("x^4-2x^2-1", 2), ("2x-3", None), ("x-3", 1), ("2x^2-4x+1", None),
])
def test_smallest_h(text, h):
    assert smallest_h(alg(text)) == h


@pytest.mark.parametrize("text", CORPUS)
def test_smallest_h_minimal(text):
    a = alg(text)
    h = smallest_h(a)
    limit = h if h is not None else a.degree + 1
    for k in range(1, limit):
        if a.degree % k == 0:
            g = minpoly_of_power(a.poly, k)
            assert not (g.degree == 1 and g.is_monic()) and qpu_check(g) is None


def test_n_alpha():
    assert n_alpha_contains(3, 5) and not n_alpha_contains(3, 6)
    assert all(n_alpha_contains(None, n) for n in range(1, 50))
    assert not any(n_alpha_contains(1, n) for n in range(1, 50))
    with pytest.raises(ValueError):
        n_alpha_contains(2, 0)


@pytest.mark.parametrize("text, eta", [("x^2-x-1", 1), ("x^3-x-1", Fraction(1, 2)), ("x^2-3x+1", 1)])
def test_pisot_eta(text, eta):
    e = pisot_eta(alg(text), 128)
    assert e.contains(eta) and e.width() < Fraction(2) ** -100
    assert e.certainly_gt(0)


def test_pisot_eta_requires_pisot():
    with pytest.raises(NotPisot):
        pisot_eta(alg("x^3-2"))


def test_classify_golden_ratio():
    c = classify(parse_poly("x^2-x-1"))
    assert (c.d, c.pisot, c.qpu, c.h, c.boyd.m) == (2, True, (1, -1), 1, 1)
    assert close(c.C_alpha, PHI) and c.eta.contains(1)
    assert c.n_alpha_rule == "empty"


def test_classify_cube_root_two():
    c = classify(parse_poly("x^3-2"))
    assert (c.d, c.pisot, c.h, c.boyd.m) == (3, False, 3, 3)
    assert close(c.C_alpha, CBRT4)
    assert c.eta is None
    assert c.in_n_alpha(5) and not c.in_n_alpha(6)


def test_classify_plastic():
    c = classify(parse_poly("x^3-x-1"))
    assert (c.d, c.pisot, c.h, c.boyd.m) == (3, True, None, 1)
    assert close(c.C_alpha, PLASTIC_C)
    assert c.n_alpha_rule == "all n >= 1"


def test_classify_rational():
    c = classify(parse_poly("2x-3"))
    assert c.is_rational and not c.is_integer
    assert c.C_alpha == Interval(2)
    assert classify(parse_poly("x-5")).is_integer


@pytest.mark.parametrize("text", ["x^3-x-1", "x^4-x^2-1", "x^3-x^2+2x-3", "x^4-x^3-x^2-x+1"])
def test_classification_stable_under_precision(text):
    lo = classify(parse_poly(text), 64)
    hi = classify(parse_poly(text), 256)
    for field in ("d", "a_d", "is_rational", "is_integer", "pisot", "salem_flag", "qpu", "boyd",
                  "h", "modulus_order", "alpha_index", "n_alpha_rule"):
        assert getattr(lo, field) == getattr(hi, field)
    assert lo.C_alpha.contains(hi.C_alpha) or lo.C_alpha.overlaps(hi.C_alpha)


@pytest.mark.parametrize("text", ["x^2-3x+1", "x^2-2x-1", "x^2-x-1"])
def test_qpu_is_pisot_unit(text):
    a = alg(text)
    a_, b = qpu_check(a.poly)
    other = next(x for i, x in enumerate(a.refined_roots(128).boxes) if i != a.alpha_index)
    assert other.re.mul(a.enclosure(128), 128).contains(b)
    assert other.abs2(128).certainly_lt(1)
