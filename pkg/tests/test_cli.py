import csv
import io
import json
import subprocess
import sys

import pytest

from fracpowers.classify import classify
from fracpowers.cli import (SCAN_COLUMNS, classification_from_json, classification_to_json,
                            decimal_str, interval_from_json, interval_to_json, main)
from fracpowers.interval import Interval
from fracpowers.intpoly import parse_poly


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_classify_json():
    code, out, _ = run("classify", "x^2-x-1")
    assert code == 0
    doc = json.loads(out)
    assert doc["pisot"] is True and doc["h"] == 1
    assert doc["C_alpha"]["mid"].startswith("1.6180339887")
    assert doc["qpu"] == {"a": 1, "b": -1}
    assert doc["n_alpha_rule"] == "empty"


@pytest.mark.parametrize("text", ["x^2-x-1", "x^3-2", "2x-3", "x^3-x^2+2x-3", "x^4-x^3-x^2-x+1"])
def test_classification_round_trip(text):
    c = classify(parse_poly(text))
    doc = json.loads(json.dumps(classification_to_json(c)))
    assert classification_from_json(doc) == c


def test_interval_json_round_trip():
    iv = Interval.from_fraction(__import__("fractions").Fraction(1, 3), 90)
    assert interval_from_json(interval_to_json(iv)) == iv
    assert interval_to_json(None) is None


def test_decimal_str():
    from fractions import Fraction
    assert decimal_str(Fraction(1, 3)) == "0.3333333333333333333333333"
    assert decimal_str(Fraction(0)) == "0"
    assert decimal_str(Fraction(1, 10 ** 40)).endswith("e-40")


def test_powfrac():
    code, out, _ = run("powfrac", "x^2-2", "--n", "3")
    assert code == 0
    doc = json.loads(out)
    assert doc["A_n"] == 3
    assert doc["dist"]["mid"].startswith("0.1715728752538")
    assert doc["in_N_alpha"] is True


def test_verify_plastic():
    code, out, err = run("verify", "x^3-x-1", "--n-max", "500")
    assert code == 0
    assert "violations: 0" in err
    assert json.loads(out)["summary"]["violations"] == 0


def test_verify_csv():
    code, out, _ = run("verify", "2x-3", "--n-max", "20", "--format", "csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert rows[0]["status"] == "equality" and len(rows) == 20


def test_scan_csv_columns_and_determinism():
    code, out, _ = run("scan", "x^3-2", "--n-max", "40")
    assert code == 0
    reader = csv.reader(io.StringIO(out))
    header = next(reader)
    assert tuple(header) == SCAN_COLUMNS
    rows = list(reader)
    assert len(rows) == 40
    assert rows[2][4] == "true" and rows[2][5] == "false"   # n = 3
    assert len(rows[0][2].replace("0.", "").lstrip("0")) == 25
    assert run("scan", "x^3-2", "--n-max", "40")[1] == out


def test_scan_json():
    code, out, _ = run("scan", "-1,-1,1", "--n-min", "9", "--n-max", "10", "--format", "json")
    assert code == 0
    assert [r["A_n"] for r in json.loads(out)] == [76, 123]


def test_cvalue():
    code, out, _ = run("cvalue", "x^3-2", "--format", "csv")
    assert code == 0
    row = list(csv.DictReader(io.StringIO(out)))[0]
    assert row["C_alpha"].startswith("1.587401051968")


def test_nu_and_probe():
    code, out, err = run("nu", "x^2-2", "--n-min", "5", "--n-max", "60", "--odd")
    assert code == 0 and "nu_max" in err
    ns = [int(r["n"]) for r in csv.DictReader(io.StringIO(out))]
    assert ns == list(range(5, 61, 2))
    code, out, err = run("probe", "x^3-x^2+2x-3", "--n-max", "30")
    assert code == 0 and "decay_slope" in err
    assert all(r["variant"] == "Lambda" for r in csv.DictReader(io.StringIO(out)))


@pytest.mark.parametrize("argv, code", [
    (("classify", "x^^2"), 1),
    (("bogus",), 1),
    (("powfrac", "x^2-2"), 1),                       # missing --n
    (("scan", "x^2-2", "--n-min", "5", "--n-max", "2"), 1),
    (("powfrac", "x^2-2", "--n", "3", "--out-prec", "8"), 1),
    (("classify", "x^2+1"), 2),
    (("classify", "x^2-1"), 2),
    (("classify", "x^4-2x^2+1"), 2),
    (("probe", "x^2-x-1", "--n-max", "10"), 4),     # Lambda'_n = 1 exactly
    (("probe", "x^3-x-1", "--n-max", "3", "--conj-index", "9"), 1),
])
def test_exit_codes(argv, code):
    assert run(*argv)[0] == code


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "fracpowers", "powfrac", "2x-3", "--n", "4"],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0
    doc = json.loads(res.stdout)
    assert doc["exact"] == "81/16" and doc["dist"]["mid"] == "0.0625"
