import json
from fractions import Fraction

import lpweights


def test_pruefer_values():
    u = lpweights.pruefer_weight(2)
    assert lpweights.fraction(u.value("1/2")) == Fraction(1, 4)
    lo, hi = lpweights.conv_interval(u, "0", "full")
    assert lo == hi == Fraction(15, 112)


def test_check_b():
    u = lpweights.auto_scale(lpweights.pruefer_weight(2))
    cert = lpweights.check_b(u, "G_4", "N=8")
    assert cert["verdict"] == "holds"
    assert cert["payload"]["points"] == 16


def test_domar_cli():
    code, out, _ = lpweights.run_cli(["domar", "--weight", "builtin:exp", "--x", "1", "--N", "3"])
    assert code == 0
    assert "11/6" in out


def test_provenance_round_trip():
    u = lpweights.rationals_weight()
    v = lpweights.from_provenance(json.dumps(u.provenance()))
    assert v.value("1/2") == u.value("1/2")


def test_suite_one():
    ok, detail = lpweights.run_suite(1)
    assert ok, detail
