import json
import os
from fractions import Fraction
from pathlib import Path

import pytest

import seshadri

SCENARIOS = Path(os.environ.get("SESHADRI_SCENARIO_DIR", Path(__file__).resolve().parents[2] / "scenarios"))


def test_registry():
    ids = [s["id"] for s in seshadri.list_scenarios()]
    assert len(ids) == 13
    assert "hirzebruch-case-1" in ids


def test_run_and_verify():
    r = seshadri.run("hirzebruch-case-2")
    assert r["passed"]
    assert r["lower"] == Fraction(1) and r["upper"] == Fraction(1)
    assert seshadri.verify(r["certificate"])["exit_code"] == 0

    cert = json.loads(r["certificate"])
    for sub in cert["evidence"]["cone"]["target"]["subcones"]:
        for m in sub["multipliers"]:
            if m["num"] != 0:
                m["num"] += 1
                break
        else:
            continue
        break
    report = seshadri.verify(json.dumps(cert))
    assert report["outcome"] == "mismatch"
    assert report["exit_code"] == 3


def test_levels_and_parameters():
    assert not seshadri.run("hirzebruch-case-1", level="3/2")["certified"]
    assert seshadri.run("hirzebruch-case-1", level=Fraction(1, 2))["certified"]
    assert seshadri.run("thm-4.1-small", params={"delta": "1/7"})["upper"] == Fraction(1, 8)
    assert seshadri.run("thm-4.2-reduction")["lower"] == Fraction(3, 2)
    with pytest.raises(seshadri.InputError):
        seshadri.run("hirzebruch-case-1", level="0.5")
    with pytest.raises(seshadri.InputError):
        seshadri.run("no-such-scenario")


def test_files():
    r = seshadri.run(str(SCENARIOS / "f3-split.toml"))
    assert r["passed"]
    with pytest.raises(seshadri.InputError, match=r"line \d+, column \d+"):
        seshadri.run(str(SCENARIOS / "bad-float.toml"))


def test_oracle_and_helpers():
    o = seshadri.oracle("hirzebruch-case-1", 30)
    assert o["min_ratio"] == 1 and o["argmin"] == "f"
    assert seshadri.hirzebruch_intersection(1, [2, 2], [1, 3]) == 6
    assert seshadri.hacon_epsilon([2, 1, 1]) == 1
    assert seshadri.hacon_epsilon([1], [3]) == Fraction(1, 3)
    with pytest.raises(seshadri.DomainError):
        seshadri.hacon_epsilon([1, 0])
