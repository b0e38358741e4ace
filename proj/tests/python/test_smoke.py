"""End-to-end smoke tests for the Python bindings and the CLI binary."""

import json
import os
import subprocess
from fractions import Fraction

import pytest

malsched = pytest.importorskip("malsched")

HAND_INSTANCE = {
    "processors": "1",
    "sets": [
        {"id": "S1", "jobs": [{"id": "J11", "phases": [{"kind": "par", "work": "1"}]}]},
        {
            "id": "S2",
            "jobs": [
                {"id": "J21", "phases": [{"kind": "seq", "work": "1"}]},
                {"id": "J22", "phases": [{"kind": "par", "work": "1"}]},
            ],
        },
    ],
}


def test_example_instance_shape_and_makespan():
    inst = malsched.example_instance(3)
    assert sum(len(s["jobs"]) for s in inst["sets"]) == 27
    trace = malsched.simulate(inst, "equi")
    assert trace["metrics"]["makespan"] == "4"
    assert malsched.par_first(inst)["metrics"]["makespan"] == "2"


def test_ratio_report_example():
    rep = malsched.ratio_report(malsched.example_instance(3), "equi", "makespan")
    assert Fraction(rep["achieved"]) == 4
    assert Fraction(rep["opt_upper"]) == 2
    assert Fraction(rep["ratio_lower"]) == 2
    assert malsched.fraction(rep["opt_lower"]) == Fraction(40, 27)


def test_hand_instance_setflowtime_and_chain():
    trace = malsched.simulate(HAND_INSTANCE, "equi-equi")
    assert trace["metrics"]["setflowtime"] == "17/4"
    rep = malsched.chain_check(HAND_INSTANCE, "1/2")
    assert rep["l1"] and rep["l2_event_identical"] and rep["l3"] and rep["l4"]
    assert rep["flow_equi_j"] == "17/4"
    assert rep["flow_equi_jprime"] == "9/2"


def test_reduction_round_trip():
    inst = malsched.random_mixed_instance(7)
    trace_a = malsched.simulate(inst, "equi")
    trace_o = malsched.serial_reference(inst)
    reduced, report = malsched.reduce_to_parseq(inst, trace_a, trace_o)
    assert report["preserved_schedule"] and report["reference_valid"]
    assert all(ph["kind"] in ("par", "seq")
               for s in reduced["sets"] for j in s["jobs"] for ph in j["phases"])


def test_proof_bound_check():
    jobs = [
        {"id": f"J{i}", "phases": [{"kind": "par", "work": "1"},
                                   {"kind": "seq", "work": "1/2"}]}
        for i in range(1, 4)
    ]
    inst = {"processors": "1", "sets": [{"id": "S1", "jobs": jobs}]}
    trace = malsched.simulate(inst, "equi")
    rep = malsched.proof_bound_check(inst, trace, malsched.alpha_for(3))
    assert rep["measures_ok"] and rep["abar_ok"] and rep["a_ok_discrete"]
    assert rep["combined_ok"]
    total = Fraction(rep["a_measure"]) + Fraction(rep["abar_measure"])
    assert total == Fraction(rep["makespan"])


def test_seq_multiplier_exact_corner():
    # At n = 2, alpha = 1/2 the exact multiplier needs two halvings because
    # (1/2) * 2 = 1 is not yet below 1.
    assert malsched.seq_multiplier(2, "1/2") == 2
    assert malsched.seq_multiplier(8, "1/2") == 4


def test_invalid_instance_raises_value_error():
    with pytest.raises(ValueError):
        malsched.validate_instance("{not json")
    with pytest.raises(ValueError):
        malsched.validate_instance({"processors": "1", "sets": "nope"})


def test_cli_round_trip(tmp_path):
    cli = os.environ.get("MALSCHED_CLI")
    if not cli or not os.path.exists(cli):
        pytest.skip("MALSCHED_CLI does not point to the built binary")
    inst_path = tmp_path / "example.json"
    subprocess.run(
        [cli, "adversary", "--mode", "example", "--ell", "2", "--out", str(inst_path)],
        check=True, capture_output=True,
    )
    out = subprocess.run(
        [cli, "simulate", "--instance", str(inst_path)],
        check=True, capture_output=True, text=True,
    )
    payload = json.loads(out.stdout)
    assert payload["metrics"]["makespan"] == "3"
    assert payload["scheduler"] == "equi"
