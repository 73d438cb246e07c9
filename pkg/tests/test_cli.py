import json

import pytest

from eqcohom.instance import check_condition_ii
from eqcohom.randomized import run_verification

from conftest import run_cli, write_json


def load_fixture(tmp_path, name):
    code, out, err = run_cli(["fixtures", name, "--out-dir", str(tmp_path)])
    assert code == 0, err
    return json.loads(out)["written"]


def test_fixtures_writes_files(tmp_path):
    written = load_fixture(tmp_path, "torus-3")
    assert len(written) == 1
    payload = json.loads((tmp_path / "torus-3.pgraph.json").read_text())
    assert payload["d"] == 3
    assert len(payload["edges"]) == 3


def test_fixtures_unknown_name():
    code, out, err = run_cli(["fixtures", "nonesuch"])
    assert code == 2
    assert "torus-d" in err and "shear" in err


def test_analyze_shear(tmp_path):
    load_fixture(tmp_path, "shear")
    code, out, err = run_cli(["analyze", str(tmp_path / "shear.instance.json")])
    assert code == 0, err
    report = json.loads(out)
    assert report["quotient_dim"] == 1
    assert report["md"] == 1
    assert report["condition_i"] and report["condition_ii"]
    assert report["iff_ok"] and report["bound_ok"]
    assert report["torsion"]["vacuous"]


def test_analyze_identity(tmp_path):
    load_fixture(tmp_path, "identity")
    code, out, _ = run_cli(["analyze", str(tmp_path / "identity.instance.json")])
    assert code == 0
    assert json.loads(out)["quotient_dim"] == 0


def test_analyze_malformed_json(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"dim_U": 2,,}')
    code, out, err = run_cli(["analyze", str(bad)])
    assert code == 2
    assert "line 1" in err


def test_analyze_invalid_instance(tmp_path):
    payload = {
        "dim_U": 2,
        "dim_W": 1,
        "pi": [["1", "0"]],
        "generators": [{"gU": [["0", "1"], ["1", "0"]], "gW": [["1"]]}],
    }
    path = write_json(tmp_path / "bad-instance.json", payload)
    code, out, err = run_cli(["analyze", path])
    assert code == 2
    report = json.loads(out)
    assert report["valid"] is False
    assert any("equivariance" in issue for issue in report["issues"])


def test_graph_c4(tmp_path):
    load_fixture(tmp_path, "c4-rotation")
    code, out, err = run_cli(
        [
            "graph",
            str(tmp_path / "c4.graph.json"),
            str(tmp_path / "c4-rotation.action.json"),
        ]
    )
    assert code == 0, err
    report = json.loads(out)
    assert report["quotient_dim"] == 0
    assert report["is_free"] and report["is_closed_in_components"]


def test_periodic_torus(tmp_path):
    load_fixture(tmp_path, "torus-2")
    wpath = write_json(tmp_path / "w.json", {"0": "5", "1": "-3"})
    code, out, err = run_cli(
        ["periodic", str(tmp_path / "torus-2.pgraph.json"), wpath, "--radius", "3"]
    )
    assert code == 0, err
    report = json.loads(out)
    assert report["decomposition"]["a"] == [["5"], ["-3"]]
    assert report["decomposition"]["f"] == ["0"]
    assert report["truncation"]["ok"]
    assert report["realized_quotient_dim"] == 2


def test_periodic_non_closed_action_exit_3(tmp_path):
    load_fixture(tmp_path, "square-index2")
    wpath = write_json(tmp_path / "w.json", {"0": "1", "1": "0"})
    code, out, err = run_cli(
        ["periodic", str(tmp_path / "square-index2.pgraph.json"), wpath]
    )
    assert code == 3
    assert "period lattice not full" in err


def test_periodic_rank_deficient_exit_3(tmp_path):
    g = {
        "vertices": 1,
        "edges": [{"id": 0, "o": 0, "t": 0}],
        "d": 2,
        "voltages": {"0": [2, 0]},
    }
    gpath = write_json(tmp_path / "halfline.pgraph.json", g)
    wpath = write_json(tmp_path / "w.json", {"0": "0"})
    code, out, err = run_cli(["periodic", gpath, wpath])
    assert code == 3
    assert "rank 1 of 2" in err


def test_verify_clean_run():
    code, out, err = run_cli(["verify", "--seed", "7", "--count", "40"])
    assert code == 0, err
    report = json.loads(out)
    assert report["ok"] is True
    assert report["checked"] == 40


def test_verify_count_zero():
    code, out, _ = run_cli(["verify", "--count", "0"])
    assert code == 0
    assert json.loads(out)["checked"] == 0


def test_verify_mutant_condition_ii_detected():
    # Invert the condition-(ii) check: the harness must catch the lie.
    result = run_verification(
        seed=7, count=60, cond_ii=lambda inst: not check_condition_ii(inst)
    )
    assert not result.ok
    assert any(v.kind == "iff" for v in result.violations)
    assert all(v.instance_json for v in result.violations)


def test_text_mode(tmp_path):
    load_fixture(tmp_path, "shear")
    code, out, _ = run_cli(
        ["--text", "analyze", str(tmp_path / "shear.instance.json")]
    )
    assert code == 0
    assert "quotient_dim: 1" in out


def test_reports_deterministic(tmp_path):
    load_fixture(tmp_path, "double-shear")
    args = ["analyze", str(tmp_path / "double-shear.instance.json")]
    outs = {run_cli(args)[1] for _ in range(2)}
    assert len(outs) == 1
