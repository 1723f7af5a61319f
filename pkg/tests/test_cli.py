import io
import json

import pytest

from fusionlab.cli import EXIT_CAP, EXIT_FAIL, EXIT_OK, EXIT_USAGE, SCHEMA_VERSION, RunConfig, main
from fusionlab.errors import DomainError


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def run_json(*argv):
    code, text = run(*argv)
    return code, json.loads(text)


def test_roots():
    code, data = run_json("roots", "--type", "G", "--rank", "2")
    assert code == EXIT_OK
    assert data["schema_version"] == SCHEMA_VERSION
    assert len(data["root_system"]["positive_roots"]) == 6


def test_fusion_corrected_example():
    code, data = run_json("fusion", "--k", "1", "--n", "3")
    assert code == EXIT_OK and data["graded_dims"] == [4, 2, 2]


def test_fusion_params_and_character():
    code, data = run_json("fusion", "--weights", "2,1", "--params", "1/2,-3", "--emit-character")
    assert code == EXIT_OK and data["total_dim"] == 6
    assert sum(r["dim"] for r in data["weight_graded_dims"]) == 6
    assert data["params"] == ["1/2", "-3"]


def test_pbw_verify():
    code, data = run_json("pbw", "--k", "1", "--j", "1", "--n", "2", "--both", "--verify")
    assert code == EXIT_OK
    assert sorted(map(tuple, data["recursive"])) == sorted(map(tuple, data["inequality"]))
    assert data["basis"]["ok"] and data["equivalence"]["ok"]


def test_pbw_corrupted_fails():
    code, data = run_json("pbw", "--k", "1", "--n", "4", "--verify", "--carry-top", "-1")
    assert code == EXIT_FAIL
    assert data["basis"]["witness"]


def test_pbw_csv():
    code, text = run("pbw", "--k", "1", "--n", "1", "--csv")
    assert code == EXIT_OK
    assert text.splitlines() == ["exponents", "[0]", "[1]"]


def test_toroidal():
    code, data = run_json("toroidal", "--level", "1", "--c", "1", "--lambda0", "1", "--n", "2")
    assert code == EXIT_OK and data["ok"]
    assert data["left"] == data["right"] == {"0,0": 4, "0,1": 2, "1,0": 2}


def test_order_and_compare():
    code, data = run_json("order", "--type", "A", "--rank", "1", "--weight", "5", "--n", "2")
    assert code == EXIT_OK and data["unique_maximum_ok"]
    assert data["maximal"] == [[[2], [3]]]
    code, data = run_json("order", "--type", "A", "--rank", "1", "--compare", "3;0", "2;1")
    assert data["order"] == "LE"


def test_demazure_params():
    code, data = run_json("demazure-params", "--type", "A", "--rank", "1", "--level", "2",
                          "--weight", "5")
    assert code == EXIT_OK
    assert data["rows"][0]["p_beta"] == 3 and data["rows"][0]["m_beta"] == 1


def test_pretty_output():
    code, text = run("--format", "pretty", "fusion", "--k", "1", "--n", "2")
    assert code == EXIT_OK and "graded_dims: [3, 1]" in text


def test_usage_errors():
    assert run("fusion")[0] == EXIT_USAGE
    assert run("fusion", "--k", "1", "--n", "2", "--j", "2")[0] == EXIT_USAGE
    assert run("bogus")[0] == EXIT_USAGE
    assert run("roots", "--type", "E", "--rank", "6")[0] == EXIT_USAGE
    assert run("order", "--type", "A", "--rank", "1")[0] == EXIT_USAGE
    assert run("fusion", "--weights", "1,1", "--params", "1,1")[0] == EXIT_USAGE


def test_cap_exit():
    assert run("--dimension-cap", "8", "fusion", "--k", "1", "--n", "4")[0] == EXIT_CAP


def test_verify_all_subset():
    code, data = run_json("verify-all", "--only", "1,3")
    assert code == EXIT_OK
    assert [c["status"] for c in data["checks"]] == ["PASS", "PASS"]
    assert data["seed"] == 0


def test_verify_all_small_cap():
    code, data = run_json("--dimension-cap", "16", "verify-all", "--only", "2,6")
    statuses = {c["number"]: c["status"] for c in data["checks"]}
    assert statuses[2] == "SKIPPED" or statuses[2] == "PASS"
    assert code == EXIT_OK


def test_verify_all_corrupted():
    code, data = run_json("verify-all", "--only", "2", "--corrupt-carry-range")
    assert code == EXIT_FAIL
    assert data["checks"][0]["failures"]


@pytest.mark.parametrize("argv", [("fusion", "--k", "2", "--n", "2", "--j", "1"),
                                  ("toroidal", "--level", "1", "--c", "1", "--n", "2"),
                                  ("pbw", "--k", "2", "--n", "3", "--verify")])
def test_json_round_trip(argv):
    code, text = run(*argv)
    data = json.loads(text)
    assert json.loads(json.dumps(data)) == data
    # deterministic
    assert run(*argv)[1] == text


def test_run_config():
    assert RunConfig().params(3) == [0, 1, 2]
    ps = RunConfig(params_policy="random-rational", seed=3).params(3)
    assert len(set(ps)) == 3
    with pytest.raises(DomainError):
        RunConfig(output_format="xml")
