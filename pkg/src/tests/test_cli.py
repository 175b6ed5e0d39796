import json

import pytest

from tests.testutils.paths import load_cli_document as load
from tests.testutils.paths import path_golden_documents, path_test_resources


def test_ring(run_cli):
    code, out = run_cli("ring", "--format", "json", document=load("ring_hirzebruch.json"))
    assert code == 0
    ring = json.loads(out)["ring"]
    assert ring["presentation"] == "Z[x,u1]/(x^2, u1^2 - x*u1)"
    assert ring["poincare"] == "1 + 2*t + t^2"
    assert ring["graded_ranks"] == [1, 2, 1]
    assert ring["basis"] == {"1": ["u1", "x"], "2": ["x*u1"]}


def test_ring_output_is_a_ring_description(run_cli):
    _, out = run_cli("ring", "--format", "json", document=load("ring_hirzebruch.json"))
    ring = json.loads(out)["ring"]
    code, again = run_cli("ring", "--format", "json", document={"query": "ring", "space": ring})
    assert code == 0
    assert json.loads(again)["ring"] == ring


def test_ring_from_input_file(run_cli):
    path = str(path_test_resources() / "cli" / "ring_hirzebruch.json")
    code, out = run_cli("ring", "--format", "text", "--input", path)
    assert code == 0
    assert "Presentation: Z[x,u1]/(x^2, u1^2 - x*u1)" in out


def test_multiprojective_ring(run_cli):
    document = {
        "space": {
            "kind": "multiproj",
            "base": 1,
            "bundles": [
                {"kind": "split_bundle", "twists": [0, 0]},
                {"kind": "chern_bundle", "rank": 2, "coeffs": [1]},
            ],
        }
    }
    code, out = run_cli("ring", "--format", "json", document=document)
    assert code == 0
    assert json.loads(out)["ring"]["presentation"] == "Z[x,u1,u2]/(x^2, u1^2, u2^2 - x*u2)"


@pytest.mark.parametrize(
    "space,presentation",
    [
        (
            {"kind": "tower", "base": 2, "levels": [{"twists": [1, 0]}]},
            "Z[x,u1]/(x^3, u1^2 - x*u1)",
        ),
        (
            {
                "kind": "tower",
                "base": 1,
                "levels": [
                    {"twists": [0, 1]},
                    {"twists": [[0, 0], [1, 0]]},
                    {"rank": 2, "chern": [[1, 0, 0]]},
                ],
            },
            "Z[x,u1,u2,u3]/(x^2, u1^2 - x*u1, u2^2 - u1*u2, u3^2 - u2*u3)",
        ),
    ],
)
def test_tower_presentations(run_cli, space, presentation):
    code, out = run_cli("ring", "--format", "json", document={"space": space})
    assert code == 0
    ring = json.loads(out)["ring"]
    assert ring["presentation"] == presentation
    assert ring["graded_ranks"][-1] == 1


def test_decide_pb(run_cli):
    code, out = run_cli("decide-pb", "--format", "json", document=load("decide_pb_iso.json"))
    assert code == 0
    verdict = json.loads(out)["verdict"]
    assert verdict["decision"] == "ISO"
    assert verdict["fidelity"] == "CHERN_LEVEL"
    assert verdict["reason"] == "CRITERION_SATISFIED"
    assert verdict["witnesses"]["L"] == -1
    assert verdict["witnesses"]["M"] == 1


def test_decide_pb_text(run_cli):
    code, out = run_cli("decide-pb", "--format", "text", document=load("decide_pb_iso.json"))
    assert code == 0
    assert "Decision: ISO" in out
    assert "Fidelity: CHERN_LEVEL" in out


def test_output_is_byte_identical_between_runs(run_cli):
    document = load("decide_pb_iso.json")
    first = run_cli("decide-pb", "--format", "json", document=document)
    second = run_cli("decide-pb", "--format", "json", document=document)
    assert first == second


def test_fidelity_note(run_cli):
    _, out = run_cli(
        "decide-pb", "--format", "json", "--fidelity-note", document=load("decide_pb_iso.json")
    )
    assert json.loads(out)["fidelity_note"].startswith("CHERN_LEVEL")
    _, out = run_cli("decide-pb", "--format", "json", document=load("decide_pb_iso.json"))
    assert "fidelity_note" not in json.loads(out)


@pytest.mark.parametrize(
    "command,document,decision,reason",
    [
        (
            "decide-pb-samebase",
            {"E": {"twists": [1, 2, 4], "base": 2}, "F": {"twists": [3, 0, 1], "base": 2}},
            "ISO",
            "CRITERION_SATISFIED",
        ),
        (
            "decide-pb-samebase",
            {"E": {"twists": [0, 1], "base": 2}, "F": {"twists": [0, 1], "base": 3}},
            "DECLINED",
            "HYPOTHESIS_VIOLATION",
        ),
        (
            "decide-mpb",
            {
                "E": {"base": 1, "bundles": [{"twists": [0, 1, 0]}]},
                "F": {"base": 2, "bundles": [{"twists": [0, 0]}]},
            },
            "NOT_ISO",
            "NOT_TWIST_TRIVIAL",
        ),
        (
            "cor43",
            {
                "E": {"kind": "chern_bundle", "base": 1, "rank": 3, "coeffs": [3]},
                "F": {"kind": "split_bundle", "base": 2, "twists": [0, 0]},
            },
            "CONSISTENT",
            "CRITERION_SATISFIED",
        ),
        (
            "cor43",
            {
                "E": {"kind": "chern_bundle", "base": 2, "rank": 2},
                "F": {"kind": "chern_bundle", "base": 1, "rank": 3},
            },
            "DECLINED",
            "HYPOTHESIS_VIOLATION",
        ),
    ],
)
def test_verdicts(run_cli, command, document, decision, reason):
    code, out = run_cli(command, "--format", "json", document=document)
    assert code == 0
    verdict = json.loads(out)["verdict"]
    assert verdict["decision"] == decision
    assert verdict["reason"] == reason


def test_decide_pb_split_bundles_on_the_same_base(run_cli):
    document = {
        "E": {"kind": "split_bundle", "base": 2, "twists": [1, 3]},
        "F": {"kind": "split_bundle", "base": 2, "twists": [0, 2]},
    }
    code, out = run_cli("decide-pb", "--format", "json", document=document)
    assert code == 0
    verdict = json.loads(out)["verdict"]
    assert verdict["decision"] == "ISO"
    assert verdict["fidelity"] == "SPLIT_EXACT"
    assert verdict["witnesses"]["shift"] == 1

    document["F"]["twists"] = [0, 3]
    _, out = run_cli("decide-pb", "--format", "json", document=document)
    verdict = json.loads(out)["verdict"]
    assert verdict["decision"] == "NOT_ISO"
    assert verdict["reason"] == "TWIST_MISMATCH"


def test_decide_pb_chern_bundles_on_the_same_base_are_declined(run_cli):
    document = {
        "E": {"kind": "chern_bundle", "base": 2, "rank": 2, "coeffs": [1]},
        "F": {"kind": "split_bundle", "base": 2, "twists": [0, 1]},
    }
    code, out = run_cli("decide-pb", "--format", "json", document=document)
    assert code == 0
    verdict = json.loads(out)["verdict"]
    assert verdict["decision"] == "DECLINED"
    assert verdict["fidelity"] == "CHERN_LEVEL"
    assert "split bundles" in verdict["reason_text"]


def test_decide_tower3_pullback_case(run_cli):
    code, out = run_cli(
        "decide-tower3", "--format", "json", document=load("decide_tower3_pullback.json")
    )
    assert code == 0
    verdict = json.loads(out)["verdict"]
    assert verdict["decision"] == "CONSISTENT"
    assert verdict["case"] == "(ii)"


def test_decide_tower3_same_base_is_declined(run_cli):
    code, out = run_cli(
        "decide-tower3", "--format", "json", document=load("decide_tower3_same_base.json")
    )
    assert code == 0
    verdict = json.loads(out)["verdict"]
    assert verdict["decision"] == "DECLINED"
    assert verdict["reason"] == "HYPOTHESIS_VIOLATION"
    assert verdict["fidelity"] == "CHERN_LEVEL"


def test_poincare(run_cli):
    code, out = run_cli(
        "poincare", "--format", "json", document={"polynomial": [1, 3, 5, 5, 3, 1]}
    )
    assert code == 0
    output = json.loads(out)
    assert output["poincare"] == "1 + 3*t + 5*t^2 + 5*t^3 + 3*t^4 + t^5"
    assert output["multiset"] == [1, 2, 2]


def test_poincare_not_a_product(run_cli):
    code, out = run_cli("poincare", "--format", "json", document={"polynomial": [1, 2]})
    assert code == 3
    assert json.loads(out)["exit_code"] == 3


def test_oracle(run_cli):
    code, out = run_cli("oracle", "--format", "json", document=load("oracle_change_of_basis.json"))
    assert code == 0
    search = json.loads(out)["search"]
    assert search["found"]
    assert search["matrix"] == [[1, 0], [-1, 1]]
    assert search["verified"]
    assert search["matrices_tried"] == 2
    assert not search["caveat"]


def test_oracle_bound_flag(run_cli):
    document = load("oracle_not_isomorphic.json")
    code, out = run_cli("oracle", "--format", "json", "--bound", "1", document=document)
    assert code == 0
    search = json.loads(out)["search"]
    assert not search["found"]
    assert search["bound"] == 1
    assert search["caveat"]
    _, text = run_cli("oracle", "--format", "text", "--bound", "1", document=document)
    assert "does not prove" in text


@pytest.mark.parametrize(
    "argv",
    [
        ["frobnicate"],
        ["ring", "--format", "yaml"],
        ["ring", "--bound", "2"],
        ["oracle", "--bound", "0"],
        ["ring", "--input", "/nonexistent/input.json"],
    ],
)
def test_usage_errors(run_cli, argv):
    code, _ = run_cli(*argv, document={})
    assert code == 2


def test_query_of_another_subcommand(run_cli):
    code, _ = run_cli("ring", document=load("decide_pb_iso.json"))
    assert code == 2


def test_invalid_json(run_cli):
    code, out = run_cli("ring", "--format", "json", document='{"space": ')
    assert code == 3
    assert "line 1" in json.loads(out)["error"]


def test_schema_violation_names_the_field(run_cli):
    document = {"E": {"kind": "chern_bundle", "base": 1, "rank": 1}}
    code, out = run_cli("decide-pb", "--format", "json", document=document)
    assert code == 3
    error = json.loads(out)["error"]
    assert "E.chern_bundle.rank" in error
    assert "F" in error


def test_chern_data_of_the_wrong_length(run_cli):
    document = {
        "space": {"kind": "tower", "base": 2, "levels": [{"rank": 2, "chern": [1, 1, 1]}]}
    }
    code, out = run_cli("ring", "--format", "json", document=document)
    assert code == 3
    assert "space.levels.0.chern" in json.loads(out)["error"]


def _assert_contains(actual, expected, path="output"):
    """Every key of `expected` is in `actual` with the same value, recursively for objects."""
    if isinstance(expected, dict):
        assert isinstance(actual, dict), path
        for key, value in expected.items():
            assert key in actual, f"{path}.{key} is missing"
            _assert_contains(actual[key], value, f"{path}.{key}")
    else:
        assert actual == expected, f"{path}: {actual!r} != {expected!r}"


GOLDEN_DOCUMENTS = sorted(
    path.name.removesuffix(".input.json") for path in path_golden_documents().glob("*.input.json")
)


@pytest.mark.parametrize("name", GOLDEN_DOCUMENTS)
def test_golden_documents(run_cli, name):
    document = load(f"golden/{name}.input.json")
    expected = load(f"golden/{name}.expected.json")
    code, out = run_cli(document["query"], "--format", "json", document=document)
    assert code == expected["exit_code"]
    _assert_contains(json.loads(out), expected["output"])
    assert run_cli(document["query"], "--format", "json", document=document) == (code, out)
