import json
import subprocess
import sys

import pytest

from orthocell.cli import main, parse_pairs, parse_perm


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_enum_a3(capsys):
    code, out, _ = run(capsys, "enum", "--type", "A3", "--max-d", "2")
    data = json.loads(out)
    assert code == 0
    assert data["counts"] == {"0": 1, "1": 6, "2": 3}
    pairs = [s for s in data["sets"] if s["d"] == 2]
    assert len(pairs) == 3 and all(s["maximal"] for s in pairs)


def test_enum_b2_flags_comparability(capsys):
    code, out, _ = run(capsys, "enum", "--type", "B2", "--max-d", "2")
    pairs = {tuple(map(tuple, s["omega"])): s["comparable_pairs"]
             for s in json.loads(out)["sets"] if s["d"] == 2}
    assert pairs == {((1, 0), (1, 2)): [], ((0, 1), (1, 1)): [[1, 2]]}


def test_enum_a1_empty(capsys):
    code, out, _ = run(capsys, "enum", "--type", "A1", "--max-d", "0")
    assert code == 0
    assert [s["omega"] for s in json.loads(out)["sets"]] == [[]]


def test_enum_text_and_cap(capsys, monkeypatch):
    code, out, _ = run(capsys, "enum", "--type", "B2", "--format", "text")
    assert code == 0 and "comparable" in out
    code, _, err = run(capsys, "enum", "--type", "A3", "--max-d", "2", "--cap", "4")
    assert code == 2 and "more than 4" in err
    code, _, err = run(capsys, "enum", "--type", "E8", "--max-d", "2")
    assert code == 2 and "explicit cap" in err
    monkeypatch.setenv("ORTHOCELL_CAP", "4")
    code, _, _ = run(capsys, "enum", "--type", "A3", "--max-d", "2")
    assert code == 2


def test_bad_type_is_usage_error(capsys):
    code, _, err = run(capsys, "enum", "--type", "Q7")
    assert code == 2 and "error" in err
    with pytest.raises(SystemExit) as exc:
        main(["enum"])
    assert exc.value.code == 2


def test_verify_b2_bad_orderings(capsys):
    code, out, _ = run(capsys, "verify", "--type", "B2", "--include-bad-orderings")
    data = json.loads(out)
    assert code == 0 and data["verdict"] == "Pass"
    flagged = data["bad_orderings_flagged"]
    assert [b["seq"] for b in flagged] == [[[0, 1], [1, 1]]]
    assert flagged[0]["witness"]["root"] == [-1, 0]
    checked = sum(len(e["numberings"]) for e in data["entries"])
    assert checked == data["totals"]["numberings"]


def test_verify_composite(capsys):
    code, out, _ = run(capsys, "verify", "--type", "A2xA1", "--format", "text")
    assert code == 0 and out.startswith("A2xA1: Pass")


def test_verify_fail_exit_code(capsys, monkeypatch):
    from orthocell import verify
    from orthocell.cells import Verdict

    monkeypatch.setattr(verify, "verify_positivity_lemma", lambda rs, seq: Verdict(False, {"x": 1}))
    code, out, _ = run(capsys, "verify", "--type", "A2")
    assert code == 1 and json.loads(out)["verdict"] == "Fail"


def test_poset_outputs(capsys):
    cell = json.dumps({"type": "A3", "rep": "", "omega": [[1, 0, 0]]})
    code, out, _ = run(capsys, "poset", "--cell", cell)
    assert code == 0 and out.count("->") == 2 and out.count("label=") == 3
    code, out, _ = run(capsys, "poset", "--type", "A3", "--omega", "[[1,0,0],[0,0,1]]")
    assert out.count("->") == 12
    code, out, _ = run(capsys, "poset", "--type", "B3", "--omega", "[[1,0,0],[1,2,2],[0,0,1]]",
                       "--format", "json")
    assert code == 0 and len(json.loads(out)["nodes"]) == 27


def test_poset_from_file(capsys, tmp_path):
    path = tmp_path / "cell.json"
    path.write_text(json.dumps({"type": "B2", "rep": "s1", "omega": [[0, 1], [1, 1]]}))
    code, out, _ = run(capsys, "poset", "--cell", str(path), "--format", "json")
    assert code == 0 and len(json.loads(out)["nodes"]) == 9


@pytest.mark.parametrize("argv", [
    ["poset", "--cell", "{not json"],
    ["poset", "--cell", '{"type": "A3"}'],
    ["poset", "--type", "A3", "--omega", "[[1,0,0],[1,1,0]]"],
    ["poset", "--type", "A3"],
])
def test_poset_malformed(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err


def test_flag_type_a(capsys):
    code, out, _ = run(capsys, "flag", "--n", "4", "--pairs", "12,34", "--samples", "100")
    data = json.loads(out)
    assert code == 0 and data["verdict"] == "Pass"
    assert len(data["vertex_flags"]) == 4
    assert data["vertex_flags"][0]["matrix"][0] == ["1", "0", "0", "0"]


def test_flag_errors(capsys):
    code, _, err = run(capsys, "flag", "--n", "4", "--pairs", "12,13")
    assert code == 2 and "overlap" in err
    code, _, _ = run(capsys, "flag", "--n", "4", "--pairs", "12", "--seed", "-1")
    assert code == 2
    code, _, _ = run(capsys, "flag", "--n", "4", "--w", "1,1,2,3")
    assert code == 2
    code, _, _ = run(capsys, "flag")
    assert code == 2


def test_flag_config(capsys, tmp_path):
    cfg = {"n": 4, "w": [2, 1, 4, 3], "pairs": [[1, 3], [2, 4]], "samples": 10, "seed": 3}
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(cfg))
    code, out, _ = run(capsys, "flag", "--config", str(path))
    data = json.loads(out)
    assert code == 0 and data["w"] == [2, 1, 4, 3] and data["seed"] == 3


def test_flag_sp4(capsys):
    code, out, _ = run(capsys, "flag", "--sp4")
    data = json.loads(out)
    assert code == 0 and len(data["fixed_flags"]) == 8
    assert data["checks"]["short_family"]["verdict"] == "Pass"
    assert data["checks"]["long_family"]["verdict"] == "Pass"


def test_parsers():
    assert parse_pairs("12,34") == [[1, 2], [3, 4]]
    assert parse_pairs("1-2, 3-5") == [[1, 2], [3, 5]]
    assert parse_perm("2,1,3") == [2, 1, 3]
    assert parse_perm("2134") == [2, 1, 3, 4]


def test_module_entry_point_is_byte_deterministic():
    argv = [sys.executable, "-m", "orthocell", "flag", "--n", "4", "--pairs", "13,24",
            "--samples", "20", "--seed", "5"]
    a = subprocess.run(argv, capture_output=True, check=True).stdout
    b = subprocess.run(argv, capture_output=True, check=True).stdout
    assert a == b and json.loads(a)["verdict"] == "Pass"
