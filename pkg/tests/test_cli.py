import json

import pytest

from twoquiver.cli import main
from twoquiver.constructions.fixtures import fixture_text
from twoquiver.fileformat import dumps, parse_document


@pytest.fixture
def files(tmp_path):
    def put(name, text=None):
        path = tmp_path / f"{name}.json"
        path.write_text(text if text is not None else fixture_text(name), encoding="utf-8")
        return str(path)
    return put


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_fixtures_list_and_dump(capsys):
    code, out, _ = run(capsys, "fixtures", "list")
    assert code == 0 and out.split() == ["CV", "M", "SA_A2", "CA_A2", "XQUIVER"]
    code, out, _ = run(capsys, "fixtures", "dump", "M")
    assert code == 0 and out == fixture_text("M")
    code, _, err = run(capsys, "fixtures", "dump", "nope")
    assert code == 2 and "unknown fixture" in err


def jordan_doc(a):
    return dumps({"kind": "quiver", "name": f"Jordan a={a}", "vertices": ["*"],
                  "one_edges": [{"id": "x", "src": "*", "tgt": "*"}], "stationary": {},
                  "one_rewrites": [{"lhs": ["x", "x"], "rhs": ["x"] * a}], "two_edges": []})


def test_check_licit_jordan(capsys, files):
    code, out, _ = run(capsys, "check-licit", "--input", files("jordan", jordan_doc(2)))
    assert code == 0 and "certified" in out


def test_check_licit_names_missing_pair(capsys, files):
    doc = json.loads(fixture_text("M"))
    doc["one_rewrites"] = [r for r in doc["one_rewrites"] if r["lhs"] != ["Q", "P"]]
    code, out, _ = run(capsys, "check-licit", "--input", files("m", dumps(doc)), "--report", "json")
    rep = json.loads(out)
    assert code == 1 and rep["status"] == "failed"
    assert rep["checks"][0]["witness"] == {"kind": "missing", "pair": ["Q", "P"]}


def test_build_m_emits_category(capsys, files, tmp_path):
    out_path = tmp_path / "m_cat.json"
    code, out, _ = run(capsys, "build", "--input", files("M"), "--output", str(out_path), "--report", "json")
    rep = json.loads(out)
    assert code == 0 and rep["status"] == "certified"
    assert rep["data"]["indecomposable 1-cells"] == 3
    cat = parse_document(out_path.read_text(encoding="utf-8"))
    assert sorted(cat.one_edges) == ["I", "P", "Q"]
    # the emitted document feeds back into gabriel
    code, out, _ = run(capsys, "gabriel", "--input", str(out_path), "--report", "json")
    assert code == 0 and json.loads(out)["data"]["two_edges"] == 5


def test_build_xquiver_refused(capsys, files):
    code, out, _ = run(capsys, "build", "--input", files("XQUIVER"), "--report", "json", "--max-degree", "3")
    rep = json.loads(out)
    assert code == 1
    check = next(c for c in rep["checks"] if c["name"] == "2-level acyclic")
    assert check["witness"] == {"cycle": ["α", "β"]}
    # paths keep growing: one per length in each direction around the cycle
    assert rep["data"]["2-paths by length"] == {"0": 2, "1": 2, "2": 2, "3": 2}


def test_build_mutated_m_fails(capsys, files):
    doc = json.loads(fixture_text("M"))
    doc["admissible_generators"] = doc["admissible_generators"][1:]
    code, out, _ = run(capsys, "build", "--input", files("m", dumps(doc)), "--report", "json")
    rep = json.loads(out)
    assert code == 1
    assert any(c["name"].startswith("drop:") and not c["ok"] for c in rep["checks"])


def test_gabriel_round_trip_output(capsys, files, tmp_path):
    out_path = tmp_path / "sa.json"
    code, out, _ = run(capsys, "gabriel", "--input", files("SA_A2"), "--output", str(out_path))
    assert code == 0
    again = parse_document(out_path.read_text(encoding="utf-8"))
    assert sorted(again.quiver.two_edges) == ["α_{e,x}", "α_{f,x}", "α_{x,e}", "α_{x,f}"]


def test_cells_and_fiat(capsys, files):
    code, out, _ = run(capsys, "cells", "--input", files("M"), "--report", "json")
    assert code == 0 and json.loads(out)["data"]["left"] == [["I"], ["P", "Q"]]
    code, out, _ = run(capsys, "fiat", "--input", files("M"), "--report", "json")
    rep = json.loads(out)
    assert code == 0
    assert rep["data"]["observations"] == ["cell {P, Q} has no ⋆-self-dual member"]


def test_construct_catalan_dump(capsys, tmp_path):
    out_path = tmp_path / "c4.json"
    code, _, _ = run(capsys, "construct", "catalan", "4", "--output", str(out_path))
    doc = json.loads(out_path.read_text(encoding="utf-8"))
    assert code == 0 and len(doc["elements"]) == 14 and len(doc["table"]) == 14 ** 2


def test_construct_monoid_from_dump(capsys, tmp_path):
    c3 = tmp_path / "c3.json"
    run(capsys, "construct", "catalan", "3", "--output", str(c3))
    code, out, _ = run(capsys, "construct", "monoid", "--input", str(c3))
    assert code == 0 and "certified" in out


def test_construct_projective(capsys):
    code, out, _ = run(capsys, "construct", "projective", "a2", "--report", "json")
    rep = json.loads(out)
    assert code == 0 and rep["data"]["relations"] == ["α_{e,x}∘α_{x,e} = α_{x,f}∘α_{f,x}"]


def test_input_errors_exit_two(capsys, files, tmp_path):
    code, _, err = run(capsys, "build", "--input", str(tmp_path / "absent.json"))
    assert code == 2 and "cannot read" in err
    code, _, err = run(capsys, "build", "--input", files("broken", '{\n  "vertices": [,]\n}'))
    assert code == 2 and "line 2" in err
    code, _, err = run(capsys, "fiat", "--input", files("SA_A2"))
    assert code == 2
    code, _, err = run(capsys, "construct", "catalan", "zero")
    assert code == 2
