import io
import json
from pathlib import Path

import jsonschema
import pytest

from prodmachine.analysis import DeterminacyReport, IsomorphismReport
from prodmachine.cli import main
from prodmachine.schema import REPORT_SCHEMA

GRAMMARS = Path(__file__).resolve().parent.parent / "grammars"
G1, G2, TRIVIAL = (str(GRAMMARS / n) for n in ("g1.pg", "g2.pg", "trivial.pg"))


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def structured(*argv):
    code, out, _ = run(*argv, "--format", "structured")
    doc = json.loads(out)
    jsonschema.validate(doc, REPORT_SCHEMA)
    assert json.loads(json.dumps(doc)) == doc
    return code, doc


def test_validate():
    assert run("validate", G1) == (0, "ok\n", "")


def test_validate_reports_warning(tmp_path):
    f = tmp_path / "w.pg"
    f.write_text("initial: S\nterminal: a\nA -> a\n")
    code, out, _ = run("validate", str(f))
    assert code == 0 and "no production for initial symbol 'S'" in out


def test_transform_emit():
    code, out, _ = run("transform", G2, "--emit")
    assert code == 0
    assert out.splitlines()[-4:] == ["B C -> _N0", "_N0 -> z", "A -> _N1", "_N1 -> x"]
    assert not out.startswith("#")
    code, out, _ = run("transform", G2)
    assert out.startswith("# B C -> z  =>")


def test_transform_output_parses(tmp_path):
    _, out, _ = run("transform", G1, "--emit")
    f = tmp_path / "p1.pg"
    f.write_text(out)
    assert run("validate", str(f))[0] == 0
    assert run("generate", str(f))[1] == "wy\n"


def test_oracle():
    assert run("oracle", G1, "--relation", "full")[:2] == (0, "wy\nxz\n")
    assert run("oracle", G1, "--relation", "leftmost")[:2] == (0, "wy\n")
    # wBC: the shortest lhs (C) and the earliest start (BC) disagree
    assert run("oracle", G1, "--strict")[:2] == (0, "")


def test_generate():
    assert run("generate", G1, "--max-len", "4", "--max-depth", "20")[:2] == (0, "wy\n")
    assert run("generate", G1, "--extended")[:2] == (0, "wy\nxz\n")
    assert run("generate", G1, "--markov")[:2] == (0, "wy\n")


def test_recognize_g2():
    code, out, _ = run("recognize", G2, "xz")
    assert code == 1
    lines = out.splitlines()
    assert lines[0] == "not recognized: xz"
    assert lines[1] == "dual-leftmost derivation: xz -> Az -> ABC -> EC -> EF"
    assert run("recognize", G2, "xz", "--extended")[0] == 0


def test_recognize_accepts_spaced_symbols():
    assert run("recognize", G1, "w", "y")[0] == 0
    assert run("recognize", G1, "w y")[0] == 0


def test_recognize_bad_symbol():
    code, _, err = run("recognize", G1, "wq")
    assert code == 2 and "unknown symbol" in err


def test_compare():
    code, out, _ = run("compare", G2)
    assert code == 0
    assert "recognized           {}" in out


def test_isomorphism_and_determinacy():
    code, out, _ = run("isomorphism", G1, "--depth", "12")
    assert code == 0 and out.rstrip().endswith("verdict: pass")
    code, out, _ = run("determinacy", TRIVIAL)
    assert code == 0 and out.startswith("verdict: pass")
    assert run("isomorphism", TRIVIAL, "--no-prepare", "--depth", "2")[0] == 0


def test_isomorphism_negative(tmp_path):
    f = tmp_path / "dead.pg"
    f.write_text("initial: S\nterminal: t\nS -> A B\nB -> t\n")
    code, out, _ = run("isomorphism", str(f))
    assert code == 1 and "counterexample: At" in out


def test_determinacy_needs_normal_grammar():
    code, _, err = run("determinacy", G1, "--no-prepare")
    assert code == 2 and "normal" in err


def test_trace():
    code, out, _ = run("trace", TRIVIAL)
    lines = out.splitlines()
    assert code == 0 and len(lines) == 6
    assert lines[-1].endswith("T [] | M t [] | B []")
    code, out, _ = run("trace", TRIVIAL, "--sentence", "t")
    assert "B [S]" in out.splitlines()[-1]
    code, out, _ = run("trace", G1, "--limit", "3")
    assert len(out.splitlines()) == 4


def test_trace_unrecognized_sentence_still_traces():
    code, out, _ = run("trace", G2, "--sentence", "xz", "--limit", "50")
    assert code == 0 and len(out.splitlines()) > 2


def test_incomplete_is_surfaced():
    code, out, _ = run("oracle", G1, "--max-len", "2")
    assert code == 0
    assert out == "warning: enumeration incomplete (bound max_string_length tripped)\n"
    _, doc = structured("oracle", G1, "--max-len", "2")
    assert doc["complete"] is False and doc["warnings"]


@pytest.mark.parametrize(
    "argv",
    [
        ("validate", G1),
        ("transform", G2),
        ("oracle", G1, "--relation", "full"),
        ("generate", G1, "--extended"),
        ("recognize", G1, "xz"),
        ("recognize", G2, "xz"),
        ("compare", G1),
        ("isomorphism", G2),
        ("determinacy", G1),
        ("trace", G1),
        ("trace", G1, "--sentence", "wy"),
    ],
)
def test_structured_output_matches_schema(argv):
    structured(*argv)


def test_structured_reports_round_trip():
    _, doc = structured("isomorphism", G1)
    rep = IsomorphismReport.from_dict(doc["report"])
    assert rep.as_dict() == doc["report"] and rep.verdict
    _, doc = structured("determinacy", G2)
    assert DeterminacyReport.from_dict(doc["report"]).as_dict() == doc["report"]


def test_structured_recognize():
    code, doc = structured("recognize", G2, "xz")
    assert code == 1 and doc["recognized"] is False
    assert doc["dual_leftmost_layers"] == [["xz"], ["Az"], ["ABC"], ["EC"], ["EF"]]
    code, doc = structured("recognize", G1, "wy")
    assert doc["witness"][-1]["tapes"]["bottom"]["scanned"] == "S"


def test_output_is_deterministic():
    assert run("oracle", G1, "--relation", "full") == run("oracle", G1, "--relation", "full")


@pytest.mark.parametrize(
    "argv",
    [
        ("generate", G1, "--max-len", "0"),
        ("generate", G1, "--max-depth", "-3"),
        ("generate", G1, "--max-states", "x"),
        ("bogus", G1),
        (),
        ("recognize", G1),
    ],
)
def test_usage_errors(argv, capsys):
    # argparse writes its own message to the real stderr
    assert run(*argv)[0] == 2


def test_missing_file():
    code, _, err = run("validate", "/nonexistent/g.pg")
    assert code == 2 and "cannot read" in err


def test_invalid_grammar(tmp_path):
    f = tmp_path / "bad.pg"
    f.write_text("initial: S\nterminal: a\na S -> S\n")
    code, _, err = run("validate", str(f))
    assert code == 2 and "terminal 'a' on the left side" in err
