import json

import pytest

from gptv.cli import main
from gptv.kripke import load_model
from gptv.pts import load_pts, pts_forces
from gptv.formula import parse_formula


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_prove_valid(capsys):
    code, out, _ = run(capsys, "prove", "p -> p")
    assert code == 0 and out.startswith("Valid")


def test_prove_refuted_with_witnesses(capsys, tmp_path):
    code, out, _ = run(capsys, "prove", "p | ~p", "--witness-dir", str(tmp_path))
    assert code == 1
    assert "Kripke countermodel (2 worlds)" in out
    m = load_model(json.loads((tmp_path / "countermodel.json").read_text()))
    assert len(m) == 2
    pts = load_pts(json.loads((tmp_path / "witness_pts.json").read_text()))
    assert not pts_forces(pts, pts.index_of("S_w0"), parse_formula("p | ~p"))
    assert str(tmp_path / "witness_pts.json") in out


def test_prove_json(capsys):
    code, out, _ = run(capsys, "prove", "p | ~p", "--format", "json")
    doc = json.loads(out)
    assert code == 1 and doc["verdict"] == "refuted" and doc["member"] == "S_w0"


def test_prove_unknown(capsys):
    code, out, _ = run(capsys, "prove", "(p -> q) | (q -> p)", "--max-worlds", "2")
    assert code == 2 and out.startswith("Unknown")


def test_prove_parse_error(capsys):
    code, _, err = run(capsys, "prove", "p -> (")
    assert code == 64 and "error" in err and "^" in err


def test_usage_error(capsys):
    assert run(capsys, "frobnicate")[0] == 64
    assert run(capsys, "--help")[0] == 0


def test_translate_example(capsys, samples, tmp_path):
    out_file = tmp_path / "pts.json"
    code, out, _ = run(capsys, "translate", str(samples / "layered_model.json"), str(out_file))
    assert code == 0
    assert "into 4 member systems" in out
    assert out.count("PASS") == 4 and "FAIL" not in out
    assert len(load_pts(json.loads(out_file.read_text()))) == 4


def test_translate_single_world_json(capsys, samples):
    code, out, _ = run(capsys, "translate", str(samples / "single_world.json"), "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["report"]["ok"] and list(doc["pts"]["systems"]) == ["S_w"]


def test_translate_cyclic_order(capsys, samples):
    code, _, err = run(capsys, "translate", str(samples / "cyclic.json"))
    assert code == 65
    assert "cyclic.json:4" in err and "antisymmetr" in err


def test_translate_missing_and_broken_files(capsys, tmp_path):
    assert run(capsys, "translate", str(tmp_path / "nope.json"))[0] == 65
    bad = tmp_path / "bad.json"
    bad.write_text("{\n  \"worlds\": [\n")
    code, _, err = run(capsys, "translate", str(bad))
    assert code == 65 and "bad.json:" in err


def test_eval_model_and_pts(capsys, samples, tmp_path):
    chain = str(samples / "two_chain.json")
    code, out, _ = run(capsys, "eval", chain, "w0", "~~p")
    assert code == 0 and "w0 forces" in out
    assert run(capsys, "eval", chain, "w0", "p | ~p")[0] == 1
    pts_file = tmp_path / "pts.json"
    run(capsys, "translate", chain, str(pts_file))
    code, out, _ = run(capsys, "eval", str(pts_file), "S_w0", "~~p")
    assert code == 0 and "S_w0 forces" in out


def test_eval_errors(capsys, samples, tmp_path):
    chain = str(samples / "two_chain.json")
    code, _, err = run(capsys, "eval", chain, "w9", "p")
    assert code == 65 and "w9" in err
    assert run(capsys, "eval", chain, "w0", "@w0")[0] == 64
    pts_file = tmp_path / "pts.json"
    run(capsys, "translate", chain, str(pts_file))
    assert run(capsys, "eval", str(pts_file), "S_w9", "p")[0] == 65
    assert run(capsys, "eval", str(pts_file), "S_w0", "q")[0] == 65


def test_search(capsys):
    code, out, _ = run(capsys, "search", "p | ~p")
    assert code == 1 and "2 worlds" in out
    code, out, _ = run(capsys, "search", "p -> p", "--max-worlds", "3", "--format", "json")
    assert code == 0 and json.loads(out)["countermodel"] is None
    assert run(capsys, "search", "p", "--max-worlds", "40")[0] == 65


def test_goldfarb(capsys, samples, tmp_path):
    out_file = tmp_path / "g.json"
    code, out, _ = run(capsys, "goldfarb", str(samples / "empty_generator.json"), "-o", str(out_file))
    assert code == 0 and "wrote 4 member systems" in out
    assert len(load_pts(json.loads(out_file.read_text()))) == 4
    assert run(capsys, "goldfarb", str(samples / "empty_generator.json"),
               "--member-cap", "2")[0] == 65


@pytest.mark.parametrize("fmt", ["text", "json"])
def test_selftest(capsys, fmt):
    code, out, _ = run(capsys, "selftest", "--trials", "50", "--format", fmt)
    assert code == 0
    if fmt == "json":
        assert json.loads(out)["ok"] is True
    else:
        assert out.rstrip().endswith("all checks passed")


def test_selftest_zero_trials(capsys):
    code, out, _ = run(capsys, "selftest", "--trials", "0")
    assert code == 0 and "all checks passed" in out


def test_selftest_corrupted(capsys):
    code, out, _ = run(capsys, "selftest", "--trials", "200", "--drop-labels")
    assert code == 1
    assert "FAIL distinct worlds give distinct systems" in out
