from __future__ import annotations

import json

import pytest

from complexcf.cli import EXIT_FAIL, EXIT_INPUT, EXIT_LIMIT, EXIT_OK, EXIT_PRECISION, main


def call(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_expand_hurwitz(capsys):
    code, out, _ = call(capsys, "expand", "--poly", "1,0,2", "--ring", "G", "--alg", "hurwitz", "--steps", "10")
    d = json.loads(out)
    assert code == EXIT_OK
    assert [s["a"] for s in d["steps"][:3]] == ["i", "-2i", "2i"]
    assert d["period"] == {"n0": 1, "k": 2}
    assert d["config"]["alg"] == "hurwitz"


def test_expand_even_csv(capsys):
    code, out, _ = call(capsys, "expand", "--poly", "1,0,2", "--alg", "even", "--steps", "10", "--format", "csv")
    rows = out.splitlines()
    assert code == EXIT_OK and rows[1].split(",")[1] == "2i" and rows[3].split(",")[1] == "4i"


def test_expand_ball_reports_precision(capsys):
    code, out, _ = call(capsys, "expand", "--ball", "1.0+1.732050808i@1e-9", "--alg", "hurwitz", "--steps", "50",
                        "--format", "jsonl")
    lines = [json.loads(x) for x in out.splitlines()]
    assert lines[-1]["termination"] == "precision_exhausted"
    assert "period" not in lines[-1]
    assert code == EXIT_PRECISION


def test_expand_is_reproducible(capsys):
    args = ("expand", "--poly", "1,1+i,2", "--steps", "30")
    assert call(capsys, *args)[1] == call(capsys, *args)[1]


@pytest.mark.parametrize("argv", [
    ("expand", "--poly", "1,0,1"),
    ("expand", "--poly", "1,0,2", "--alg", "eisenstein"),
    ("expand", "--poly", "1,zz,2"),
    ("expand", "--poly", "1,0,2", "--steps", "0"),
    ("expand",),
])
def test_invalid_input_exit_code(capsys, argv):
    code, _, err = call(capsys, *argv)
    assert code == EXIT_INPUT and "complexcf:" in err


def test_limit_exit_code(capsys):
    assert call(capsys, "oracle", "--poly", "1,0,2", "--qmax", "300000")[0] == EXIT_LIMIT


def test_config_file_and_override(capsys, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"alg": "even", "steps": 5}))
    d = json.loads(call(capsys, "expand", "--config", str(cfg), "--poly", "1,0,2")[1])
    assert d["config"]["alg"] == "even" and len(d["steps"]) == 5
    d = json.loads(call(capsys, "expand", "--config", str(cfg), "--steps", "3", "--poly", "1,0,2")[1])
    assert len(d["steps"]) == 3
    cfg.write_text(json.dumps({"colour": "blue"}))
    assert call(capsys, "expand", "--config", str(cfg), "--poly", "1,0,2")[0] == EXIT_INPUT


def test_certify(capsys):
    d = json.loads(call(capsys, "certify", "--ring", "G", "--r2", "3")[1])
    assert d["verdict"] == "certified-bad"
    d = json.loads(call(capsys, "bad-circle", "--ring", "G", "--r2", "5/2")[1])
    assert d["verdict"] == "contains-K-point" and d["witness_pq"] == "(2+i)/(1+i)"
    d = json.loads(call(capsys, "certify", "--ring", "E", "--r2", "1847")[1])
    assert d["verdict"] == "certified-bad"
    d = json.loads(call(capsys, "certify", "--ring", "G", "--r2", "5/2", "--center", "(1+i)/3")[1])
    assert d["center"] == "(1+i)/3" and d["witness_check"] == "5/2"


def test_oracle_from_surd_file(capsys, tmp_path):
    from complexcf.arithmetic.surd import surd_from_poly
    from complexcf.rings import G

    f = tmp_path / "z.json"
    f.write_text(json.dumps(surd_from_poly(1, 0, 2, ring=G).to_json()))
    code, out, _ = call(capsys, "oracle", "--z", str(f), "--qmax", "4")
    rows = json.loads(out)["rows"]
    assert code == EXIT_OK and min(r["dist"] for r in rows) == pytest.approx(3 - 2 * 2**0.5)


def test_verify_commands(capsys):
    code, out, _ = call(capsys, "verify", "identities", "--alg", "hurwitz", "--corpus", "surds:10")
    assert code == EXIT_OK and json.loads(out)["passed"]
    code, out, _ = call(capsys, "verify", "monotone", "--alg", "even", "--corpus", "surds:10:seed=7")
    assert code == EXIT_OK
    code, out, _ = call(capsys, "verify", "geometry", "--check", "h-perturb", "--r", "0.35", "--mesh", "40")
    d = json.loads(out)
    assert code == EXIT_FAIL and d["violations"] and d["violations"][0]["witness"]


def test_analyze(capsys):
    d = json.loads(call(capsys, "analyze", "--poly", "1,0,2")[1])
    assert d["monotone"]["verdict"] == "strict" and d["orbit"]["cardinality"] == 2
    d = json.loads(call(capsys, "analyze", "--poly", "1,0,-3", "--form", "1,0,-3", "--steps", "40")[1])
    assert d["quotient_bound"]["holds"]


@pytest.mark.parametrize("fmt", ["json", "jsonl", "csv"])
def test_expand_full_budget_with_huge_convergents(capsys, fmt):
    code, out, _ = call(capsys, "expand", "--poly", "1,0,2", "--alg", "even", "--format", fmt)
    assert code == EXIT_OK and "499" in out
