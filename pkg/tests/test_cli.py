import json
import subprocess
import sys

import pytest

import cyclowed.cli as cli
from cyclowed.absolute import FinSuppSeq, AbsoluteTuple, absolute_apply, composite_apply
from cyclowed.cli import main, run


def run_json(capsys, *argv):
    code = main([*argv, "--json"])
    out = json.loads(capsys.readouterr().out)
    return code, out


def test_json_envelope(capsys):
    code, doc = run_json(capsys, "index", "--m", "1")
    assert code == 0
    assert set(doc) == {"command", "status", "payload", "elapsed_ms"}
    assert doc["status"] == "ok" and doc["command"][0] == "index"
    assert doc["payload"]["index"] == 1
    assert doc["elapsed_ms"] >= 0


def test_eldiv_dedekind(capsys):
    code, doc = run_json(capsys, "eldiv", "dedekind", "--p", "3", "--n", "2", "--oracle")
    assert code == 0
    pl = doc["payload"]
    assert pl["t-valuations"] == [0, 1, 4, 5, 8, 9] == pl["oracle"]
    assert pl["agree"] and pl["determinant_valuation"] == 27


def test_eldiv_wedderburn_and_absolute(capsys):
    _, doc = run_json(capsys, "eldiv", "wedderburn", "--p", "3", "--n", "2", "--oracle")
    assert doc["payload"]["determinant_valuation"] == 54 and doc["payload"]["agree"]
    _, doc = run_json(capsys, "eldiv", "absolute", "--p", "2", "--n", "3", "--oracle")
    assert doc["payload"]["divisors"] == [1, 1, 1, 1, 2, 2, 4, 8]
    assert doc["payload"]["product"] == doc["payload"]["index"] == 128


def test_oracle_disagreement_exits_one(capsys, monkeypatch):
    monkeypatch.setattr(cli, "dedekind_eldiv_oracle", lambda p, n: [0] * 6)
    code, doc = run_json(capsys, "eldiv", "dedekind", "--p", "3", "--n", "2", "--oracle")
    assert code == 1 and doc["status"] == "violation" and not doc["payload"]["agree"]


def test_radical_series_text(capsys):
    assert main(["radical-series", "--p", "3", "--n", "4", "--max-i", "9"]) == 0
    assert capsys.readouterr().out.strip() == "1,5,15,31,50,66,76,80,81,81"
    assert main(["radical-series", "--p", "3", "--n", "2", "--max-i", "6", "--lambda"]) == 0
    assert capsys.readouterr().out.strip() == "1,2,3,4,5,6,6"


def test_ties_absolute_text_and_json(capsys):
    assert main(["ties", "absolute", "--p", "3", "--n", "2"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[-1] == "x_{0,0} ≡_9 3(x_{2,2} + x_{2,5}) + (x_{1,0} + x_{1,1})"
    _, doc = run_json(capsys, "ties", "absolute", "--p", "3", "--n", "2")
    assert doc["payload"]["rendered"] == lines
    assert len(doc["payload"]["system"]["congruences"]) == 3


@pytest.mark.parametrize("argv", [["ties", "dedekind", "--p", "3", "--n", "2"], ["ties", "wedderburn", "--m", "6"],
                                  ["ties", "w1", "--p", "2", "--n", "2"]])
def test_ties_other_kinds(capsys, argv):
    code, doc = run_json(capsys, *argv)
    assert code == 0 and doc["payload"]["system"]["order"]


@pytest.mark.parametrize("kind", ["dedekind", "wedderburn", "w1", "w2"])
def test_basis(capsys, kind):
    code, doc = run_json(capsys, "basis", kind, "--p", "3", "--n", "2")
    assert code == 0
    rows = doc["payload"]["rows"]
    assert len(rows) == (6 if kind == "dedekind" else 9)


def test_hochschild_table(capsys):
    code, doc = run_json(capsys, "hochschild", "--p", "3", "--n", "2", "--twist", "1", "--max-degree", "3")
    assert code == 0
    assert doc["payload"]["table"] == [{"twist": 1, "degrees": ["T", "T/t^9T", "0", "T/t^9T"]}]
    _, doc = run_json(capsys, "hochschild", "--p", "3", "--n", "1", "--cohomology")
    assert [r["twist"] for r in doc["payload"]["table"]] == [1, 2]


def test_index_and_discriminant(capsys):
    _, doc = run_json(capsys, "index", "--m", "12")
    assert doc["payload"]["index"] == 41472 and doc["payload"]["factored"] == "2^9 * 3^4"
    _, doc = run_json(capsys, "discriminant", "--m", "9")
    assert doc["payload"]["discriminant"] == 3**9 and doc["payload"]["consistency"]


def test_verify_seed_reproducible(capsys):
    a = run_json(capsys, "verify", "--suite", "toperators", "--trials", "3", "--seed", "4")[1]["payload"]
    b = run_json(capsys, "verify", "--suite", "toperators", "--trials", "3", "--seed", "4")[1]["payload"]
    assert a == b and all(s["ok"] for s in a["suites"])


def test_experiment(capsys):
    code, doc = run_json(capsys, "experiment", "w2-subring", "--p", "2", "--n", "2")
    assert code == 0 and doc["payload"]["closed_on_sample"]


# ---- check ------------------------------------------------------------------------------


def test_check_absolute_member_and_violation(tmp_path, capsys):
    good = tmp_path / "good.json"
    good.write_text(absolute_apply(3, 2, [1, 2, 0, 0, 0, 0, 0, 0, 1]).dumps())
    code, doc = run_json(capsys, "check", "absolute", "--input", str(good), "--oracle")
    assert code == 0 and doc["payload"]["member"] and doc["payload"]["agree"]

    bad = tmp_path / "bad.json"
    bad.write_text(AbsoluteTuple(3, 1, (FinSuppSeq({0: 1}), FinSuppSeq())).dumps())
    code, doc = run_json(capsys, "check", "absolute", "--input", str(bad))
    assert code == 1 and doc["status"] == "violation"
    assert doc["payload"]["violations"][0]["modulus"] == 3
    assert main(["check", "absolute", "--input", str(bad)]) == 1
    assert "violated: l=1 j=0" in capsys.readouterr().out


def test_check_from_stdin(monkeypatch, capsys):
    import io

    monkeypatch.setattr(sys, "stdin", io.StringIO(absolute_apply(2, 1, [1, 1]).dumps()))
    assert main(["check", "absolute", "--input", "-"]) == 0
    assert capsys.readouterr().out.startswith("member: True")


def test_check_composite(tmp_path, capsys):
    x = [0] * 12
    x[5] = 1
    f = tmp_path / "c.json"
    f.write_text(json.dumps(composite_apply(12, x).to_json()))
    code, doc = run_json(capsys, "check", "composite", "--m", "12", "--input", str(f), "--oracle")
    assert code == 0 and len(doc["payload"]["checks"]) == 7 and doc["payload"]["agree"]
    code, _ = run_json(capsys, "check", "composite", "--m", "6", "--input", str(f))
    assert code == 2


def test_malformed_json_is_usage_error(tmp_path, capsys):
    f = tmp_path / "x.json"
    f.write_text("{not json")
    assert main(["check", "absolute", "--input", str(f)]) == 2
    assert capsys.readouterr().err
    f.write_text(json.dumps({"p": 3}))
    assert main(["check", "absolute", "--input", str(f)]) == 2
    assert main(["check", "absolute", "--input", str(tmp_path / "missing.json")]) == 2


# ---- errors and ceilings -------------------------------------------------------------------


@pytest.mark.parametrize("argv", [
    ["frobnicate"],
    [],
    ["eldiv", "dedekind", "--p", "4", "--n", "1"],
    ["eldiv", "dedekind", "--p", "3"],
    ["radical-series", "--p", "3", "--n", "2", "--max-i", "-1"],
    ["hochschild", "--p", "3", "--n", "2", "--twist", "3"],
    ["verify", "--trials", "0"],
])
def test_usage_errors(argv):
    res = run(argv)
    assert res.status == "error" and res.exit_code == 2


def test_prime_message():
    assert "not prime" in run(["eldiv", "dedekind", "--p", "4", "--n", "1"]).payload["error"]


def test_ceilings_and_override(monkeypatch):
    monkeypatch.delenv("CYCLOWED_MAX_DEGREE", raising=False)
    assert run(["eldiv", "absolute", "--p", "2", "--n", "7"]).exit_code == 0
    res = run(["eldiv", "absolute", "--p", "3", "--n", "5"])
    assert res.exit_code == 2 and "ceiling" in res.payload["error"]
    assert run(["index", "--m", "65"]).exit_code == 2
    monkeypatch.setenv("CYCLOWED_MAX_DEGREE", "300")
    assert run(["eldiv", "absolute", "--p", "3", "--n", "5"]).exit_code == 0
    assert run(["index", "--m", "65"]).exit_code == 0
    monkeypatch.setenv("CYCLOWED_MAX_DEGREE", "lots")
    assert run(["index", "--m", "5"]).exit_code == 2


def test_internal_assertion_exits_three(monkeypatch, capsys):
    def boom(*a, **k):
        raise AssertionError("broken invariant")

    monkeypatch.setattr(cli, "w1_radical_layer_dim", boom)
    assert main(["radical-series", "--p", "3", "--n", "2"]) == 3
    assert "internal assertion" in capsys.readouterr().err


def test_help_and_version(capsys):
    assert main(["--version"]) == 0
    assert "cyclowed" in capsys.readouterr().out
    assert main(["--help"]) == 0


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "cyclowed", "eldiv", "dedekind", "--p", "3", "--n", "2"],
                         capture_output=True, text=True, check=True)
    assert "[0, 1, 4, 5, 8, 9]" in out.stdout
