import json

import pytest

from leflab import cli
from leflab.cli import ConfigError, ScenarioConfig, main, run, verify_suite
from leflab.graded import truncated_polynomial


def run_main(capsys, argv):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_malformed_scenario_exits_2(tmp_path, capsys):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    code, _, err = run_main(capsys, ["analyze", str(p)])
    assert code == 2 and "error" in err


def test_unknown_suite_exits_2(capsys):
    code, _, err = run_main(capsys, ["verify", "nonsense"])
    assert code == 2 and "valid names" in err


def test_unknown_model_and_parameter_exit_2(capsys):
    assert run_main(capsys, ["model", "nosuch"])[0] == 2
    assert run_main(capsys, ["model", "torus", "--bogus", "1"])[0] == 2


@pytest.mark.parametrize(
    "doc",
    [[], {}, {"model": "torus", "algebra": {}}, {"model": "torus", "analyses": ["magic"]}],
)
def test_scenario_validation(doc):
    with pytest.raises(ConfigError):
        ScenarioConfig.from_json(doc)


def test_torus_line_reports_its_closure(capsys):
    code, out, _ = run_main(capsys, ["model", "torus", "--n", "1"])
    report = json.loads(out)
    assert report["closure"]["dim"] == 3
    assert code == 1 and not report["ok"]


def test_model_output_is_deterministic(capsys):
    first = run_main(capsys, ["model", "hk", "--analyses", "closure,jordan,fingerprint"])
    second = run_main(capsys, ["model", "hk", "--analyses", "closure,jordan,fingerprint"])
    assert first == second and first[0] == 0
    assert json.loads(first[1])["closure"]["dim"] == 10


def test_list_models(capsys):
    code, out, _ = run_main(capsys, ["list-models", "--json"])
    cat = json.loads(out)
    assert code == 0 and {m["name"] for m in cat} == set(cli.MODELS)
    assert len(cat) == 8
    code, text, _ = run_main(capsys, ["list-models"])
    assert code == 0 and len(text.strip().splitlines()) == 8
    assert text.startswith("torus")


def test_classify_d4(capsys):
    code, out, _ = run_main(capsys, ["--format", "json", "classify", "--type", "D", "--rank", "4"])
    rows = json.loads(out)
    assert code == 0 and rows
    assert all(set(r) >= {"beta", "admissible", "pair"} for r in rows)
    assert any(r["admissible"] for r in rows)


def test_classify_bad_type_exits_2(capsys):
    assert run_main(capsys, ["classify", "--type", "Z", "--rank", "3"])[0] == 2


def test_verify_core(capsys):
    code, out, _ = run_main(capsys, ["verify", "core"])
    summary = json.loads(out)
    assert code == 0 and summary["ok"] and summary["suite"] == "core"


@pytest.mark.parametrize("suite", ["core", "jordan", "hk", "albert", "flags"])
def test_suites_pass(suite):
    checks = verify_suite(suite)
    assert checks and all(c.passed for c in checks), [c.id for c in checks if not c.passed]


def test_torus_suite_reports_the_line_case():
    failed = {c.id for c in verify_suite("torus") if not c.passed}
    assert failed == {"torus.n1.closure", "torus.n1.psi_image"}


def test_appendix_suite_is_seed_deterministic():
    a = [c.to_json() for c in verify_suite("appendix", 11)]
    b = [c.to_json() for c in verify_suite("appendix", 11)]
    assert a == b and all(c["pass"] for c in a)


def test_expectations(tmp_path, capsys):
    p = tmp_path / "s.json"
    p.write_text(json.dumps({"model": "kahler-torus", "n": 2, "expect": {"dim": 15, "jordan": True}}))
    code, out, _ = run_main(capsys, ["analyze", str(p)])
    report = json.loads(out)
    assert code == 0 and {v["id"] for v in report["verdicts"]} >= {"expect.dim", "expect.jordan"}
    p.write_text(json.dumps({"model": "kahler-torus", "n": 2, "expect": {"dim": 16}}))
    assert run_main(capsys, ["analyze", str(p)])[0] == 1
    p.write_text(json.dumps({"model": "kahler-torus", "n": 2, "expect": {"colour": 1}}))
    assert run_main(capsys, ["analyze", str(p)])[0] == 2


def test_algebra_scenario():
    doc = {"algebra": truncated_polynomial(2).to_json(), "analyses": ["closure", "jordan", "frobenius", "forms"]}
    report, status = run(ScenarioConfig.from_json(doc))
    assert status == 0
    assert report["closure"]["dim"] == 3
    assert report["jordan"]["degrees_only_202"] and report["forms"]["nondegenerate"]
    assert report["graded_dims"] == {"-2": 1, "0": 1, "2": 1}


def test_timing_is_opt_in(tmp_path, capsys):
    p = tmp_path / "s.json"
    p.write_text(json.dumps({"model": "albert"}))
    _, out, _ = run_main(capsys, ["analyze", str(p)])
    assert "seconds" not in json.loads(out)
    _, out, _ = run_main(capsys, ["analyze", str(p), "--timing"])
    assert "seconds" in json.loads(out)


def test_text_report(capsys):
    code, out, _ = run_main(capsys, ["--format", "text", "model", "hk"])
    assert code == 0 and out.strip().endswith("ok") and "PASS" in out
