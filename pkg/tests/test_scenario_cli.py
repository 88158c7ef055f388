import json

import pytest
import yaml

from boundary_lax.errors import ScenarioError
from boundary_lax.scenario import bundled, from_dict, load, plan, run
from boundary_lax.scenario.cli import main

SYMBOLIC = ["cybe", "constraints", "closure", "traces", "lax", "pcm-closure", "charges"]


def _pcm_dict(**over):
    d = yaml.safe_load(bundled("pcm").read_text())
    d.update(over)
    return d


def test_bundled_pcm_symbolic_suite_passes():
    rep = run(load("pcm"), SYMBOLIC)
    assert [r.name for r in rep.records] == SYMBOLIC
    assert rep.passed and rep.exit_code == 0


def test_numeric_only_run_records_seed_and_h():
    rep = run(load("pcm"), ["numeric-charges"])
    rec = rep.record("numeric-charges")
    assert rec.status == "pass"
    assert rec.params["sample"]["seed"] == 7
    assert rec.params["sample"]["h"] == pytest.approx(1 / 2000)
    assert {"calT0", "calT1", "T1_j1"} <= set(rec.params["estimates"])


def test_non_symmetric_s_fails_at_cybe_and_skips_dependents():
    s = [["1", "lambda", "0", "0"], ["0", "1", "0", "0"], ["0", "0", "1", "0"], ["0", "0", "0", "1"]]
    rep = run(from_dict(_pcm_dict(s=s)), ["closure"])
    assert rep.status("cybe") == "fail"
    assert "s is not symmetric" in rep.record("cybe").message
    assert rep.status("constraints") == "skipped" and rep.status("closure") == "skipped"
    assert rep.exit_code == 1


def test_plan_orders_and_adds_prerequisites():
    assert plan(["lax", "cybe"]) == ["cybe", "constraints", "closure", "lax"]
    with pytest.raises(ScenarioError):
        plan(["nonsense"])


def test_machine_report_is_deterministic():
    sc = load("pcm")
    a = run(sc, ["closure", "numeric-crosscheck"]).machine()
    b = run(load("pcm"), ["closure", "numeric-crosscheck"]).machine()
    assert a == b
    doc = json.loads(a)
    assert "seconds" not in json.dumps(doc)
    assert all({"name", "status", "inputs_digest", "residuals", "params"} <= set(c) for c in doc["checks"])


def test_text_and_machine_agree():
    rep = run(load("pcm"), ["cybe", "constraints"])
    doc = json.loads(rep.machine())
    text = rep.text()
    for c in doc["checks"]:
        assert c["name"] in text and c["inputs_digest"] in text and c["status"].upper() in text


@pytest.mark.parametrize(
    "over,fragment",
    [
        ({"algebra": "e(8)"}, "algebra"),
        ({"k": [["1", "0"], ["0", "0"]]}, "not invertible"),
        ({"k": [["1", "0", "0"]]}, "k"),
        ({"sigma": "mirror"}, "mirror"),
        ({"lax": "sine-gordon"}, "lax"),
        ({"r": "lambda +"}, "position"),
        ({"checks": "cybe"}, "checks"),
    ],
)
def test_invalid_scenarios(over, fragment):
    with pytest.raises(ScenarioError) as e:
        from_dict(_pcm_dict(**over))
    assert fragment in str(e.value)


def test_custom_scalar_r_is_yang():
    rep = run(from_dict(_pcm_dict(r="1/(lambda - mu)", s="0", k=[["1", "0"], ["0", "1"]])), ["cybe"])
    assert rep.passed


def test_cli_check_exit_codes(tmp_path, capsys):
    assert main(["check", "--check", "cybe", "constraints"]) == 0
    assert main(["check", "--check", "linear-limit"]) == 1
    assert main(["check", "--check", "nonsense"]) == 2
    assert main(["check", "--scenario", str(tmp_path / "missing.yaml")]) == 2
    bad = tmp_path / "bad.yaml"
    bad.write_text("r: [unterminated\n")
    assert main(["check", "--scenario", str(bad)]) == 2
    with pytest.raises(SystemExit) as e:
        main(["check", "--format", "xml"])
    assert e.value.code == 2


def test_cli_report_file(tmp_path):
    out = tmp_path / "report.json"
    assert main(["check", "--check", "cybe", "--format", "machine", "--report", str(out)]) == 0
    assert json.loads(out.read_text())["checks"][0]["name"] == "cybe"


def test_cli_overrides(capsys):
    assert main(["charges", "--lattice", "4000", "--seed", "5", "--format", "machine"]) == 0
    doc = json.loads(capsys.readouterr().out)
    rec = next(c for c in doc["checks"] if c["name"] == "numeric-charges")
    assert rec["params"]["sample"]["cells"] == 4000 and rec["params"]["sample"]["seed"] == 5


def test_cli_expand(capsys):
    assert main(["expand", "--order", "2", "--format", "machine"]) == 0
    doc = json.loads(capsys.readouterr().out)
    r = doc["expansions"]["r"][0]
    assert r["series"]["1"] == "(mu^2 - 1/2)/(mu^2 - 1)"


@pytest.mark.parametrize("name", ["pcm", "pcm-twisted"])
def test_cli_enumerate_k(name, capsys):
    assert main(["enumerate-k", "--scenario", name, "--format", "machine"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert len(doc["candidates"]) == 4
    assert all(c["restr"] and c["consistent"] for c in doc["candidates"])


def test_bundled_twisted_scenario_passes():
    assert run(load("pcm-twisted")).passed
