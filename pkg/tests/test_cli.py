import io
import json

import pytest

from mackeyalg.checks import load_manifest
from mackeyalg.cli import EXIT_CAP, EXIT_FAIL, EXIT_INPUT, EXIT_PASS, run
from mackeyalg.config import RunConfig
from mackeyalg.report import PLUMBING, Record, ReportDocument, matches, timed


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out)
    return code, out.getvalue()


def call_json(*argv):
    code, text = call(*argv, "--format", "json", "--no-timestamps")
    return code, json.loads(text) if text else None


@pytest.fixture(scope="module")
def reproduced():
    out = io.StringIO()
    code = run(["reproduce", "paper", "--format", "json", "--no-timestamps"], out)
    return code, json.loads(out.getvalue())


def test_reproduce_passes(reproduced):
    code, doc = reproduced
    assert code == EXIT_PASS
    assert doc["status"] == "pass"
    assert all(r["status"] == "pass" for r in doc["records"])
    assert all(r["provenance"] == "manifest" for r in doc["records"])


def test_reproduce_lists_each_example_once(reproduced):
    anchors = [r["anchor"] for r in reproduced[1]["records"]]
    for n in (4, 5, 6, 7):
        assert anchors.count(f"example {n}") == 1
    ids = [r["name"] for r in reproduced[1]["records"]]
    assert ids == [c["id"] for c in load_manifest()["checks"]]


@pytest.mark.parametrize("argv", [
    ("mackey", "compose", "--group", "cyclic:4"),
    ("burnside", "present", "--group", "klein", "--mod", "2"),
    ("gustafson", "--group", "sym:3"),
    ("check", "rees", "--group", "cyclic:4", "--degree", "2"),
])
def test_json_is_byte_identical(argv):
    a = call(*argv, "--format", "json", "--no-timestamps")
    b = call(*argv, "--format", "json", "--no-timestamps")
    assert a[0] == EXIT_PASS
    assert a == b
    assert "seconds" not in a[1]


def test_timestamps_present_by_default():
    code, text = call("group", "info", "--group", "cyclic:4", "--format", "json")
    assert code == EXIT_PASS
    assert "seconds" in json.loads(text)["records"][0]


def test_group_info_and_plumbing_anchor():
    code, doc = call_json("group", "info", "--group", "klein")
    assert code == EXIT_PASS
    rec = doc["records"][0]
    assert rec["anchor"] == PLUMBING
    assert rec["computed"]["order"] == 4


def test_self_injective_negative_finding_is_success():
    code, doc = call_json("check", "self-injective", "--group", "cyclic:4", "--mod", "2")
    assert code == EXIT_PASS
    assert doc["records"][0]["computed"]["self_injective"] is False


def test_self_injective_all_primes():
    code, doc = call_json("check", "self-injective", "--group", "cyclic:6")
    assert code == EXIT_PASS
    assert [r["name"] for r in doc["records"]] == ["self-injective-mod-2", "self-injective-mod-3"]


def test_burnside_present_klein_text():
    code, text = call("burnside", "present", "--group", "klein", "--mod", "2")
    assert code == EXIT_PASS
    assert "s = h + k + ℓ" in text
    assert "h^2 = 0; hs = 0; k^2 = 0; ks = 0; s^2 = 0" in text


def test_mackey_compose_bracket_notation():
    code, text = call("mackey", "compose", "--group", "cyclic:4")
    assert code == EXIT_PASS
    assert "fg: 2·[G/G <- G/1 -> G/H2]" in text


def test_mackey_dim_uses_oracle():
    code, doc = call_json("mackey", "dim", "--group", "sym:3")
    assert code == EXIT_PASS
    assert doc["records"][0]["provenance"] == "oracle"


def test_gorenstein_small_group():
    code, doc = call_json("check", "gorenstein", "--group", "cyclic:2")
    assert code == EXIT_PASS
    assert doc["records"][0]["computed"]["all_vanish"] is True


@pytest.mark.parametrize("argv", [
    ("group", "info", "--group", "cyclic:0"),
    ("group", "info", "--group", "quaternion:8"),
    ("group", "info", "--group", "[[0,1],[1,0"),
    ("group", "info"),
    ("group", "table", "--group", "cyclic:2"),
    ("burnside", "table", "--group", "cyclic:2", "--mod", "4"),
    ("frobnicate",),
    ("gustafson", "--group", "cyclic:2", "--format", "yaml"),
    ("reproduce", "paper", "--manifest", "/nonexistent/values.json"),
])
def test_input_errors(argv, capsys):
    code, text = call(*argv)
    assert code == EXIT_INPUT
    assert text == ""


def test_cap_exit_code(capsys):
    assert call("group", "info", "--group", "cyclic:30", "--cap", "24")[0] == EXIT_CAP
    assert "resource cap" in capsys.readouterr().err


def test_failing_manifest_exit_code(tmp_path):
    entry = next(c for c in load_manifest()["checks"] if c["id"] == "burnside-c4")
    entry["expected"] = dict(entry["expected"], socle_dim=3)
    path = tmp_path / "doctored.json"
    path.write_text(json.dumps({"version": 1, "checks": [entry]}))
    code, doc = call_json("reproduce", "paper", "--manifest", str(path))
    assert code == EXIT_FAIL
    assert doc["status"] == "fail"


def test_config_file(tmp_path):
    good = tmp_path / "run.json"
    good.write_text(json.dumps({"order_cap": 4}))
    assert call("group", "info", "--group", "cyclic:6", "--config", str(good))[0] == EXIT_CAP
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"order_cap": 4, "colour": "red"}))
    assert call("group", "info", "--group", "cyclic:2", "--config", str(bad))[0] == EXIT_INPUT


def test_run_config_validation():
    cfg = RunConfig()
    assert RunConfig(**cfg.to_json()) == cfg
    for bad in ({"output": "xml"}, {"order_cap": 0}, {"degree": -1}):
        with pytest.raises(ValueError):
            RunConfig(**bad)


def test_report_semantics():
    ok = timed("a", "demo", lambda: {"x": 1, "y": 2}, {"x": 1})
    bad = timed("b", "demo", lambda: {"x": 1}, {"x": 2})
    unsure = timed("c", PLUMBING, lambda: {"inconclusive": True})
    assert ok.status == "pass" and bad.status == "fail" and unsure.status == "inconclusive"
    assert ReportDocument("t", records=[ok, unsure]).status == "inconclusive"
    assert ReportDocument("t", records=[ok, unsure, bad]).status == "fail"
    with pytest.raises(ValueError):
        Record("x", "", "pass", {})
    with pytest.raises(ValueError):
        Record("x", PLUMBING, "maybe", {})


def test_matches_is_subset_on_dicts():
    assert matches({"a": 1, "b": {"c": 2, "d": 3}}, {"b": {"c": 2}})
    assert not matches({"a": 1}, {"a": 1, "b": 2})
    assert matches({}, {}) and not matches({"a": 1}, {})


def test_check_anchors_come_from_bundled_data():
    anchors = load_manifest()["command_anchors"]
    _, doc = call_json("gustafson", "--group", "cyclic:2")
    assert doc["records"][0]["anchor"] == anchors["gustafson"]
    _, doc = call_json("check", "rees", "--group", "cyclic:2", "--degree", "1")
    assert doc["records"][0]["anchor"] == anchors["check rees"]
