import json
import subprocess
import sys

import pytest

from tsyslab.cli import main
from tsyslab.report import Report
from tsyslab import suites


def run(*args):
    return main(list(args))


def test_verify_pass_and_byte_identical(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run("verify", "--suite", "A2-level2", "--out", str(a)) == 0
    assert run("verify", "--suite", "A2-level2", "--out", str(b)) == 0
    assert a.read_bytes() == b.read_bytes()
    doc = json.loads(a.read_text(encoding="utf-8"))
    assert doc["ok"] and doc["spec"] == {"suite": "A2-level2"} and doc["job"]
    check = doc["suites"][0]["checks"][0]
    assert check["name"].startswith("half-periodicity A2 l=2 shift u+5") and check["status"] == "pass"


def test_failing_suite_exits_1(tmp_path, monkeypatch):
    def broken():
        r = Report("broken")
        r.add("always false", False, 1)
        return r
    monkeypatch.setitem(suites.EXTRA, "broken", broken)
    assert run("verify", "--suite", "broken", "--out", str(tmp_path / "x.json")) == 1


def test_config_errors_exit_2(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json", encoding="utf-8")
    assert run("verify", "--config", str(bad)) == 2
    assert run("verify", "--suite", "no-such-suite") == 2
    assert run("verify") == 2
    unknown = tmp_path / "u.json"
    unknown.write_text('{"colour": 1}', encoding="utf-8")
    assert run("verify", "--config", str(unknown)) == 2
    assert run("evolve", "--type", "A2", "--level", "2", "--window", "5:1") == 2
    assert run("bogus") == 2


def test_flags_override_config(tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"suite": "no-such-suite"}), encoding="utf-8")
    out = tmp_path / "o.json"
    assert run("verify", "--config", str(cfg), "--suite", "level1", "--out", str(out)) == 0
    assert json.loads(out.read_text())["spec"]["suite"] == "level1"


def test_evolve_det_round_trip(tmp_path):
    sol = tmp_path / "sol.json"
    assert run("evolve", "--type", "A2", "--level", "2", "--window=-12:12", "--out", str(sol)) == 0
    values = json.loads(sol.read_text())["values"]
    assert "a1.m1.u0" in values
    out = tmp_path / "det.json"
    assert run("det", "--from-solution", str(sol), "--out", str(out)) == 0
    doc = json.loads(out.read_text())
    assert doc["report"]["ok"] and doc["matrix"]["height"] == 2


def test_evolve_b2_and_twisted_keys(tmp_path):
    out = tmp_path / "b2.json"
    assert run("evolve", "--type", "B2", "--level", "2", "--window", "0:12", "--out", str(out)) == 0
    assert "a2.m3.u5" in json.loads(out.read_text())["values"]
    tw = tmp_path / "tw.json"
    assert run("evolve", "--type", "A3~2", "--level", "2", "--window", "0:8", "--out", str(tw)) == 0
    assert "a1.m1.u3w1" in json.loads(tw.read_text())["values"]


def test_mutate_belt(tmp_path):
    out = tmp_path / "belt.json"
    assert run("mutate", "--quiver", "A3", "--belt", "10", "--out", str(out)) == 0
    doc = json.loads(out.read_text())
    assert [s["u"] for s in doc["belt"]] == list(range(11))


def test_export_cache(tmp_path, monkeypatch):
    monkeypatch.setenv("TSYS_CACHE_DIR", str(tmp_path / "cache"))
    assert run("export", "--type", "A1", "--level", "3", "--window", "0:6") == 0
    files = list((tmp_path / "cache").iterdir())
    assert len(files) == 1
    # a second evolve reads the cache and reproduces the file
    out = tmp_path / "again.json"
    assert run("evolve", "--type", "A1", "--level", "3", "--window", "0:6", "--out", str(out)) == 0
    assert out.read_bytes() == files[0].read_bytes()


def test_export_needs_destination(monkeypatch):
    monkeypatch.delenv("TSYS_CACHE_DIR", raising=False)
    assert run("export", "--type", "A1", "--level", "3", "--window", "0:6") == 2


def test_registry_mirrors_criteria():
    numbers = sorted(int(v[0]) for v in suites.ACCEPTANCE.values())
    assert numbers == list(range(1, 16))
    assert "C2-level2-det" in suites.suite_names() and "A2-level2" in suites.suite_names()


def test_console_script_entry():
    proc = subprocess.run([sys.executable, "-m", "tsyslab.cli", "verify", "--list"], capture_output=True, text=True)
    assert proc.returncode == 0 and "level0" in proc.stdout.split()
