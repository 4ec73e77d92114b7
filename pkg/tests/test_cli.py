import json
import subprocess
import sys
from fractions import Fraction

import pytest

from cherednik.cli import main
from cherednik.glmod import ModuleValidationError, make_natural, make_onedim, tensor
from cherednik.linops import CheckReport
from cherednik.suites import (REGISTRY, ConfigError, ModuleSpecError, RunConfig, emit_report,
                              parse_module_spec, run_suite)


def run(capsys, *argv):
    rc = main(list(argv))
    out = capsys.readouterr()
    return rc, out.out, out.err


def test_aliases():
    assert parse_module_spec("natural:2").action == make_natural(2).action
    assert parse_module_spec("onedim:2:1/2,1/2").action == make_onedim(2, [Fraction(1, 2)] * 2).action
    assert parse_module_spec("natural:2*natural:2").action == tensor(make_natural(2), make_natural(2)).action
    assert parse_module_spec("trivial:3").dim == 1
    with pytest.raises(ModuleSpecError):
        parse_module_spec("spin:2")
    with pytest.raises(ModuleSpecError):
        parse_module_spec("natural:two")


def test_onedim_alias_with_unequal_weights(capsys):
    with pytest.raises(ModuleValidationError):
        parse_module_spec("onedim:2:1,0")
    rc, _, err = run(capsys, "run", "--suite", "cybe", "--module", "onedim:2:1,0")
    assert rc == 2 and "(1, 2, 2, 1)" in err


def test_module_file(tmp_path, capsys):
    good = tmp_path / "nat.json"
    good.write_text(json.dumps(tensor(make_natural(2), make_onedim(2, [3, 3])).to_json()))
    assert parse_module_spec(str(good)).dim == 2
    rc, out, _ = run(capsys, "run", "--suite", "thm17", "--module", str(good), "--N", "1",
                     "--kappa", "5/2", "--depth", "1", "--samples", "20")
    assert rc == 0, out
    data = make_natural(2).to_json()
    data["matrices"][0][1] = [["0", "0"], ["1", "0"]]
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(data))
    rc, _, err = run(capsys, "run", "--suite", "cybe", "--module", str(bad))
    assert rc == 2 and "(a,b,c,d)=" in err
    broken = tmp_path / "broken.json"
    broken.write_text("{\"m\": 2,")
    rc, _, err = run(capsys, "run", "--suite", "cybe", "--module", str(broken))
    assert rc == 2 and "broken.json" in err
    rc, _, err = run(capsys, "run", "--suite", "cybe", "--module", str(tmp_path / "missing.json"))
    assert rc == 2


def test_list(capsys):
    rc, out, _ = run(capsys, "list")
    assert rc == 0
    assert [line.split()[0] for line in out.splitlines()] == sorted(REGISTRY)


def test_json_report_round_trip(capsys):
    rc, out, _ = run(capsys, "run", "--suite", "dunkl_rational", "--N", "3", "--degree", "3",
                     "--kappa=1,5/2,-7/3", "--format", "json")
    assert rc == 0
    data = json.loads(out)
    assert data["status"] == "pass" and data["instances"] > 0
    assert dict(data["params"])["kappa"] == ["1", "5/2", "-7/3"]
    assert all(c["failures"] == 0 for c in data["checks"].values())
    assert any(k.startswith("κ=-7/3: ") for k in data["checks"])


def test_exit_codes(capsys):
    assert run(capsys, "run", "--suite", "nonesuch")[0] == 2
    assert run(capsys, "run")[0] == 2
    assert run(capsys, "run", "--suite", "hecke", "--window=3..1")[0] == 2
    assert run(capsys, "run", "--suite", "hecke", "--window", "bad")[0] == 2
    assert run(capsys, "run", "--suite", "hecke", "--kappa", "x")[0] == 2
    assert run(capsys, "run", "--suite", "thm125", "--m", "1", "--n", "1",
               "--module", "natural:2")[0] == 2


def test_negative_control_mode(capsys):
    args = ["run", "--suite", "thm17", "--N", "1", "--kappa", "5/2", "--level-offset", "1",
            "--depth", "1", "--samples", "20"]
    assert run(capsys, *args)[0] == 1
    rc, out, _ = run(capsys, *args, "--expect-fail")
    assert rc == 0 and "PASS" in out
    assert run(capsys, "run", "--suite", "cybe", "--expect-fail")[0] == 1


def test_report_status():
    rep = CheckReport("x")
    assert rep.status == "pass"
    rep.record("c", 1, False, expected=1, actual=2)
    assert rep.status == "fail" and json.loads(emit_report(rep, "json"))["status"] == "fail"
    with pytest.raises(ConfigError):
        emit_report(rep, "xml")


def test_determinism_and_workers(monkeypatch):
    cfg = RunConfig("ast_prop15", N=2, samples=20, depth=1, window=(-1, 1), flavor="sl")
    a = emit_report(run_suite(cfg), "json")
    assert a == emit_report(run_suite(cfg), "json")
    monkeypatch.setenv("CHEREDNIK_WORKERS", "3")
    assert emit_report(run_suite(cfg), "json") == a
    monkeypatch.setenv("CHEREDNIK_WORKERS", "many")
    with pytest.raises(ConfigError):
        run_suite(cfg)


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "cherednik", "run", "--suite", "cybe", "--m", "2"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.startswith("cybe: PASS")
