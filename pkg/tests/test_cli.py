import json
import subprocess
import sys

import pytest

from baxref.cli import main
from baxref.report import dumps_body, validate


def run(capsys, *args):
    code = main(list(args))
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None)


def test_verify_ybe_passes(capsys):
    code, rep = run(capsys, "verify", "--suite", "ybe", "--rep", "gl2", "--q", "2", "--samples", "5", "--seed", "1")
    assert code == 0 and rep["summary"]["pass"] == 5 and rep["summary"]["fail"] == 0
    validate(rep)


def test_verify_wrong_xi_negative_control(capsys):
    code, rep = run(capsys, "verify", "--suite", "re", "--rep", "sp2", "--q", "2", "--a", "q", "--xi", "wrong")
    assert code == 1
    fails = [c for c in rep["checks"] if c["status"] == "fail"]
    assert fails and all("residual_location" in c for c in fails)
    assert {c["name"] for c in fails} == {"prop2_xi_condition"}  # Sp(2), a = q: RE holds for all xi
    code, rep = run(capsys, "verify", "--suite", "re", "--rep", "sp2", "--a=-1/q", "--xi", "wrong")
    assert code == 1
    assert any(c["name"] == "re" and c["status"] == "fail" for c in rep["checks"])
    validate(rep)


@pytest.mark.parametrize("argv", [
    ["verify", "--suite", "all", "--rep", "gl2", "--q", "1"],
    ["verify", "--q", "zero"],
    ["verify", "--samples", "0"],
    ["chain", "--sites", "0"],
    ["chain", "--left", "bogus"],
    ["verify", "--suite", "re", "--xi", "wrong"],  # Hecke: no Prop. 2 negative control
    ["verify", "--rep", "nosuchrep"],
])
def test_config_errors_exit_2(capsys, argv):
    try:
        code = main(argv)
    except SystemExit as exc:  # argparse usage errors
        code = exc.code
    assert code == 2


@pytest.mark.parametrize("argv", [
    ["chain", "--rep", "gl2", "--sites", "3", "--left", "rational", "--xi", "1", "--right", "trivial"],
    ["chain", "--rep", "sp2", "--sites", "2", "--left", "prop2", "--right", "conjugated"],
    ["chain", "--rep", "gl2", "--sites", "2", "--left", "rational:xi=3/2", "--right", "conjugated"],
])
def test_chain_passes(capsys, argv):
    code, rep = run(capsys, *argv)
    assert code == 0 and rep["summary"]["pass"] > 0
    validate(rep)


def test_spectrum(capsys, tmp_path):
    out = tmp_path / "spec.json"
    code, _ = run(capsys, "spectrum", "--rep", "gl2", "--sites", "2", "--output", str(out))
    assert code == 0 and out.exists()
    rep = json.loads(out.read_text())
    validate(rep)
    assert rep["results"]["spectrum"]["factorization"] == "(t-(-1/2))*(t-(2))^3"
    code, rep = run(capsys, "spectrum", "--rep", "sp2", "--kind", "H1")
    assert code == 1 and rep["checks"][0]["status"] == "fail"


def test_determinism(capsys):
    argv = ["verify", "--suite", "all", "--rep", "sp2", "--seeds", "1,2", "--samples", "2"]
    _, a = run(capsys, *argv)
    _, b = run(capsys, *argv)
    assert dumps_body(a) == dumps_body(b)
    names = [(c["name"], json.dumps(c["parameters"], sort_keys=True)) for c in a["checks"]]
    assert names == sorted(names)


def test_thread_env_does_not_change_body(capsys, monkeypatch):
    argv = ["chain", "--rep", "gl2", "--sites", "2", "--left", "evaluation", "--right", "conjugated"]
    _, a = run(capsys, *argv)
    monkeypatch.setenv("BAXREF_THREADS", "3")
    _, b = run(capsys, *argv)
    assert dumps_body(a) == dumps_body(b) and b["timing"]["threads"] == 3


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "baxref", "verify", "--suite", "constant-re", "--no-timing"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["summary"]["ok"]
