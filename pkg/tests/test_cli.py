import io
import json
import shutil
import subprocess
import sys
from pathlib import Path

import jsonschema
import pytest

from holozeros.cli import run
from holozeros.fixtures import FIXTURES
from holozeros.zeroset import REPORT_SCHEMA


@pytest.fixture
def files(tmp_path):
    out = {}
    for name, data in FIXTURES.items():
        p = tmp_path / f"{name}.json"
        p.write_text(json.dumps(data), encoding="utf-8")
        out[name] = str(p)
    return out


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_analyze_fibonacci_json(files):
    code, out, _ = call("analyze", files["fibonacci"], "--json")
    data = json.loads(out)
    jsonschema.validate(data, REPORT_SCHEMA)
    assert data["decomposition"]["exceptional"] == [0]
    # classes 5, 10, 15 carry a bound of one zero that is never hit in N
    assert code == 2


def test_analyze_certified_exit_zero(files):
    code, out, _ = call("analyze", files["alternating"])
    assert code == 0
    assert "(2ℕ + 0)" in out


def test_zeros_subcommand(files):
    code, out, _ = call("zeros", files["interleaved"], "--upto", "20")
    assert code == 0 and out.strip() == "0 2 4 6 8 10 12 14 16 18 20"


def test_eval_subcommand(files):
    assert call("eval", files["fibonacci"], "--upto", "6")[1].strip() == "0 1 1 2 3 5 8"
    assert call("eval", files["fibonacci"], "--at", "-6")[1].strip() == "-8"


def test_central_binomial_rejected(files):
    code, _, err = call("analyze", files["central_binomial"])
    assert code == 1 and "unsupported recurrence form" in err
    code, out, _ = call("analyze", files["central_binomial"], "--json")
    assert json.loads(out)["error"]["type"] == "NotMonicForm"


def test_unknown_flag_and_bad_values(files):
    assert call("analyze", files["fibonacci"], "--frobnicate")[0] == 1
    assert call("analyze", files["fibonacci"], "--precision", "0")[0] == 1
    code, out, _ = call("analyze", "/nonexistent.json", "--json")
    assert code == 1 and json.loads(out)["error"]["type"] == "FileNotFoundError"


def test_primes_and_arc(files):
    assert call("primes", files["interleaved"], "--count", "4")[1].strip() == "5 7 11 13"
    code, out, _ = call("arc", files["fibonacci"], "--class", "0", "--precision", "6", "--json")
    data = json.loads(out)
    assert code == 0 and data["modulus_b"] == 20
    comp = data["components"][0]
    assert (comp["class"], comp["component"], comp["precision_exp"]) == (0, 0, 7)
    assert call("arc", files["fibonacci"], "--class", "20")[0] == 1


def test_extension_mode_flags(files):
    assert call("analyze", files["extension"])[0] == 1
    assert call("analyze", files["extension"], "--extension-mode")[0] in (0, 2)
    code, out, _ = call("primes", files["trailing_root"], "--extension-mode", "--json")
    assert code == 1 and json.loads(out)["error"]["type"] == "NoAdmissiblePrime"


def test_verify_round_trip(files, tmp_path):
    code, out, _ = call("analyze", files["interleaved"], "--json", "--horizon", "600")
    rep = tmp_path / "report.json"
    rep.write_text(out, encoding="utf-8")
    code, out, _ = call("verify", str(rep), files["interleaved"])
    assert code == 0 and out.strip().endswith("ok")
    data = json.loads(rep.read_text())
    data["decomposition"]["exceptional"].append(1)
    rep.write_text(json.dumps(data))
    code, out, _ = call("verify", str(rep), files["interleaved"], "--json")
    assert code == 1 and json.loads(out)["discrepancies"][0] == {"n": 1, "reported": True, "oracle": False}


def test_json_output_is_byte_identical(files):
    a = call("analyze", files["lucas"], "--json", "--second-prime-check")[1]
    b = call("analyze", files["lucas"], "--json", "--second-prime-check")[1]
    assert a == b
    assert json.loads(a)["second_prime_check"]["agree"]


def test_internal_errors_exit_three(files, monkeypatch):
    from holozeros import cli
    from holozeros.errors import InternalSoundness

    def boom(*a, **k):
        raise InternalSoundness("forced")

    monkeypatch.setattr(cli, "analyze", boom)
    assert call("analyze", files["fibonacci"])[0] == 3


@pytest.mark.skipif(shutil.which("holozeros") is None, reason="console script not installed")
def test_console_script(files):
    proc = subprocess.run(["holozeros", "zeros", files["alternating"], "--upto", "6"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "0 2 4 6"


def test_module_entry_point(files):
    proc = subprocess.run(
        [sys.executable, "-m", "holozeros", "eval", files["lucas"], "--upto", "4"],
        capture_output=True, text=True, cwd=Path(files["lucas"]).parent,
    )
    assert proc.stdout.strip() == "2 1 3 4 7"
