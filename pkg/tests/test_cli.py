"""Command-line behaviour: exit codes, output formats and determinism."""
from __future__ import annotations

import contextlib
import io
import json
import subprocess
import sys

import pytest

from dpcascade import cli


def run(*argv) -> tuple[int, str, str]:
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = cli.main(list(argv))
    return code, out.getvalue(), err.getvalue()


@pytest.mark.parametrize("argv,code", [
    (("verify", "--model", "CI11", "--n-max", "2"), 0),
    (("verify", "--model", "P11", "--n-max", "2", "--heavy-n-max", "1"), 0),
    (("verify", "--model", "P11", "--n-max", "2", "--heavy-n-max", "1", "--strict"), 1),
    (("verify", "--model", "P13", "--n-max", "1", "--heavy-n-max", "0"), 1),
    (("verify", "--model", "nope"), 2),
    (("instantiate", "--model", "PF14", "--n", "0"), 2),
    (("project", "--model", "HS12", "--center", "x"), 2),
    (("project", "--model", "PF12", "--center", "y0", "--n", "1"), 0),
    (("--catalog", "/nonexistent.json", "verify"), 2),
])
def test_golden_exit_codes(argv, code):
    assert run(*argv)[0] == code


def test_errors_go_to_stderr():
    code, out, err = run("verify", "--model", "nope")
    assert code == 2 and not out and "unknown model id" in err


def test_verify_text_report():
    code, out, _ = run("verify", "--model", "CI21", "--n-max", "1")
    assert code == 0
    assert "[known]" in out and out.rstrip().endswith("status: PASS")


def test_verify_json_is_byte_identical():
    a = run("verify", "--model", "PF13", "--n-max", "2", "--json")
    b = run("verify", "--model", "PF13", "--n-max", "2", "--json")
    assert a == b
    doc = json.loads(a[1])
    assert doc["schema"] == "dpcascade-report/1" and doc["exit_code"] == 0


def test_instantiate_json():
    code, out, _ = run("instantiate", "--model", "RS8", "--json")
    doc = json.loads(out)
    assert code == 0 and doc["weights"] == [1, 2, 3, 5] and len(doc["equations"]) == 1


def test_tables():
    code, out, _ = run("tables", "--model", "CI11", "--model", "CI12", "--n-max", "2")
    assert code == 0 and "CI11" in out and "CI12" in out


def test_custom_catalog_file(tmp_path, catalog):
    doc = json.loads(catalog.dumps())
    doc["models"] = [m for m in doc["models"] if m["id"] == "CI11"]
    path = tmp_path / "one.json"
    path.write_text(json.dumps(doc))
    assert run("--catalog", str(path), "verify", "--n-max", "1")[0] == 0
    path.write_text("{broken")
    code, _, err = run("--catalog", str(path), "verify")
    assert code == 2 and "one.json" in err


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "dpcascade", "--help"], capture_output=True, text=True)
    assert proc.returncode == 0 and "verify" in proc.stdout
