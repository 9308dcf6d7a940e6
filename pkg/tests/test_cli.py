import fcntl
import json
import subprocess
import sys

import pytest

from xiforge import cli
from xiforge.pustylnikov import CoeffTable, format_table, save_table


@pytest.fixture
def cache(tmp_path, table, monkeypatch):
    """A depth-200 cache file seeded from the session table."""
    monkeypatch.delenv(cli.CACHE_ENV, raising=False)
    p = tmp_path / "cache.txt"
    save_table(table, p)
    return p


def run(argv, capsys):
    status = cli.main(argv)
    out = capsys.readouterr()
    return status, out.out, out.err


def test_coeffs_writes_cache(tmp_path, capsys, monkeypatch):
    monkeypatch.delenv(cli.CACHE_ENV, raising=False)
    p = tmp_path / "c.txt"
    status, out, _ = run(["coeffs", "--max-r", "10", "--digits", "30", "--cache", str(p)], capsys)
    assert status == 0
    lines = p.read_text().splitlines()
    assert lines[0] == "# xi-coeffs v1 precision=30"
    assert lines[2].startswith("1,0.011485972157572718767624")
    assert out == p.read_text()


def test_coeffs_append_semantics(tmp_path, capsys, table, monkeypatch):
    monkeypatch.delenv(cli.CACHE_ENV, raising=False)
    p = tmp_path / "c.txt"
    assert run(["coeffs", "--max-r", "5", "--cache", str(p)], capsys)[0] == 0
    assert run(["coeffs", "--max-r", "12", "--cache", str(p)], capsys)[0] == 0
    assert p.read_text() == format_table(CoeffTable(30, table.values[:13]))


def test_cache_precedence(tmp_path, capsys, monkeypatch):
    env, flag = tmp_path / "env.txt", tmp_path / "flag.txt"
    monkeypatch.setenv(cli.CACHE_ENV, str(env))
    run(["coeffs", "--max-r", "2"], capsys)
    assert env.exists()
    run(["coeffs", "--max-r", "2", "--cache", str(flag)], capsys)
    assert flag.exists()
    monkeypatch.delenv(cli.CACHE_ENV)
    args = cli.build_parser().parse_args(["coeffs", "--digits", "40"])
    assert cli.cache_path(args).name == "xi-coeffs-p40.txt"


def test_precision_mismatch_and_lock(cache, capsys):
    status, _, err = run(["coeffs", "--digits", "40", "--cache", str(cache)], capsys)
    assert status == 1 and "cli.load_or_build" in err
    with open(cache.with_name(cache.name + ".lock"), "w") as fh:
        fcntl.flock(fh, fcntl.LOCK_EX)
        status, _, err = run(["coeffs", "--max-r", "3", "--cache", str(cache)], capsys)
    assert status == 1 and "locked" in err


def test_keiper_max_k_zero(cache, capsys):
    status, out, _ = run(["keiper", "--max-k", "0", "--cache", str(cache)], capsys)
    assert status == 0
    assert json.loads(out)["lambda"] == ["0"]


def test_keiper_csv(cache, capsys):
    status, out, _ = run(["keiper", "--format", "csv", "--max-k", "3", "--cache", str(cache)], capsys)
    assert status == 0 and out.splitlines()[0] == "k,sigma_k,tau_k,lambda_k"
    assert out.splitlines()[2].startswith("1,0.0230957089661210338143102")


def test_series_and_wseries(cache, capsys):
    status, out, _ = run(["series", "--id", "xi_of_s", "--cache", str(cache)], capsys)
    assert status == 0 and out.splitlines()[3].startswith("1,-0.0115478544830605169071551")
    status, out, _ = run(["wseries", "--id", "log_xi_h_of_w", "--format", "json", "--cache", str(cache)], capsys)
    assert json.loads(out)["coefficients"][0] == "-0.675835813236695767842274930475"


def test_table1_scan_riemann(capsys):
    status, out, _ = run(["table1", "--digits", "10"], capsys)
    assert status == 0 and out.splitlines()[5] == "9/10,10,4.313564024,2.917499274"
    status, out, _ = run(["scan"], capsys)
    assert status == 0 and len(out.splitlines()) == 26 and "false" not in out
    status, out, _ = run(["riemann", "--w", "0.9"], capsys)
    assert status == 0 and out.splitlines()[1] == "w,approx,direct,abs_err,rel_err"


def test_computation_failure_names_module(capsys):
    status, _, err = run(["scan", "--w", "1.5"], capsys)
    assert status == 1 and "wplane.scan_point" in err
    status, _, err = run(["series", "--max-r", "3", "--order", "30", "--cache", "/dev/null/x"], capsys)
    assert status == 1


@pytest.mark.parametrize("argv", [["--digits", "30"], ["coeffs", "--digits", "5"], ["nope"],
                                  ["keiper", "--max-k", "-1"], ["verify", "--suite", "bogus"]])
def test_usage_errors(argv, capsys):
    assert cli.main(argv) == 2


def test_verify_deterministic_files(cache, tmp_path):
    outs = []
    for name in ("a.json", "b.json"):
        p = tmp_path / name
        assert cli.main(["verify", "--suite", "all", "--cache", str(cache), "--out", str(p)]) == 0
        outs.append(p.read_bytes())
    assert outs[0] == outs[1]
    assert json.loads(outs[0])["summary"]["failed"] == 0


def test_console_entry_point(cache):
    proc = subprocess.run([sys.executable, "-m", "xiforge.cli", "verify", "--suite", "table1", "--cache", str(cache)],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["summary"]["flagged"] == 1
