import json
import subprocess
import sys

import pytest

from roamkit import catalog
from roamkit.cli import CheckRequest, RequestError, main, run
from roamkit.report import SCHEMA, dumps, loads, make_report


def run_cli(tmp_path, *args):
    out = tmp_path / "report.json"
    code = main(["--out", str(out), *args])
    return code, (json.loads(out.read_text()) if out.exists() else None)


def test_delta_on_free_group_with_dot(tmp_path):
    dot = tmp_path / "ball.dot"
    code, rep = run_cli(tmp_path, "--group", "catalog:F2", "--check", "delta", "--radius", "2",
                        "--dot", str(dot))
    assert code == 0 and rep["verdict"] == "pass"
    assert rep["schema"] == SCHEMA and rep["result"]["delta"] == "0"
    text = dot.read_text()
    assert sum(1 for l in text.splitlines() if l.rstrip().endswith(";") and "--" not in l and "node [" not in l) == 17


def test_reports_are_byte_identical(tmp_path):
    args = ["--group", "catalog:F2-coned-a", "--check", "topology", "--radius", "6", "--seed", "7"]
    a, b = tmp_path / "a", tmp_path / "b"
    a.mkdir(), b.mkdir()
    run_cli(a, *args)
    run_cli(b, *args)
    assert (a / "report.json").read_bytes() == (b / "report.json").read_bytes()


def test_seed_changes_the_topology_instance(tmp_path):
    args = ["--group", "catalog:F2", "--check", "topology", "--radius", "6"]
    _, r1 = run_cli(tmp_path, *args, "--seed", "1")
    _, r2 = run_cli(tmp_path, *args, "--seed", "2")
    assert r1["seed"] == 1 and (r1["result"]["x"], r1["result"]["A"]) != (r2["result"]["x"], r2["result"]["A"])
    # plain free group: C = A
    assert r1["result"]["C"] == r1["result"]["A"] and r1["verdict"] == "pass"


def test_malnormal_z2_fails(tmp_path):
    code, rep = run_cli(tmp_path, "--group", "catalog:Z2", "--check", "malnormal", "--radius", "6",
                        "--param", "r_s=1")
    assert code == 1
    assert rep["verdict"] == "fail" and rep["result"]["verdict"] == "growing"
    assert rep["witnesses"]


def test_malnormal_free_passes(tmp_path):
    code, rep = run_cli(tmp_path, "--group", "catalog:F2-cyclic", "--check", "malnormal", "--radius", "6")
    assert code == 0 and set(rep["result"]["table"].values()) == {1}


def test_fineness_coned(tmp_path):
    code, rep = run_cli(tmp_path, "--group", "catalog:F2-coned-a", "--check", "fineness")
    assert code == 0 and rep["result"]["loop_counts"]["3"] == 2


def test_roaming_hyperbolic(tmp_path):
    code, rep = run_cli(tmp_path, "--group", "catalog:F2-cyclic", "--check", "roaming", "--radius", "10")
    assert code == 0
    assert rep["result"]["certificate"]["h_sequence"] == ["", "aaa", "aaaaaa", "aaaaaaaaa"]


def test_l2_and_product(tmp_path):
    code, rep = run_cli(tmp_path, "--group", "catalog:F2-cyclic", "--check", "l2-suite", "--param", "count=10")
    assert code == 0 and rep["result"]["failures"] == []
    code, rep = run_cli(tmp_path, "--group", "catalog:F2xF2", "--check", "product")
    assert code == 0 and [r["status"] for r in rep["result"]["factors"]] == ["pass", "pass"]


def test_group_file_input(tmp_path):
    path = tmp_path / "f2.group"
    path.write_text(catalog.entry("F2-coned-a").text())
    code, rep = run_cli(tmp_path, "--group", str(path), "--check", "fineness", "--radius", "4",
                        "--param", "n=4", "--param", "compare=3")
    assert code == 0 and rep["group"] == str(path)


@pytest.mark.parametrize("args", [
    ["--group", "catalog:F2", "--check", "delta", "--param", "bogus=1"],
    ["--group", "catalog:nope", "--check", "delta"],
    ["--group", "catalog:F2", "--check", "malnormal"],                 # no subgroup
    ["--group", "catalog:F2-cyclic", "--check", "roaming", "--param", "s=a"],
    ["--group", "catalog:F2", "--check", "delta", "--radius", "0"],
    ["--group", "catalog:F2xF2", "--check", "delta"],
    ["--group", "/no/such/file", "--check", "delta"],
])
def test_request_errors_exit_2(tmp_path, capsys, args):
    assert main(["--out", str(tmp_path / "x.json"), *args]) == 2
    assert "roamkit: error" in capsys.readouterr().err


def test_parse_error_reports_line(tmp_path, capsys):
    path = tmp_path / "bad.group"
    path.write_text("generators: a b\nrelators abAB\n")
    assert main(["--group", str(path), "--check", "delta"]) == 2
    assert "line 2" in capsys.readouterr().err


def test_request_validation():
    with pytest.raises(RequestError):
        CheckRequest("nope", "catalog:F2").validate()
    rep, ball = run(CheckRequest("delta", "catalog:Z", 4), timings=True)
    assert rep["timings"]["seconds"] >= 0 and ball.radius == 4


def test_report_helpers():
    rep = make_report("delta", "catalog:F2", {}, "pass", {}, 0, "0")
    assert loads(dumps(rep)) == rep
    with pytest.raises(ValueError):
        make_report("delta", "g", {}, "uncertified", {}, 0, "0")
    with pytest.raises(ValueError):
        make_report("delta", "g", {}, "maybe", {}, 0, "0")
    with pytest.raises(ValueError):
        loads('{"schema": "other"}')


def test_console_script_module():
    out = subprocess.run([sys.executable, "-m", "roamkit.cli", "--group", "catalog:Z", "--check", "delta",
                          "--radius", "3"], capture_output=True, text=True)
    assert out.returncode == 0 and json.loads(out.stdout)["verdict"] == "pass"
