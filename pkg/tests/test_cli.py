import json
import subprocess
import sys

import pytest

from rotary_forge.cli import SCHEMAS, main, run_command


def single(argv):
    code, lines = run_command(argv)
    assert len(lines) == 1
    return code, lines[0]


def test_verify_gamma1():
    code, out = single(["verify", "--family", "gamma1", "--m", "3", "--alpha", "2", "--k1", "1", "--k2", "1"])
    assert code == 0 and out["ok"]
    assert (out["order"], out["tight"], out["intersection"], out["chiral"]) == (324, True, True, True)
    assert out["chirality_group_order"] == 3 and out["perm_rep"]["conditions"]


def test_verify_unequal_k_fails():
    code, out = single(["verify", "--family", "gamma1", "--m", "3", "--alpha", "2", "--k1", "1", "--k2", "2"])
    assert code == 1 and "tight" in out["failures"]


def test_census_6_9():
    code, lines = run_command(["census", "polyhedra", "--p", "6", "--q", "9"])
    assert code == 0
    summary = lines[-1]["summary"]
    assert summary["chiral_classes"] == 2
    assert summary["regular_classes"] == sum(1 for r in lines[:-1] if r["verdict"] == "regular")


def test_nonexist_lambda4():
    code, out = single(["nonexist", "--family", "lambda4", "--beta", "5"])
    assert code == 0 and out["collapsed"] and out["sigma2_order"] <= 16
    code, out = single(["nonexist", "--family", "lambda4", "--beta", "5", "--eps", "-1"])
    assert code == 0 and out["collapsed"]


def test_poset_and_build():
    code, out = single(["poset", "--family", "p2m-ma", "--m", "3", "--alpha", "2", "--k", "1"])
    assert code == 0 and out["counts"] == [1, 6, 27, 9, 1] and out["report"]["flags"] == 108
    code, out = single(["build", "--family", "reg-4-8"])
    assert code == 0 and out["regular_or_chiral"] == "regular" and out["order"] == 32


def test_presentation_file(tmp_path):
    f = tmp_path / "p.txt"
    f.write_text("rank 3; orders 6 9; s2 s1^2 = s1^2 s2^4")
    code, out = single(["build", "--presentation", str(f)])
    assert code == 0 and out["order"] == 54 and out["regular_or_chiral"] == "chiral"
    f.write_text("rank 3; orders 6 9; s3 = s1")
    code, out = single(["build", "--presentation", str(f)])
    assert code == 2 and "out of range" in out["error"]


def test_amalgamate_specs():
    code, out = single(["amalgamate", "p2m-ma:m=3,alpha=2,k=1", "ma-2m:m=3,alpha=2,k=1"])
    assert code == 0 and out["amalgam"] and out["measured_order"] == 324
    code, out = single(["amalgamate", "p2m-ma:m=3,alpha=2,k=1", "ma-2m:m=3,alpha=2,k=2", "--expect-fail"])
    assert code == 0 and not out["amalgam"] and out["measured_order"] < 324
    code, out = single(["amalgamate", "reg-m-2m:m=3", "dual:ma-2m:m=3,alpha=2,k=1"])
    assert code == 0 and out["measured_order"] == 162


def test_rank5():
    code, out = single(["rank5", "--m", "3", "--alpha", "2", "--beta", "5"])
    assert code == 0 and out["ok"]
    orders = {(r["family"], r["chirality_group_order"]) for r in out["instances"]}
    assert orders == {("lambda1", 3), ("lambda2", 2), ("lambda3", 2)}


@pytest.mark.parametrize("argv", [
    ["verify", "--family", "nosuch"],
    ["verify", "--family", "gamma1", "--m", "4", "--alpha", "2", "--k1", "1", "--k2", "1"],
    ["verify", "--family", "gamma1"],
    ["census", "polyhedra", "--p", "6"],
    ["frobnicate"],
])
def test_usage_errors(argv):
    assert run_command(argv)[0] == 2


def test_cap_exceeded_exit_code():
    code, out = single(["build", "--family", "gamma1", "--m", "3", "--alpha", "2", "--k1", "1", "--k2", "1",
                        "--max-cosets", "10"])
    assert code == 3 and "cap" in out["error"]


def test_schema():
    code, out = single(["--json-schema"])
    assert code == 0 and out["schemas"] == SCHEMAS


def test_pure_and_stdout_json(capsys):
    argv = ["verify", "--family", "lambda2", "--beta", "5", "--eps", "1"]
    assert main(argv) == 0
    first = capsys.readouterr().out
    assert main(argv) == 0
    assert capsys.readouterr().out == first
    payload = json.loads(first)
    assert list(payload) == sorted(payload)


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "rotary_forge", "verify", "--family", "reg-m-2m", "--m", "3"],
                       capture_output=True, text=True, timeout=120)
    assert r.returncode == 0 and json.loads(r.stdout)["ok"]
