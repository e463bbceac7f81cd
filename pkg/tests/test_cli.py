import json
import subprocess
import sys

import pytest

from rm_srr.cli import main


def run(*args, env=None):
    proc = subprocess.run(
        [sys.executable, "-m", "rm_srr", *args], capture_output=True, text=True, env=env
    )
    return proc.returncode, proc.stdout, proc.stderr


def test_gen_table_small():
    code, out, _ = run("gen", "-r", "1", "-m", "2", "--format", "table")
    assert code == 0
    assert out == " 1 | 1 1 1 1\nv2 | 0 0 1 1\nv1 | 0 1 0 1\n"


def test_gen_csv_rm_2_4():
    code, out, _ = run("gen", "-r", "2", "-m", "4", "--format", "csv")
    lines = out.splitlines()
    assert code == 0 and len(lines) == 11
    assert lines[5] == ",".join("0000000000001111")
    assert lines[10] == ",".join("0001000100010001")


def test_gen_invalid_and_full_order(capsys):
    assert main(["gen", "-r", "3", "-m", "2"]) == 1
    assert main(["gen", "-r", "2", "-m", "2", "--format", "csv"]) == 0
    captured = capsys.readouterr()
    assert "warning" in captured.err
    assert captured.out.splitlines()[-1] == "0,0,0,1"


def test_recovery_json():
    code, out, _ = run("recovery", "-r", "2", "-m", "4", "-j", "5")
    data = json.loads(out)
    entry = data["objects"][0]
    assert code == 0
    assert entry["smallest"] == [1, 2]
    assert len(entry["secondSmallest"]) == 7


def test_recovery_partition_csv():
    code, out, _ = run("recovery", "-r", "2", "-m", "4", "-j", "11", "--format", "csv")
    assert code == 0
    assert out == (
        "object,kind,size,servers\n"
        "11,smallest,4,1 2 3 4\n"
        "11,second-smallest,4,5 6 7 8\n"
        "11,second-smallest,4,9 10 11 12\n"
        "11,second-smallest,4,13 14 15 16\n"
    )


def test_recovery_oracle_capacity():
    code, _, err = run("recovery", "-r", "2", "-m", "5", "-j", "5", "--policy", "oracle")
    assert code == 2 and "capacity" in err


def test_capacity_env_override(capsys):
    import os

    env = dict(os.environ, RM_SRR_MAX_M="3")
    code, _, _ = run("hypergraph", "-r", "1", "-m", "4", "--policy", "oracle", env=env)
    assert code == 2


def test_hypergraph_json_with_lp():
    code, out, _ = run("hypergraph", "-r", "1", "-m", "2", "--lp")
    data = json.loads(out)
    assert code == 0
    assert data["vertices"] == [0, 1, 2, 3, 4]
    assert data["matchingNumber"] == "2"
    assert len(data["edges"]) == 6


def test_bounds_rm_2_4():
    code, out, _ = run("bounds", "-r", "2", "-m", "4")
    data = json.loads(out)
    assert code == 0
    assert [o["lambdaMax"] for o in data["perObject"]] == ["22/7"] + ["10/3"] * 4 + ["4"] * 6
    assert data["totalBound"] == "19/4"
    assert data["simplices"]["Omega"]["sumBound"] == "5"


def test_bounds_small_codes():
    _, out, _ = run("bounds", "-r", "1", "-m", "2")
    data = json.loads(out)
    assert {o["lambdaMax"] for o in data["perObject"]} == {"2"}
    assert data["simplices"]["Omega"]["sumBound"] == "3"
    _, out, _ = run("bounds", "-r", "0", "-m", "3", "--format", "csv")
    assert out == "j,order,symbol,lambdaMax,numSecondSmallest,replication\n1,0,a0,8,7,1\n"


def test_check_inside_and_outside(tmp_path):
    code, out, _ = run("check", "-r", "1", "-m", "2", "--demand", "1,0.5,0.5")
    data = json.loads(out)
    assert code == 0 and data["verdict"] == "inside"
    assert data["demand"] == ["1", "1/2", "1/2"]
    demand = tmp_path / "lam.json"
    demand.write_text("[2.5, 0, 0]")
    code, out, _ = run("check", "-r", "1", "-m", "2", "--demand-file", str(demand))
    data = json.loads(out)
    assert data["verdict"] == "outside"
    assert data["maxScale"] == "4/5"
    assert "certificate" in data


def test_check_bad_length():
    code, _, err = run("check", "-r", "1", "-m", "2", "--demand", "1,1")
    assert code == 1 and "error" in err


def test_verify_small(tmp_path):
    out_file = tmp_path / "v.json"
    code, out, _ = run("verify", "-r", "1", "-m", "2", "--format", "json", "--out", str(out_file))
    assert code == 0 and out == ""
    data = json.loads(out_file.read_text())
    assert data["passed"]
    region = next(c for c in data["checks"] if c["name"] == "region-vs-simplex")
    assert region["detail"] == "region equals the maximal achievable simplex"


def test_argument_errors_exit_one():
    assert run("gen", "-r", "1")[0] == 1
    assert run("bounds", "-r", "1", "-m", "2", "--format", "xml")[0] == 1


@pytest.mark.parametrize(
    "args",
    [
        ("gen", "-r", "2", "-m", "4"),
        ("hypergraph", "-r", "1", "-m", "3", "--format", "csv"),
        ("check", "-r", "1", "-m", "2", "--demand", "1,1,1"),
    ],
)
def test_output_is_byte_identical(args):
    assert run(*args) == run(*args)


@pytest.mark.slow
def test_verify_rm_2_4():
    code, out, _ = run("verify", "-r", "2", "-m", "4")
    assert code == 0
    assert "all checks passed" in out


@pytest.mark.slow
def test_verify_m5_skips_oracle():
    code, out, _ = run("verify", "-r", "2", "-m", "5", "--format", "json")
    data = json.loads(out)
    assert code == 0
    skipped = {c["name"] for c in data["checks"] if c["status"] == "skip"}
    assert "oracle-agreement" in skipped
