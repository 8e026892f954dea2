"""End-to-end command line tests: file outputs, determinism, exit codes."""

import json
import math
import subprocess
import sys

import pytest

CLI = [sys.executable, "-m", "diskflow.cli"]


def run(*argv, cwd=None):
    return subprocess.run(
        CLI + list(argv), capture_output=True, text=True, cwd=cwd
    )


def write_json(path, obj):
    path.write_text(json.dumps(obj))
    return str(path)


@pytest.fixture
def interior_region_config(tmp_path):
    return write_json(
        tmp_path / "cfg_region.json",
        {"kind": "interior", "tau": {"re": 0.5, "im": 0.0}, "sigmas": [0.0], "lambdas": [-1.0]},
    )


def test_region_interior_half_case(tmp_path, interior_region_config):
    out = tmp_path / "out"
    res = run("region", "--config", interior_region_config, "--out", str(out))
    assert res.returncode == 0, res.stderr
    report = json.loads((out / "region.json").read_text())
    assert report["kind"] == "interior"
    assert report["base"]["type"] == "disk"
    assert report["base"]["center"]["re"] == pytest.approx(2.0)
    assert report["base"]["center"]["im"] == pytest.approx(0.0)
    assert report["base"]["radius"] == pytest.approx(2.0)
    assert report["refined"] is None


def test_region_origin_two_point_case(tmp_path):
    cfg = write_json(
        tmp_path / "cfg_region.json",
        {
            "kind": "origin",
            "tau": {"re": 0.0, "im": 0.0},
            "sigmas": [0.0, math.pi],
            "lambdas": [-1.0, -1.0],
        },
    )
    out = tmp_path / "out"
    res = run("region", "--config", cfg, "--out", str(out))
    assert res.returncode == 0, res.stderr
    report = json.loads((out / "region.json").read_text())
    assert report["base"]["center"]["re"] == pytest.approx(0.5)
    assert report["base"]["radius"] == pytest.approx(0.5)


def test_region_csv_and_svg_outputs(tmp_path, interior_region_config):
    out = tmp_path / "out"
    res = run(
        "region",
        "--config",
        interior_region_config,
        "--out",
        str(out),
        "--format",
        "csv",
        "--format",
        "svg",
    )
    assert res.returncode == 0, res.stderr
    lines = (out / "region.csv").read_text().splitlines()
    assert lines[0] == "param,re,im"
    assert len(lines) == 721  # header + samples
    first = lines[1].split(",")
    assert float(first[1]) == pytest.approx(4.0)  # center 2 + radius 2 at angle 0
    svg = (out / "region.svg").read_text()
    assert 'viewBox="-1.2 -1.2 2.4 2.4"' in svg
    assert 'stroke-width="0.01"' in svg
    assert svg.count("<path") == 2  # unit circle + region boundary


def test_region_refined_interval(tmp_path):
    cfg = write_json(
        tmp_path / "cfg_region.json",
        {
            "kind": "boundary",
            "tau": {"re": 1.0, "im": 0.0},
            "sigmas": [math.pi],
            "lambdas": [-1.0],
            "zeta": {"re": 0.2, "im": 0.05},
        },
    )
    out = tmp_path / "out"
    res = run("region", "--config", cfg, "--out", str(out))
    assert res.returncode == 0, res.stderr
    report = json.loads((out / "region.json").read_text())
    assert report["refined"]["type"] == "interval"
    assert report["refined"]["lo"] == 0.0
    assert report["refined"]["hi"] > 0.0


def test_flow_outputs_against_oracle(tmp_path):
    cfg = write_json(
        tmp_path / "cfg_flow.json",
        {
            "generator": {
                "tau": {"re": 0.0, "im": 0.0},
                "sigmas": [0.0],
                "lambdas": [-2.0],
                "p": {"atoms": [], "gamma": 0.0},
            },
            "z0": {"re": 0.5, "im": 0.0},
            "t": 0.1,
        },
    )
    out = tmp_path / "out"
    res = run("flow", "--config", cfg, "--out", str(out), "--format", "csv", "--format", "json")
    assert res.returncode == 0, res.stderr
    report = json.loads((out / "flow.json").read_text())
    assert report["endpoint"]["re"] == pytest.approx(0.43220718724561547, abs=1e-8)
    assert report["endpoint"]["im"] == pytest.approx(0.0, abs=1e-10)
    lines = (out / "trajectory.csv").read_text().splitlines()
    assert lines[0] == "t,re,im,dre,dim"
    assert len(lines) == 201
    last = lines[-1].split(",")
    assert float(last[0]) == pytest.approx(0.1)
    assert float(last[1]) == pytest.approx(report["endpoint"]["re"], abs=1e-12)


def test_verify_exit_zero_and_deterministic(tmp_path):
    out1 = tmp_path / "a"
    out2 = tmp_path / "b"
    args = ("verify", "--samples", "200", "--seed", "11")
    res1 = run(*args, "--out", str(out1))
    res2 = run(*args, "--out", str(out2))
    assert res1.returncode == 0, res1.stdout + res1.stderr
    assert res2.returncode == 0
    assert res1.stdout == res2.stdout
    assert (out1 / "verify.json").read_bytes() == (out2 / "verify.json").read_bytes()
    report = json.loads((out1 / "verify.json").read_text())
    assert sum(report["violations"].values()) == 0
    assert report["samples"] == 200
    assert set(report["checked"]) >= {"origin_in_Z", "spectral_in_range"}


def test_verify_passes_at_extreme_tolerance(tmp_path):
    # slacks are nonnegative up to sign, so even tolerance 1e-15 passes
    res = run(
        "verify", "--samples", "200", "--seed", "3", "--tolerance", "1e-15",
        "--out", str(tmp_path),
    )
    assert res.returncode == 0, res.stdout


def test_verify_seed_changes_output(tmp_path):
    res1 = run("verify", "--samples", "100", "--seed", "1", "--out", str(tmp_path / "a"))
    res2 = run("verify", "--samples", "100", "--seed", "2", "--out", str(tmp_path / "b"))
    assert res1.stdout != res2.stdout


def test_cowen_pommerenke_report(tmp_path):
    cfg = write_json(
        tmp_path / "cfg_cp.json",
        {
            "tau": {"re": 0.0, "im": 0.0},
            "sigmas": [0.0, math.pi],
            "target": [math.e, math.e],
            "fields": 16,
            "sweep": 8,
        },
    )
    out = tmp_path / "out"
    res = run(
        "cowen-pommerenke", "--config", cfg, "--out", str(out), "--seed", "5",
        "--format", "json", "--format", "csv", "--format", "svg",
    )
    assert res.returncode == 0, res.stdout + res.stderr
    report = json.loads((out / "cowen_pommerenke.json").read_text())
    assert report["target"] == [math.e, math.e]
    assert report["region"]["center"] == pytest.approx(0.5)
    assert report["region"]["radius"] == pytest.approx(0.5)
    assert len(report["points"]) == 1 + 8 + 16
    for p in report["points"]:
        assert p["slack"] >= -1e-8
    # the extremal field with c = 0 sits on the far edge of the disk
    assert report["points"][0]["re"] == pytest.approx(1.0, abs=1e-10)
    assert (out / "cowen_pommerenke.csv").read_text().splitlines()[0] == "param,re,im"
    assert "<svg" in (out / "cowen_pommerenke.svg").read_text()


def test_cowen_pommerenke_boundary_tau(tmp_path):
    cfg = write_json(
        tmp_path / "cfg_cp.json",
        {
            "tau": {"re": 1.0, "im": 0.0},
            "sigmas": [math.pi / 2, math.pi],
            "target": [math.e, math.e],
            "fields": 8,
        },
    )
    out = tmp_path / "out"
    res = run("cowen-pommerenke", "--config", cfg, "--out", str(out))
    assert res.returncode == 0, res.stdout + res.stderr
    report = json.loads((out / "cowen_pommerenke.json").read_text())
    # interval [0, 1/2] reported as center/radius
    assert report["region"]["center"] == pytest.approx(0.25)
    assert report["region"]["radius"] == pytest.approx(0.25)
    assert report["points"][0]["re"] == pytest.approx(0.5, abs=1e-10)
    assert report["points"][0]["im"] == pytest.approx(0.0, abs=1e-12)


def test_cowen_pommerenke_impossible_tolerance_exits_4(tmp_path):
    cfg = write_json(
        tmp_path / "cfg_cp.json",
        {
            "tau": {"re": 0.0, "im": 0.0},
            "sigmas": [0.0],
            "target": [math.e],
            "fields": 2,
            "sweep": 2,
        },
    )
    # demanding slack >= 1 everywhere cannot hold on the boundary point
    res = run(
        "cowen-pommerenke", "--config", cfg, "--out", str(tmp_path), "--tolerance", "-1",
    )
    assert res.returncode == 4


def test_counterexample_table(tmp_path):
    res = run("counterexample", "--out", str(tmp_path))
    assert res.returncode == 0, res.stderr
    lines = (tmp_path / "counterexample.csv").read_text().splitlines()
    assert lines[0] == "kind,param,value"
    decay = [l.split(",") for l in lines[1:] if l.startswith("decay")]
    div = [l.split(",") for l in lines[1:] if l.startswith("divergence")]
    assert len(decay) == 6 and len(div) == 4
    vals = [float(r[2]) for r in decay]
    assert all(a > b for a, b in zip(vals, vals[1:]))
    assert vals[-1] < 0.2
    for row in div:
        delta = float(row[1])
        assert float(row[2]) == pytest.approx(math.log(math.log(1.0 / delta)), abs=1e-9)


def test_missing_config_exits_2(tmp_path):
    res = run("region", "--config", str(tmp_path / "nope.json"), "--out", str(tmp_path))
    assert res.returncode == 2


def test_malformed_config_exits_2(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    res = run("region", "--config", str(bad), "--out", str(tmp_path))
    assert res.returncode == 2


def test_domain_error_exits_3(tmp_path):
    cfg = write_json(
        tmp_path / "cfg_region.json",
        {"kind": "interior", "tau": {"re": 0.5, "im": 0.0}, "sigmas": [0.0], "lambdas": [1.0]},
    )
    res = run("region", "--config", cfg, "--out", str(tmp_path))
    assert res.returncode == 3


def test_unknown_command_exits_2():
    res = run("frobnicate")
    assert res.returncode == 2
