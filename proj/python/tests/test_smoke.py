import json
import math
import os
import subprocess

import numpy as np
import pytest

import chlab


def brute_conv_p(y, w):
    d = np.abs(y[:, None] - y[None, :])
    return 0.5 * np.exp(-d) @ w


def test_scans_match_direct_sums():
    rng = np.random.default_rng(0)
    y = np.cumsum(rng.uniform(1e-3, 0.3, 300))
    w = rng.normal(size=300)
    left, right = chlab.exp_scans(y, w)
    d = y[:, None] - y[None, :]
    k = np.exp(-np.abs(d)) * w[None, :]
    np.testing.assert_allclose(left, np.tril(k).sum(axis=1), atol=1e-12)
    np.testing.assert_allclose(right, np.triu(k).sum(axis=1), atol=1e-12)
    np.testing.assert_allclose(chlab.conv_p(y, w), brute_conv_p(y, w), atol=1e-12)
    np.testing.assert_allclose(chlab.conv_dp(y, w), 0.5 * (np.sign(d) * k).sum(axis=1), atol=1e-12)


def test_invalid_nodes_raise():
    with pytest.raises(ValueError):
        chlab.conv_p(np.array([0.0, 0.0]), np.array([1.0, 1.0]))
    with pytest.raises(ValueError):
        chlab.grid_points(40.0, 100)


def test_grid_and_besov():
    x = chlab.grid_points(40.0, 1024)
    assert x[0] == -20.0 and len(x) == 1024
    u = np.cos(2 * math.pi * 2 * x / 40.0)
    # spectrum inside the low block: norm is 2^-s ||u||_2
    l2 = math.sqrt(np.sum(u * u) * (40.0 / 1024))
    assert chlab.besov_norm(u, 40.0, 1.5, 2.0, 1.0) == pytest.approx(2**-1.5 * l2, rel=1e-10)


def test_simulate_matches_reference():
    x = chlab.grid_points(40.0, 512)
    u = 0.5 * np.exp(-x * x)
    T = chlab.suggested_T("ch", u, 40.0)
    assert 0 < T < 0.5
    run = chlab.simulate("ch", u, 40.0, dt=2e-3)
    assert run["T"] == pytest.approx(T)
    assert run["breakdown"] is None
    assert run["min_y_xi"].min() >= 0.5
    ref = chlab.eulerian_integrate("ch", u, 40.0, 2e-3, T)
    assert np.max(np.abs(run["final_u"] - ref)) < 1e-4


def test_picard_converges():
    x = chlab.grid_points(40.0, 256)
    out = chlab.picard("ch", 0.3 * np.exp(-x * x), 40.0)
    assert out["converged"]
    inc = out["increments"]
    assert np.all(inc[1:] <= 0.8 * inc[:-1])
    with pytest.raises(ValueError):
        chlab.picard("2ch", 0 * x, 40.0)


def test_peakons():
    assert chlab.hamiltonian([1.0, 1.0], [0.0, math.log(2.0)]) == pytest.approx(1.5)
    out = chlab.peakon_integrate([1.0], [0.0], 1e-2, 1.0)
    assert out["q"][0] == pytest.approx(1.0)
    assert out["collision_time"] is None
    rows = chlab.w1inf_demo(1.0, [1e-2, 1e-3, 0.0])
    assert rows[1]["w1inf_ratio"] >= 10 and rows[1]["lp_ratio"] <= 5
    assert rows[2]["w1inf_ratio"] == 1.0


def test_breakdown_is_reported():
    x = chlab.grid_points(40.0, 1024)
    u = np.exp(-np.abs(x + 1)) - np.exp(-np.abs(x - 1))
    run = chlab.simulate("ch", u, 40.0, dt=2e-3, T=10.0)
    assert run["breakdown"] is not None
    assert run["breakdown"]["t"] < 10.0


def test_run_cli_in_process(tmp_path):
    code, out, err = chlab.run_cli(["--set", "grid.N=64", "--set", "solver.dt=0.05", "--out", str(tmp_path)])
    assert code == 0, err
    manifest = json.loads((tmp_path / "manifest.json").read_text())
    assert manifest["command"] == "simulate"
    code, _, err = chlab.run_cli(["--set", "grid.N=100"])
    assert code == 2 and "grid.N" in err


@pytest.mark.skipif("CHLAB_CLI" not in os.environ, reason="CLI path not provided")
def test_cli_executable(tmp_path):
    exe = os.environ["CHLAB_CLI"]
    cfg = tmp_path / "run.toml"
    cfg.write_text('command = "peakon"\n[peakon]\nT = 1.0\nM = 4\n')
    res = subprocess.run([exe, "--config", str(cfg), "--out", str(tmp_path / "o"), "--seed", "5"],
                         capture_output=True, text=True)
    assert res.returncode == 0, res.stderr
    lines = (tmp_path / "o" / "peakon.jsonl").read_text().splitlines()
    assert json.loads(lines[0])["t"] == 0.0
    assert subprocess.run([exe, "--version"], capture_output=True, text=True).stdout.strip() == chlab.__version__
