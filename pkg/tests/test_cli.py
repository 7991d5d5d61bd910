import csv
import shutil
import subprocess

import numpy as np
import pytest

from probeopt.cli import main, psi_grid
from probeopt.optimizers import evaluate_sinr
from probeopt.scene import bundled_scenario_path, load_scenario, synthesize_channels

NEAR = str(bundled_scenario_path("near"))
FAR = str(bundled_scenario_path("far"))


def run(tmp_path, *args, name="out.csv"):
    out = tmp_path / name
    code = main(["run", *args, "--out", str(out)])
    return code, out


def read(path):
    with open(path, newline="", encoding="utf-8") as fh:
        return list(csv.DictReader(fh))


def assert_clean(path):
    raw = path.read_bytes()
    assert b"\r" not in raw
    assert raw.endswith(b"\n")
    for row in csv.reader(raw.decode().splitlines()):
        assert not {c.lower() for c in row} & {"nan", "inf", "-inf"}


def test_converge_monotone(tmp_path):
    code, out = run(tmp_path, "--scenario", NEAR, "--experiment", "converge",
                    "--algorithm", "mrc-joint", "--seeds", "7")
    assert code == 0
    assert_clean(out)
    rows = read(out)
    db = [float(r["objective_db"]) for r in rows]
    assert [int(r["q"]) for r in rows] == list(range(1, len(rows) + 1))
    assert np.all(np.diff(db) <= 1e-9)


def test_sweep_records_infeasible_rows_and_revalidates(tmp_path):
    code, out = run(tmp_path, "--scenario", NEAR, "--experiment", "sweep",
                    "--algorithm", "mrc-joint,mmse-alt", "--psi-start", "3",
                    "--psi-end", "4", "--psi-step", "0.5", "--seeds", "0")
    assert code == 0
    assert_clean(out)
    rows = read(out)
    mrc = {float(r["psi"]): r["status"] for r in rows if r["algorithm"] == "mrc-joint"}
    mmse = {float(r["psi"]): r["status"] for r in rows if r["algorithm"] == "mmse-alt"}
    assert mrc[3.0] == "converged" and mrc[4.0] == "infeasible"
    assert set(mmse.values()) == {"converged"}
    sc = load_scenario(NEAR)
    ch = synthesize_channels(sc, 0)
    bad = [r for r in rows if r["status"] == "infeasible"]
    assert all(r["objective"] == "" for r in bad)
    kind = {"mrc-joint": "mrc", "mmse-alt": "mmse"}
    rng = np.random.default_rng(0)
    good = [r for r in rows if r["status"] == "converged"]
    for r in rng.choice(good, size=min(5, len(good)), replace=False):
        p = np.array([float(r["p1"]), float(r["p2"])])
        a = np.array([float(r[f"alpha{k}"]) for k in (1, 2, 3)])
        rho = evaluate_sinr(sc, ch, p, a, kind[r["algorithm"]]).sinr
        assert rho.min() / float(r["psi"]) >= 1 - 1e-6
        assert float(r["min_sinr_ratio"]) == pytest.approx(rho.min() / float(r["psi"]), rel=1e-6)


def test_compare_columns(tmp_path):
    code, out = run(tmp_path, "--scenario", FAR, "--experiment", "compare",
                    "--algorithm", "mmse-alt", "--seeds", "1")
    assert code == 0
    rows = read(out)
    assert {r["receiver"] for r in rows} == {"mrc", "zf", "mmse"}
    by = {(r["receiver"], r["target"]): float(r["sinr"]) for r in rows}
    for t in ("1", "2"):
        assert by[("mmse", t)] >= by[("mrc", t)] - 1e-9
        assert by[("mmse", t)] >= by[("zf", t)] - 1e-9


def test_coherence_experiment(tmp_path):
    code, out = run(tmp_path, "--scenario", NEAR, "--experiment", "coherence",
                    "--seeds", "0,1,2,3", "--k-values", "5,50")
    assert code == 0
    rows = read(out)
    assert [int(r["K"]) for r in rows] == [5, 50]
    assert float(rows[1]["mean_mu"]) < float(rows[0]["mean_mu"])


def test_characterize_experiment(tmp_path):
    code, out = run(tmp_path, "--scenario", FAR, "--experiment", "characterize",
                    "--algorithm", "mmse-alt", "--seeds", "0", "--snapshots", "2000")
    assert code == 0
    rows = read(out)
    assert rows and all(float(r["q_estimate"]) > 0 for r in rows)


@pytest.mark.parametrize("experiment,extra", [
    ("converge", ["--algorithm", "all"]),
    ("sweep", ["--psi-start", "0.5", "--psi-end", "1", "--psi-step", "0.5"]),
    ("compare", []),
    ("coherence", ["--k-values", "5,10"]),
    ("characterize", ["--snapshots", "500", "--algorithm", "mmse-alt"]),
])
def test_byte_identical_reruns(tmp_path, experiment, extra):
    args = ["--scenario", FAR, "--experiment", experiment, "--seeds", "2,0", *extra]
    _, a = run(tmp_path, *args, name="a.csv")
    _, b = run(tmp_path, *args, name="b.csv")
    assert a.read_bytes() == b.read_bytes()


def test_empty_seeds_is_usage_error(tmp_path):
    with pytest.raises(SystemExit) as err:
        run(tmp_path, "--scenario", NEAR, "--experiment", "converge", "--seeds", "")
    assert err.value.code == 2


def test_sweep_requires_grid(tmp_path):
    with pytest.raises(SystemExit) as err:
        run(tmp_path, "--scenario", NEAR, "--experiment", "sweep", "--seeds", "0")
    assert err.value.code == 2
    with pytest.raises(SystemExit):
        run(tmp_path, "--scenario", NEAR, "--experiment", "sweep", "--seeds", "0",
            "--psi-start", "1", "--psi-end", "2", "--psi-step", "0")


def test_unknown_algorithm(tmp_path):
    with pytest.raises(SystemExit) as err:
        run(tmp_path, "--scenario", NEAR, "--experiment", "converge", "--seeds", "0",
            "--algorithm", "nope")
    assert err.value.code == 2


def test_malformed_scenario(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{\n  \"sensor_count\": 3,,\n}\n")
    code, _ = run(tmp_path, "--scenario", str(bad), "--experiment", "converge", "--seeds", "0")
    assert code != 0
    assert "bad.json:2:" in capsys.readouterr().err


def test_io_errors(tmp_path):
    code, _ = run(tmp_path, "--scenario", str(tmp_path / "missing.json"),
                  "--experiment", "converge", "--seeds", "0")
    assert code != 0
    code = main(["run", "--scenario", NEAR, "--experiment", "coherence", "--seeds", "0",
                 "--out", str(tmp_path / "no" / "dir.csv")])
    assert code != 0


def test_psi_grid_inclusive():
    assert psi_grid(0.1, 0.5, 0.1) == [0.1, 0.2, 0.3, 0.4, 0.5]
    assert psi_grid(1.0, 1.0, 0.5) == [1.0]


@pytest.mark.skipif(shutil.which("probe-opt") is None, reason="console script not installed")
def test_console_script(tmp_path):
    out = tmp_path / "c.csv"
    proc = subprocess.run(["probe-opt", "run", "--scenario", FAR, "--experiment", "coherence",
                           "--seeds", "0", "--k-values", "5", "--out", str(out)],
                          capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    assert out.read_text().startswith("K,mean_mu,std_mu,seeds\n")
    proc = subprocess.run(["probe-opt", "run", "--scenario", FAR, "--experiment", "converge",
                           "--seeds", "", "--out", str(out)], capture_output=True, text=True)
    assert proc.returncode == 2
