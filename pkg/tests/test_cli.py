"""Tests for the command-line interface: outputs, determinism, exit codes."""

import csv
import json

import numpy as np
import pytest

from nhmagic.cli import (
    EXIT_ACCEPTANCE,
    EXIT_CONFIG,
    EXIT_NUMERICAL,
    EXIT_OK,
    main,
)

SQ2 = np.sqrt(2.0)


def _write_config(tmp_path, name, cfg):
    path = tmp_path / name
    path.write_text(json.dumps(cfg))
    return path


def _read_csv(path):
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        rows = list(reader)
    return header, rows


def test_spectrum_command(tmp_path):
    cfg = _write_config(tmp_path, "cfg.json", {"hopping": "real", "Gamma": 2.0 * SQ2})
    out = tmp_path / "run"
    assert main(["spectrum", "--config", str(cfg), "--out", str(out)]) == EXIT_OK
    doc = json.loads((out / "spectrum.json").read_text())
    assert abs(doc["eps_plus"][1] - (-(SQ2 - 1.0))) < 1e-10
    assert abs(doc["gap"] - 2.0) < 1e-10
    assert abs(doc["steady_sre"] - np.log2(4.0 / 3.0)) < 1e-10
    assert np.abs(np.array(doc["steady_bloch"]) - [0.0, -1.0 / SQ2, 1.0 / SQ2]).max() < 1e-10
    meta = json.loads((out / "spectrum.meta.json").read_text())
    assert meta["command"] == "spectrum"
    assert "version" in meta and "timestamp" in meta


def test_evolve_pure_command(tmp_path):
    cfg = _write_config(
        tmp_path,
        "cfg.json",
        {"mode": "pure", "hopping": "real", "Gamma": 2.0 * SQ2, "psi0": "plus",
         "t_max": 5.0, "n_times": 50},
    )
    out = tmp_path / "run"
    assert main(["evolve", "--config", str(cfg), "--out", str(out)]) == EXIT_OK
    header, rows = _read_csv(out / "evolve.csv")
    assert header == ["t", "x", "y", "z", "m2_tilde", "purity", "success_rate"]
    assert len(rows) == 51
    # success rate starts at 1 and decreases; magic approaches log2(4/3)
    assert float(rows[0][6]) == pytest.approx(1.0, abs=1e-12)
    assert float(rows[-1][6]) < 1.0
    assert float(rows[-1][4]) == pytest.approx(np.log2(4.0 / 3.0), abs=1e-3)


def test_evolve_multi_case_and_average(tmp_path):
    cfg = _write_config(
        tmp_path,
        "cfg.json",
        {
            "hopping": "real", "Gamma": 2.8, "t_max": 2.0, "n_times": 20,
            "cases": [
                {"label": "avg", "mode": "average", "gamma": 0.01, "r0": [0, 0, 0]},
                {"label": "dens", "mode": "density", "r0": [0, 0, 0]},
            ],
        },
    )
    out = tmp_path / "run"
    assert main(["evolve", "--config", str(cfg), "--out", str(out)]) == EXIT_OK
    assert (out / "avg.csv").exists() and (out / "dens.csv").exists()
    assert (out / "avg.meta.json").exists()


def test_trajectories_outputs_and_determinism(tmp_path):
    cfg = _write_config(
        tmp_path,
        "cfg.json",
        {"hopping": "real", "Gamma": 2.8, "gamma": 0.01, "N_t": 100, "N_av": 16,
         "T": 1.0},
    )
    out1, out2 = tmp_path / "a", tmp_path / "b"
    for out in (out1, out2):
        code = main(["trajectories", "--config", str(cfg), "--out", str(out), "--seed", "7"])
        assert code == EXIT_OK
    assert (out1 / "mean.csv").read_bytes() == (out2 / "mean.csv").read_bytes()
    assert (out1 / "histograms.csv").read_bytes() == (out2 / "histograms.csv").read_bytes()

    header, rows = _read_csv(out1 / "mean.csv")
    assert header == ["t", "x", "y", "z", "x_weighted", "y_weighted", "z_weighted",
                      "sre_of_mean", "mean_of_sre"]
    assert len(rows) == 101
    meta = json.loads((out1 / "trajectories.meta.json").read_text())
    assert meta["master_seed"] == 7
    assert len(meta["trajectory_seeds"]) == 16

    out3 = tmp_path / "c"
    assert main(["trajectories", "--config", str(cfg), "--out", str(out3), "--seed", "8"]) == EXIT_OK
    assert (out1 / "mean.csv").read_bytes() != (out3 / "mean.csv").read_bytes()


def test_trajectories_per_trajectory_output(tmp_path):
    cfg = _write_config(
        tmp_path,
        "cfg.json",
        {"hopping": "real", "Gamma": 2.8, "gamma": 0.01, "N_t": 50, "N_av": 6,
         "T": 0.5, "per_trajectory": True, "trajectory_stride": 2},
    )
    out = tmp_path / "run"
    assert main(["trajectories", "--config", str(cfg), "--out", str(out), "--seed", "1"]) == EXIT_OK
    header, rows = _read_csv(out / "trajectories.csv")
    assert header == ["trajectory", "t", "x", "y", "z"]
    assert len(rows) == 3 * 51  # trajectories 0, 2, 4


def test_sweep_steady_command(tmp_path):
    cfg = _write_config(
        tmp_path,
        "cfg.json",
        {
            "hopping": "real", "quantity": "steady",
            "gamma_axis": {"lo": 0.0, "hi": 0.12, "n": 9},
            "Gamma_axis": {"lo": 2.2, "hi": 5.0, "n": 11},
        },
    )
    out = tmp_path / "run"
    assert main(["sweep", "--config", str(cfg), "--out", str(out)]) == EXIT_OK
    header, rows = _read_csv(out / "matrix.csv")
    assert header == [f"g{j}" for j in range(9)]
    assert len(rows) == 11
    axes_header, axes_rows = _read_csv(out / "axes.csv")
    assert axes_header == ["axis", "index", "value"]
    assert len(axes_rows) == 9 + 11
    meta = json.loads((out / "sweep.meta.json").read_text())
    assert abs(meta["maximum"]["value"] - 0.450) < 0.005


def test_sweep_gap_weighted_writes_mask(tmp_path):
    cfg = _write_config(
        tmp_path,
        "cfg.json",
        {
            "hopping": "real", "quantity": "gap_weighted",
            "gamma_axis": {"lo": 0.0, "hi": 0.1, "n": 5},
            "Gamma_axis": {"lo": 2.5, "hi": 5.0, "n": 6},
        },
    )
    out = tmp_path / "run"
    assert main(["sweep", "--config", str(cfg), "--out", str(out)]) == EXIT_OK
    assert (out / "mask.csv").exists()
    _, rows = _read_csv(out / "mask.csv")
    assert all(float(v) in (0.0, 1.0) for row in rows for v in row)


def test_csv_values_round_trip_exactly(tmp_path):
    cfg = _write_config(tmp_path, "cfg.json", {
        "hopping": "real", "quantity": "steady",
        "gamma_axis": {"lo": 0.0, "hi": 0.1, "n": 3},
        "Gamma_axis": {"lo": 2.5, "hi": 3.5, "n": 3},
    })
    out = tmp_path / "run"
    assert main(["sweep", "--config", str(cfg), "--out", str(out)]) == EXIT_OK
    from nhmagic.antidephasing import SDQParams, steady_sre

    _, rows = _read_csv(out / "matrix.csv")
    gammas = np.linspace(0.0, 0.1, 3)
    Gammas = np.linspace(2.5, 3.5, 3)
    for i, row in enumerate(rows):
        for j, cell in enumerate(row):
            assert float(cell) == steady_sre(SDQParams("real", Gammas[i], gammas[j]))


def test_missing_config_file_is_a_config_error(tmp_path):
    code = main(["spectrum", "--config", str(tmp_path / "nope.json"), "--out", str(tmp_path)])
    assert code == EXIT_CONFIG


def test_invalid_json_is_a_config_error(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["spectrum", "--config", str(bad), "--out", str(tmp_path)]) == EXIT_CONFIG


def test_missing_field_is_a_config_error(tmp_path):
    cfg = _write_config(tmp_path, "cfg.json", {"hopping": "real"})  # no Gamma
    assert main(["spectrum", "--config", str(cfg), "--out", str(tmp_path)]) == EXIT_CONFIG


def test_unknown_mode_is_a_config_error(tmp_path):
    cfg = _write_config(tmp_path, "cfg.json", {"mode": "sideways", "Gamma": 2.8, "t_max": 1.0})
    assert main(["evolve", "--config", str(cfg), "--out", str(tmp_path)]) == EXIT_CONFIG


def test_integration_instability_is_a_numerical_error(tmp_path):
    # deliberately coarse step at strong noise: the integrator must abort
    cfg = _write_config(
        tmp_path,
        "cfg.json",
        {"hopping": "real", "Gamma": 2.8, "gamma": 0.1, "N_t": 150, "N_av": 100,
         "horizon_gaps": 5.0},
    )
    code = main(["trajectories", "--config", str(cfg), "--out", str(tmp_path), "--seed", "0"])
    assert code == EXIT_NUMERICAL


def test_verify_corruption_hook_turns_the_suite_red(tmp_path, monkeypatch):
    monkeypatch.setenv("NHMAGIC_VERIFY_CORRUPT", "1")
    # quick subset only: the corrupted reference constant must flip A1 to FAIL
    assert main(["verify", "--quick"]) == EXIT_ACCEPTANCE
