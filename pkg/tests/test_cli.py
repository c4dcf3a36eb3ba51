"""End-to-end CLI exercises through main(argv), including exit codes."""

import json

import numpy as np
import pytest

from clsp.cli import main
from clsp.sampling import read_time_series
from clsp.signal import PeriodicSignal, sinusoid


@pytest.fixture
def sig_file(tmp_path):
    path = tmp_path / "sig.json"
    path.write_text(sinusoid(0.25).to_json())
    return str(path)


def test_simulate_then_estimate_round_trip(tmp_path, sig_file, capsys):
    lc = tmp_path / "lc.csv"
    rc = main([
        "simulate", "--signal", sig_file, "--law", "exponential", "--rate", "5",
        "--n", "400", "--snr-db", "10", "--seed", "7", "--output", str(lc),
    ])
    assert rc == 0
    ts = read_time_series(lc)
    assert ts.n == 400

    pg = tmp_path / "pg.csv"
    rc = main([
        "estimate", "--input", str(lc), "--method", "clsp",
        "--fmin", "0.2", "--fmax", "0.3", "--mesh", "1e-4", "--K", "1",
        "--refine", "--dump-periodogram", str(pg),
    ])
    assert rc == 0
    result = json.loads(capsys.readouterr().out)
    assert result["method"] == "CLSP"
    assert abs(result["f_hat"] - 0.25) < 2e-3

    header, first = pg.read_text().splitlines()[:2]
    assert header == "f,lambda"
    f0, v0 = first.split(",")
    assert float(f0) == 0.2 and float(v0) >= 0


def test_simulate_deterministic(tmp_path, sig_file):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for out in (a, b):
        main(["simulate", "--signal", sig_file, "--law", "exponential",
              "--rate", "5", "--n", "50", "--sigma", "0.1", "--seed", "3",
              "--output", str(out)])
    assert a.read_text() == b.read_text()


def test_fit_round_trip(tmp_path, capsys):
    s = PeriodicSignal(0.25, np.array([0.2, 0.3 - 0.1j, 0.0, 0.05j]))
    sig_path = tmp_path / "in.json"
    sig_path.write_text(s.to_json())
    lc = tmp_path / "lc.csv"
    main(["simulate", "--signal", str(sig_path), "--law", "exponential",
          "--rate", "5", "--n", "200", "--sigma", "0", "--seed", "1",
          "--output", str(lc)])
    rc = main(["fit", "--input", str(lc), "--period", "4.0", "--degree", "3"])
    assert rc == 0
    fitted = PeriodicSignal.from_json(capsys.readouterr().out)
    for k in range(4):
        assert fitted.coeff(k) == pytest.approx(s.coeff(k), abs=1e-8)


def test_estimate_ls_method(tmp_path, sig_file, capsys):
    lc = tmp_path / "lc.csv"
    main(["simulate", "--signal", sig_file, "--law", "exponential",
          "--rate", "5", "--n", "300", "--snr-db", "10", "--seed", "11",
          "--output", str(lc)])
    rc = main(["estimate", "--input", str(lc), "--method", "ls",
               "--fmin", "0.2", "--fmax", "0.3", "--mesh", "5e-4", "--K", "2"])
    assert rc == 0
    result = json.loads(capsys.readouterr().out)
    assert result["method"] == "LS"
    assert result["skipped_indices"] == []


def test_theory_report(sig_file, capsys):
    rc = main(["theory", "--signal", sig_file, "--law", "exponential",
               "--rate", "5", "--sigma", "0.07", "--n", "300", "600"])
    assert rc == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["i_star"] > 0
    assert payload["sigma_check_sq"] >= 1 / payload["i_star"]
    per_n = {row["n"]: row for row in payload["per_n"]}
    assert per_n[600]["optimal_sd"] / per_n[300]["optimal_sd"] == pytest.approx(
        2 ** (-1.5), rel=1e-12
    )
    assert per_n[300]["predicted_clsp_sd"] >= per_n[300]["optimal_sd"]


def test_mc_subcommand(tmp_path, sig_file, capsys):
    cfg = {
        "signal": json.loads(sinusoid(0.25).to_json()),
        "scheme": {"law": "exponential", "rate": 5.0},
        "n": 150,
        "snr_db": 10.0,
        "grid": {"f_min": 0.2, "f_max": 0.3, "mesh": 5e-4},
        "methods": [["CLSP", 1], ["LS", 1]],
        "replicates": 4,
        "base_seed": 99,
    }
    cfg_path = tmp_path / "cfg.json"
    cfg_path.write_text(json.dumps(cfg))
    out_csv = tmp_path / "stats.csv"
    rc = main(["mc", "--config", str(cfg_path), "--output-csv", str(out_csv)])
    assert rc == 0
    table = capsys.readouterr().out
    assert "optimal SD" in table and "CLSP" in table
    lines = out_csv.read_text().strip().splitlines()
    assert lines[0] == "method,K,bias,sd,rmse,failures,replicates"
    assert len(lines) == 3


class TestExitCodes:
    def test_missing_input_is_data_error(self, tmp_path):
        rc = main(["estimate", "--input", str(tmp_path / "nope.csv"),
                   "--method", "clsp", "--fmin", "0.2", "--fmax", "0.3",
                   "--mesh", "1e-3", "--K", "1"])
        assert rc == 3

    def test_bad_band_is_config_error(self, tmp_path, sig_file):
        lc = tmp_path / "lc.csv"
        main(["simulate", "--signal", sig_file, "--law", "exponential",
              "--rate", "5", "--n", "50", "--sigma", "0.1", "--seed", "2",
              "--output", str(lc)])
        rc = main(["estimate", "--input", str(lc), "--method", "clsp",
                   "--fmin", "0.4", "--fmax", "0.3", "--mesh", "1e-3", "--K", "1"])
        assert rc == 2

    def test_constant_signal_snr_is_config_error(self, tmp_path):
        path = tmp_path / "const.json"
        path.write_text(PeriodicSignal(1.0, [2.0]).to_json())
        rc = main(["simulate", "--signal", str(path), "--law", "exponential",
                   "--rate", "5", "--n", "10", "--snr-db", "10", "--seed", "1"])
        assert rc == 2

    def test_degenerate_fit_is_numerical_error(self, tmp_path):
        lc = tmp_path / "regular.csv"
        rows = "\n".join(f"{float(j)},{np.sin(j):.17g}" for j in range(1, 40))
        lc.write_text("t,y\n" + rows + "\n")
        rc = main(["fit", "--input", str(lc), "--period", "1.0", "--degree", "2"])
        assert rc == 4

    def test_malformed_config_json(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        rc = main(["mc", "--config", str(bad)])
        assert rc == 2
