import csv
import io
import subprocess
import sys

import pytest

from polarflip.sim.cli import build_parser, main, make_config, resolve
from polarflip.sim.report import CSV_COLUMNS

FAST = ["--n", "8", "--k", "100", "--r", "16", "--chunk-size", "100"]


def resolved(argv):
    return resolve(build_parser().parse_args(argv))


def test_defaults():
    cfg = make_config(resolved(["simulate"]))
    assert (cfg.n, cfg.K, cfg.r, cfg.crc_poly) == (10, 512, 16, 0x8005)
    assert cfg.decoder == "scflip1" and cfg.flip.t1 == 20 and cfg.flip.alpha1 == 0.3


def test_config_file_then_flags(tmp_path):
    path = tmp_path / "c.cfg"
    path.write_text("decoder = scflip2\nt21 = 5\nt22 = 5\nsnr = 1.0:2.0:0.5\nalpha2=0.6\n")
    values = resolved(["simulate", "--config", str(path), "--t22", "3", "--seed", "0x10"])
    cfg = make_config(values)
    assert cfg.decoder == "scflip2" and cfg.snrs == (1.0, 1.5, 2.0)
    assert (cfg.flip.t21, cfg.flip.t22, cfg.flip.alpha2) == (5, 3, 0.6)
    assert cfg.seed == 16


def test_unknown_config_key(tmp_path, capsys):
    path = tmp_path / "c.cfg"
    path.write_text("colour = blue\n")
    assert main(["simulate", "--config", str(path)]) == 2
    assert "colour" in capsys.readouterr().err


def test_invalid_parameters_exit_2(capsys):
    assert main(["simulate", "--t1", "2", "--t21", "3"]) == 2
    assert main(["simulate", "--k", "2000"]) == 2
    assert main(["sweep-alpha", "--alpha-grid", "0,0.3", "--snr", "2.0"] + FAST) == 2


def test_bad_choice_is_usage_error():
    with pytest.raises(SystemExit) as exc:
        main(["simulate", "--decoder", "scl"])
    assert exc.value.code == 2


def test_unwritable_out_exit_1(tmp_path):
    assert main(["simulate", "--out", str(tmp_path / "no" / "f.csv")]) == 1


def test_simulate_to_stdout(capsys):
    argv = ["simulate", "--decoder", "sc", "--snr", "240", "--max-frames", "20",
            "--min-errors", "1"] + FAST
    assert main(argv) == 0
    rows = list(csv.DictReader(io.StringIO(capsys.readouterr().out)))
    assert len(rows) == 1 and rows[0]["frames"] == "20" and rows[0]["fer"] == "0.0"
    assert list(rows[0]) == CSV_COLUMNS


def test_simulate_to_file(tmp_path):
    out = tmp_path / "fer.csv"
    argv = ["simulate", "--snr", "240,241", "--max-frames", "10", "--min-errors", "1",
            "--out", str(out)] + FAST
    assert main(argv) == 0
    assert len(out.read_text().splitlines()) == 3


def test_complexity_and_studies(capsys):
    common = ["--snr", "1.5", "--max-frames", "20000"] + FAST
    assert main(["complexity", "--max-frames", "300", "--min-errors", "1", "--snr", "240"]
                + FAST[:-2]) == 0
    assert "nc_ave" in capsys.readouterr().out
    assert main(["loss1", "--t1-grid", "1,5,116", "--min-order1", "50"] + common) == 0
    rows = list(csv.DictReader(io.StringIO(capsys.readouterr().out)))
    assert [r["t1"] for r in rows] == ["1", "5", "116"]
    assert float(rows[-1]["loss_unconditional"]) == 0.0
    assert main(["sweep-alpha", "--alpha-grid", "0.4", "--min-frames", "50"] + common) == 0
    captured = capsys.readouterr()
    assert "best alpha = 0.4" in captured.err


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "polarflip", "--help"], capture_output=True,
                         text=True)
    assert res.returncode == 0 and "simulate" in res.stdout
