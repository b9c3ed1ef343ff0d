import os

import pytest

from spinwork.cli import EXIT_OK, EXIT_RUNTIME, EXIT_VALIDATION, main
from spinwork.presets import PRESETS
from spinwork.sweep import expand_axes, parse_axis
from spinwork.protocols import ProtocolConfig

FAST_TD = "kind = time_dependent\ntwo_l = 2\nbeta = 1\nn_lowering_steps = 40\n"


def write_cfg(tmp_path, text, name="run.cfg"):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def test_run_writes_csv_png_and_summary(tmp_path):
    cfg = write_cfg(tmp_path, FAST_TD)
    out = tmp_path / "out"
    assert main(["run", "--config", cfg, "--out", str(out)]) == EXIT_OK
    assert (out / "run.csv").exists()
    assert (out / "run.png").exists()
    assert (out / "run_summary.csv").exists()
    header = (out / "run.csv").read_text().splitlines()[0]
    assert header.startswith("t,Lx,Ly,Lz,")


def test_run_rejects_missing_config(tmp_path):
    code = main(["run", "--config", str(tmp_path / "nope.cfg"),
                 "--out", str(tmp_path)])
    assert code == EXIT_VALIDATION


def test_run_rejects_invalid_config(tmp_path):
    cfg = write_cfg(tmp_path, "kind = time_dependent\ntwo_l = -2\nbeta = 1\n")
    assert main(["run", "--config", cfg, "--out", str(tmp_path)]) == EXIT_VALIDATION


def test_bad_arguments_exit_validation():
    assert main(["run", "--config"]) == EXIT_VALIDATION
    assert main(["bogus-command"]) == EXIT_VALIDATION


def test_preset_unknown_figure(tmp_path):
    code = main(["preset", "--figure", "fig99", "--out", str(tmp_path)])
    assert code == EXIT_VALIDATION


def test_preset_fig3_outputs(tmp_path):
    out = tmp_path / "fig3"
    assert main(["preset", "--figure", "fig3", "--out", str(out)]) == EXIT_OK
    names = sorted(os.listdir(out))
    assert names == ["fig3_l1.csv", "fig3_l1.png", "fig3_summary.csv",
                     "presets.txt"]
    table = (out / "presets.txt").read_text()
    # The table restates every preset, not just the one that ran.
    for fig in PRESETS:
        assert f"[{fig}/" in table


def test_sweep_outputs_are_deterministic(tmp_path, monkeypatch):
    cfg = write_cfg(tmp_path, FAST_TD)
    outputs = {}
    for threads in ("1", "2"):
        out = tmp_path / f"sweep{threads}"
        monkeypatch.setenv("QTS_THREADS", threads)
        code = main(["sweep", "--config", cfg,
                     "--axis", "two_l=2,4", "--axis", "beta=0.5,1.0",
                     "--out", str(out)])
        assert code == EXIT_OK
        outputs[threads] = {
            name: (out / name).read_bytes() for name in sorted(os.listdir(out))
        }
    assert outputs["1"] == outputs["2"]
    names = set(outputs["1"])
    assert "summary.csv" in names
    assert "two_l=2__beta=0.5.csv" in names
    assert "two_l=4__beta=1.0.csv" in names


def test_sweep_rejects_bad_axis(tmp_path):
    cfg = write_cfg(tmp_path, FAST_TD)
    assert main(["sweep", "--config", cfg, "--axis", "two_l",
                 "--out", str(tmp_path / "s")]) == EXIT_VALIDATION
    assert main(["sweep", "--config", cfg, "--axis", "bogus=1,2",
                 "--out", str(tmp_path / "s")]) == EXIT_VALIDATION
    assert main(["sweep", "--config", cfg,
                 "--axis", "two_l=2", "--axis", "two_l=4",
                 "--out", str(tmp_path / "s")]) == EXIT_VALIDATION


def test_sweep_validates_every_point_before_running(tmp_path):
    cfg = write_cfg(tmp_path, FAST_TD)
    out = tmp_path / "s"
    code = main(["sweep", "--config", cfg, "--axis", "two_l=2,-4",
                 "--out", str(out)])
    assert code == EXIT_VALIDATION
    assert not out.exists() or os.listdir(out) == []


def test_parse_axis():
    assert parse_axis("two_l=2,4") == ("two_l", [2, 4])
    assert parse_axis("beta=0.5,1") == ("beta", [0.5, 1.0])
    with pytest.raises(ValueError):
        parse_axis("two_l=")


def test_expand_axes_order_and_naming():
    base = ProtocolConfig(kind="time_dependent", two_l=2, beta=1.0)
    points = expand_axes(base, {"two_l": [2, 4], "beta": [0.5, 1.0]})
    names = [name for name, _ in points]
    assert names == ["two_l=2__beta=0.5", "two_l=2__beta=1.0",
                     "two_l=4__beta=0.5", "two_l=4__beta=1.0"]
    assert expand_axes(base, {})[0][0] == "base"


def test_check_passes(capsys):
    assert main(["check"]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert lines[-1] == "all checks passed"
    assert all(line.startswith("ok  ") for line in lines[:-1])
