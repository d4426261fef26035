import json
import math
import os

import numpy as np
import pytest

from lzphoton import analytics, cli
from lzphoton.config import (
    ConfigError,
    ScenarioConfig,
    SweepSpec,
    build_scenario,
    parse_config_text,
)

PI = math.pi

FAST_RUN = [
    "--integrator.t0=-15", "--integrator.t1=15",
    "--integrator.samples=61", "--integrator.rel_tol=1e-8",
    "--integrator.abs_tol=1e-10",
]


# ------------------------------------------------------------- config layer

def test_parse_config_text_basics():
    raw = parse_config_text("# comment\nmodel = rwa\nparams.delta = 0.3  # inline\n")
    assert raw == {"model": "rwa", "params.delta": "0.3"}


def test_parse_config_text_reports_line_numbers():
    with pytest.raises(ConfigError, match="cfg:2"):
        parse_config_text("model = rwa\nnonsense line\n", source="cfg")


def test_build_scenario_unknown_key():
    with pytest.raises(ConfigError, match="unknown config key"):
        build_scenario({"params.mass": "1"})


def test_build_scenario_bad_number():
    with pytest.raises(ConfigError, match="params.delta|delta"):
        build_scenario({"params.delta": "abc"})


def test_build_scenario_sweep_requires_both_keys():
    with pytest.raises(ConfigError, match="together"):
        build_scenario({"sweep.axis": "alpha2"})


def test_scenario_outputs_validation():
    with pytest.raises(ConfigError, match="unknown outputs"):
        ScenarioConfig(outputs=("p_lz", "banana"))


def test_thermal_scenario_drops_entropy_column():
    cfg = ScenarioConfig(initial_kind="thermal")
    assert "e_l" not in cfg.outputs


def test_sweep_spec_validation_and_point():
    base = ScenarioConfig()
    with pytest.raises(ConfigError):
        SweepSpec("mass", (1.0,), base)
    with pytest.raises(ConfigError):
        SweepSpec("alpha2", (), base)
    sw = SweepSpec("T", (0.5, 2.0), ScenarioConfig(initial_kind="thermal"))
    assert sw.point(2.0).temperature == 2.0
    sw2 = SweepSpec("delta", (0.1,), base)
    assert sw2.point(0.1).delta == 0.1


def test_auto_truncation_scales_with_state():
    small = ScenarioConfig(alpha2=0.5).truncation().n_max
    big = ScenarioConfig(alpha2=4.0).truncation().n_max
    assert big > small
    assert ScenarioConfig(initial_kind="fock", fock_n=7).truncation().n_max == 12
    assert ScenarioConfig(nmax=33).truncation().n_max == 33


def test_resolved_config_is_json_ready(tmp_path):
    d = ScenarioConfig().resolved()
    json.dumps(d)
    assert d["nmax_resolved"] > 0
    assert d["max_step"] is None


# ---------------------------------------------------------------- run/sweep

def test_run_writes_csv_and_sidecar(tmp_path):
    cfgfile = tmp_path / "run.cfg"
    cfgfile.write_text(
        "model = rwa\nparams.delta = 0.5\ninitial.kind = cat\n"
        "initial.alpha2 = 1\noutputs = p_lz,norm\n"
    )
    rc = cli.main(["run", "--config", str(cfgfile), "--out", str(tmp_path)] + FAST_RUN)
    assert rc == 0
    lines = (tmp_path / "run.csv").read_text().splitlines()
    assert lines[0] == "t,p_lz,norm"
    assert len(lines) == 62
    meta = json.loads((tmp_path / "run.meta.json").read_text())
    assert meta["config"]["delta"] == 0.5
    assert meta["config"]["samples"] == 61


def test_run_is_byte_deterministic(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    for out in (a, b):
        out.mkdir()
        rc = cli.main(["run", "--out", str(out), "--initial.alpha2=0.5"] + FAST_RUN)
        assert rc == 0
    assert (a / "run.csv").read_bytes() == (b / "run.csv").read_bytes()


def test_run_flag_overrides_shadow_config(tmp_path):
    cfgfile = tmp_path / "run.cfg"
    cfgfile.write_text("params.delta = 0.5\nintegrator.samples = 61\n")
    rc = cli.main([
        "run", "--config", str(cfgfile), "--out", str(tmp_path),
        "--t0", "-10", "--t1", "10", "--samples", "21", "--nmax", "30",
    ])
    assert rc == 0
    meta = json.loads((tmp_path / "run.meta.json").read_text())
    assert meta["config"]["samples"] == 21
    assert meta["config"]["t0"] == -10.0
    assert meta["config"]["nmax_resolved"] == 30


def test_run_zero_coupling_gives_flat_zero(tmp_path):
    rc = cli.main(["run", "--out", str(tmp_path), "--params.delta=0"] + FAST_RUN)
    assert rc == 0
    rows = np.genfromtxt(tmp_path / "run.csv", delimiter=",", names=True)
    assert np.all(rows["p_lz"] == 0.0)


def test_malformed_config_exits_2(tmp_path):
    cfgfile = tmp_path / "bad.cfg"
    cfgfile.write_text("params.delta == oops\n")
    assert cli.main(["run", "--config", str(cfgfile), "--out", str(tmp_path)]) == 2


def test_unknown_override_exits_2(tmp_path):
    assert cli.main(["run", "--out", str(tmp_path), "--bogus.key=1"]) == 2


def test_numerical_failure_exits_3(tmp_path, monkeypatch):
    from lzphoton.propagator import PropagationError

    def boom(cfg):
        raise PropagationError("synthetic")

    monkeypatch.setattr(cli, "run_scenario", boom)
    assert cli.main(["run", "--out", str(tmp_path)] + FAST_RUN) == 3


def test_sweep_matches_closed_form(tmp_path):
    cfgfile = tmp_path / "sw.cfg"
    cfgfile.write_text(
        "params.delta = 0.5\ninitial.kind = cat\n"
        "initial.theta = 1.5707963267948966\n"
        "sweep.axis = alpha2\nsweep.values = 0,1,2\n"
    )
    rc = cli.main(["sweep", "--config", str(cfgfile), "--out", str(tmp_path),
                   "--jobs", "3"] + FAST_RUN)
    assert rc == 0
    rows = np.genfromtxt(tmp_path / "sweep.csv", delimiter=",", names=True)
    assert list(rows["axis_value"]) == [0.0, 1.0, 2.0]
    assert np.allclose(rows["final_p_lz"], rows["analytic_p_lz"], atol=0.05)
    for lam, ref in zip(rows["axis_value"], rows["analytic_p_lz"]):
        assert ref == pytest.approx(analytics.plz_ys(lam, 0.5), abs=1e-12)


def test_sweep_without_sweep_keys_exits_2(tmp_path):
    assert cli.main(["sweep", "--out", str(tmp_path)]) == 2


def test_run_rejects_sweep_config(tmp_path):
    cfgfile = tmp_path / "sw.cfg"
    cfgfile.write_text("sweep.axis = alpha2\nsweep.values = 1\n")
    assert cli.main(["run", "--config", str(cfgfile), "--out", str(tmp_path)]) == 2


# ------------------------------------------------------------------- figure

def test_figure_unknown_id_exits_4(tmp_path, capsys):
    assert cli.main(["figure", "9z", "--out", str(tmp_path)]) == 4
    assert "unknown figure id" in capsys.readouterr().err


def test_figure_analytic_recipe(tmp_path):
    rc = cli.main(["figure", "1c", "--out", str(tmp_path)])
    assert rc == 0
    fig = tmp_path / "figure_1c"
    manifest = json.loads((fig / "manifest.json").read_text())
    assert manifest["figure_id"] == "1c"
    curve = manifest["panels"][0]["curves"][0]
    rows = np.genfromtxt(fig / curve["file"], delimiter=",", names=True)
    ref = [analytics.plz_ys(x, 0.1) for x in rows["alpha2"]]
    assert np.allclose(rows[curve["y"]], ref, atol=1e-12)


def test_figure_numeric_recipe_with_overrides(tmp_path):
    rc = cli.main(["figure", "1b", "--out", str(tmp_path),
                   "--t0", "-15", "--t1", "15", "--samples", "61",
                   "--rel-tol", "1e-8", "--abs-tol", "1e-10", "--jobs", "2"])
    assert rc == 0
    fig = tmp_path / "figure_1b"
    manifest = json.loads((fig / "manifest.json").read_text())
    assert manifest["assumed"] is True
    assert manifest["overrides"]["samples"] == 61
    panel = manifest["panels"][0]
    assert len(panel["curves"]) == 4
    refs = [r for r in panel["reference_lines"] if r["orientation"] == "h"]
    for lam, r in zip((0.0, 1.0, 2.0, 4.0), refs):
        assert r["value"] == pytest.approx(analytics.plz_ys(lam, 0.5), abs=1e-12)
    for c in panel["curves"]:
        assert (fig / c["file"]).exists()


def test_figure_spectrum_recipe(tmp_path):
    rc = cli.main(["figure", "1a", "--out", str(tmp_path)])
    assert rc == 0
    fig = tmp_path / "figure_1a"
    rows = np.genfromtxt(fig / "spectrum.csv", delimiter=",", names=True)
    names = rows.dtype.names
    assert names[0] == "t"
    # columns are the sorted instantaneous levels
    for k in range(len(names) - 2):
        assert np.all(rows[f"e_{k}"] <= rows[f"e_{k + 1}"] + 1e-12)


# ----------------------------------------------------------------- analytic

def _table(capsys):
    out = capsys.readouterr().out.strip().splitlines()
    header = out[0].split("\t")
    rows = [dict(zip(header, line.split("\t"))) for line in out[1:]]
    return rows


def test_analytic_specialization_identity(capsys):
    rc = cli.main(["analytic", "eq9", "--theta", str(PI / 2.0),
                   "--alpha2", "0.3,1,2", "--delta", "0.5"])
    assert rc == 0
    rows9 = _table(capsys)
    rc = cli.main(["analytic", "eq10", "--alpha2", "0.3,1,2", "--delta", "0.5"])
    assert rc == 0
    rows10 = _table(capsys)
    for r9, r10 in zip(rows9, rows10):
        assert float(r9["value"]) == pytest.approx(float(r10["value"]), abs=1e-14)


def test_analytic_oracle_column(capsys):
    rc = cli.main(["analytic", "eq15", "--alpha2", "1", "--theta", str(PI / 2.0),
                   "--delta", "0.1", "--oracle"])
    assert rc == 0
    (row,) = _table(capsys)
    assert float(row["abs_diff"]) < 1e-12
    assert float(row["value"]) == pytest.approx(0.04532750575423163, abs=1e-12)


def test_analytic_eq18_oracle_exposes_unbalanced_variant(capsys):
    """The literal unbalanced thermal formula does not reproduce the
    weighted sum; the oracle column shows the gap instead of hiding it."""
    rc = cli.main(["analytic", "eq18", "--omega", "10", "--T", "10",
                   "--delta", "0.1", "--oracle"])
    assert rc == 0
    (row,) = _table(capsys)
    assert float(row["value"]) == pytest.approx(0.008829786405820887, abs=1e-12)
    assert float(row["oracle"]) == pytest.approx(0.0328316343419378, abs=1e-12)
    assert float(row["abs_diff"]) > 0.02


def test_analytic_bad_number_exits_2(capsys):
    assert cli.main(["analytic", "eq10", "--alpha2", "one"]) == 2
