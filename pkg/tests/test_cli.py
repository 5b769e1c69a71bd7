import json
from pathlib import Path

import numpy as np
import pytest

from lpvinterp import io
from lpvinterp.cli import emit_plot_data, main, run, validate_config

CONFIGS = Path(__file__).resolve().parents[1] / "configs"
INFEASIBLE_WAYPOINTS = [[2, 8, 0.0], [2, 9, 0.0], [1, 8, 0.0], [2, 10, 1.0]]


def report(out):
    return json.loads((Path(out) / "report.json").read_text())


def test_gen_data(tmp_path):
    assert run({"problem": "gen-data", "N_d": 121, "seed": 7}, tmp_path) == 0
    assert len((tmp_path / "result.csv").read_text().splitlines()) == 122
    rep = report(tmp_path)
    assert rep["gpe"]["satisfied"] and rep["gpe"]["lhs_rank"] == 92


def test_interpolate_unique(tmp_path):
    assert run({"problem": "interpolate"}, tmp_path) == 0
    rep = report(tmp_path)
    assert rep["kind"] == "Unique" and rep["max_deviation_from_truth"] <= 1e-6
    assert (tmp_path / "truth.csv").is_file() and (tmp_path / "given.json").is_file()


def test_interpolate_family_writes_members(tmp_path):
    assert run({"problem": "interpolate", "given": {"K": 10}}, tmp_path) == 0
    assert report(tmp_path)["kind"] == "Family"
    assert len(list(tmp_path.glob("family_*.csv"))) == 5


def test_control_nl_report(tmp_path):
    assert run({"problem": "control-nl"}, tmp_path) == 0
    rep = report(tmp_path)
    assert rep["converged"] and len(rep["step_norms"]) == rep["iterations"]
    assert rep["scheduling_consistency"] <= 1e-6
    assert len(list(tmp_path.glob("iterate_*.csv"))) == rep["iterations"]


@pytest.mark.parametrize("problem", ["check", "approximate", "simulate", "control"])
def test_other_problems_succeed(tmp_path, problem):
    assert run({"problem": problem}, tmp_path) == 0
    assert (tmp_path / "result.csv").is_file() or problem == "check"


def test_deterministic(tmp_path):
    cfg = {"problem": "interpolate", "given": {"K": 12}}
    assert run(cfg, tmp_path / "a") == 0 and run(cfg, tmp_path / "b") == 0
    names = sorted(p.name for p in (tmp_path / "a").iterdir())
    assert names == sorted(p.name for p in (tmp_path / "b").iterdir())
    for name in names:
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()


def test_gen_data_roundtrip(tmp_path):
    assert run({"problem": "gen-data", "seed": 7}, tmp_path / "gen") == 0
    assert run({"problem": "interpolate", "seed": 7}, tmp_path / "mem") == 0
    cfg = {"problem": "interpolate", "dictionary_csv": str(tmp_path / "gen" / "result.csv")}
    assert run(cfg, tmp_path / "disk") == 0
    for name in ("result.csv", "truth.csv", "given.json"):
        assert (tmp_path / "mem" / name).read_bytes() == (tmp_path / "disk" / name).read_bytes()


def test_infeasible_waypoints_exit_2(tmp_path):
    code = run({"problem": "control", "waypoints": INFEASIBLE_WAYPOINTS}, tmp_path)
    assert code == 2
    assert "Condition 2" in report(tmp_path)["failed_condition"]
    assert run({"problem": "control-nl", "waypoints": INFEASIBLE_WAYPOINTS}, tmp_path / "nl") == 2
    rep = report(tmp_path / "nl")
    assert "Condition 2" in rep["failed_condition"] and rep["iterate"] == 1


def test_infeasible_interpolation_exit_2(tmp_path):
    cfg = {"problem": "interpolate", "given": {"indices": [15, 16, 18, 20]},
           "w_given": [0.0, 0.0, 0.0, 1.0]}
    assert run(cfg, tmp_path) == 2
    assert "Condition 2" in report(tmp_path)["failed_condition"]
    cfg["problem"] = "check"
    assert run(cfg, tmp_path / "check") == 2
    assert not report(tmp_path / "check")["existence"]["satisfied"]


def test_nonconvergence_exit_3(tmp_path):
    assert run({"problem": "control-nl", "sqp": {"max_iters": 2}}, tmp_path) == 3
    assert report(tmp_path)["converged"] is False


@pytest.mark.parametrize("cfg", [
    {"problem": "interpolate", "bogus": 1},
    {"problem": "interpolate", "given": {"K": 35, "extra": 0}},
    {"problem": "nope"},
    {"problem": "control", "Q": "big"},
    {"problem": "interpolate", "dictionary_csv": "/nonexistent/d.csv"},
    {"problem": "approximate", "weights": {"diagonal": [1.0, -1.0]}},
])
def test_usage_errors_exit_1(tmp_path, cfg):
    assert run(cfg, tmp_path) == 1


def test_validate_fills_defaults():
    cfg = validate_config({"problem": "control", "sqp": {"tol_p": 1e-6}})
    assert cfg["sqp"] == {"tol_p": 1e-6, "max_iters": 100, "record_iterates": True}
    assert cfg["L"] == 30


def test_rtol_env_fallback(tmp_path, monkeypatch):
    monkeypatch.setenv("LPV_INTERP_RTOL", "0.5")
    assert run({"problem": "gen-data"}, tmp_path / "env") == 0
    rep = report(tmp_path / "env")
    assert rep["rtol"] == 0.5 and not rep["gpe"]["satisfied"]
    assert run({"problem": "gen-data", "rtol": 1e-12}, tmp_path / "cfg") == 0
    assert report(tmp_path / "cfg")["rtol"] == 1e-12


def test_sweep_writes_one_file_per_point(tmp_path):
    Qs = list(np.logspace(-4, 0, 6))
    assert run({"problem": "control", "Q_sweep": Qs}, tmp_path) == 0
    assert len(list(tmp_path.glob("sweep_*.csv"))) == 6
    points = report(tmp_path)["points"]
    assert all(pt["waypoint_error"] <= 1e-8 for pt in points)
    energies = [pt["input_energy"] for pt in points]
    assert all(b <= a * (1 + 1e-9) for a, b in zip(energies, energies[1:]))


def test_plot_data_family(tmp_path):
    run({"problem": "interpolate", "given": {"K": 10}}, tmp_path)
    (path,) = emit_plot_data(tmp_path)
    lines = path.read_text().splitlines()
    assert lines[0] == "time,channel,series,value"
    series = {line.split(",")[2] for line in lines[1:]}
    assert series == {"truth", "given"} | {f"member_{j:02d}" for j in range(1, 6)}


def test_plot_data_sweep(tmp_path):
    Qs = [1e-4, 1e-2, 1.0]
    run({"problem": "control", "Q_sweep": Qs}, tmp_path)
    (path,) = emit_plot_data(tmp_path, tmp_path / "plots")
    series = {line.split(",")[2] for line in path.read_text().splitlines()[1:]}
    assert series == {f"Q={io.format_number(q)}" for q in Qs} | {"reference"}


def test_plot_data_unique_and_nonlinear(tmp_path):
    run({"problem": "interpolate"}, tmp_path / "u")
    names = sorted(p.name for p in emit_plot_data(tmp_path / "u"))
    assert names == ["fig1_given_missing.csv", "fig2_interpolation.csv"]
    run({"problem": "control-nl"}, tmp_path / "nl")
    assert [p.name for p in emit_plot_data(tmp_path / "nl")] == ["fig5_nonlinear.csv"]


def test_plot_data_empty_dir(tmp_path):
    out = tmp_path / "plots"
    with pytest.raises(FileNotFoundError):
        emit_plot_data(tmp_path, out)
    assert not out.exists() and list(tmp_path.iterdir()) == []
    assert main(["plot-data", str(tmp_path)]) == 1
    assert list(tmp_path.iterdir()) == []


def test_main_flags_override_config(tmp_path, capsys):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"N_d": 50, "seed": 1}))
    assert main(["gen-data", "-c", str(cfg), "--N-d", "121", "--seed", "7", "-o", str(tmp_path / "o")]) == 0
    rep = report(tmp_path / "o")
    assert rep["N_d"] == 121 and rep["seed"] == 7 and rep["gpe"]["lhs_rank"] == 92
    assert main(["interpolate", "--K", "10", "-o", str(tmp_path / "k")]) == 0
    assert report(tmp_path / "k")["kind"] == "Family"


def test_main_bad_config_file(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["check", "-c", str(bad), "-o", str(tmp_path / "o")]) == 1
    assert main(["check", "-c", str(tmp_path / "missing.json"), "-o", str(tmp_path / "o")]) == 1


@pytest.mark.parametrize("path", sorted(CONFIGS.glob("*.json")), ids=lambda p: p.stem)
def test_bundled_configs(tmp_path, path):
    cfg = json.loads(path.read_text())
    assert run(cfg, tmp_path) == 0
    assert emit_plot_data(tmp_path)
