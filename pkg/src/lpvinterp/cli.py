"""Command-line front end.

Every run reads one JSON config (optional; defaults reproduce the
mass-spring-damper benchmark), applies command-line overrides and writes
``result.csv`` and ``report.json`` into the output directory.

Exit codes: 0 success, 1 usage/validation error, 2 infeasible problem,
3 non-convergence.
"""
from __future__ import annotations

import argparse
import copy
import csv
import json
import logging
import os
import sys
import warnings
from pathlib import Path

import jsonschema
import numpy as np

from . import io
from .approximate import WeightMatrix, approximate
from .conditions import (check_existence, check_gpe, check_uniqueness, min_given_points,
                         sample_given_set)
from .control import (SCHEDULING_MAPS, ControlProblem, SqpOptions, msd_parabola_waypoints,
                      nonlinear_waypoint_control, waypoint_control, waypoints_to_given)
from .interpolate import (FAMILY, INFEASIBLE, InterpolationProblem, evaluate_family, interpolate,
                          simulate_as_interpolation)
from .lpv_sim import (MSD_DEFAULT, ExcitationSpec, generate_dictionary, kernel_residual,
                      msd_kernel, msd_structure, random_trajectory, scheduling_signal)
from .numerics import InfeasibleError
from .signals import (IndexSet, SchedulingTrajectory, SystemStructure, Trajectory, select,
                      vec_trajectory)

log = logging.getLogger("lpvinterp")

EXIT_OK, EXIT_USAGE, EXIT_INFEASIBLE, EXIT_NONCONVERGED = 0, 1, 2, 3
PROBLEMS = ["gen-data", "simulate", "check", "interpolate", "approximate", "control", "control-nl"]
RTOL_ENV = "LPV_INTERP_RTOL"

_matrix_or_number = {"oneOf": [
    {"type": "number"},
    {"type": "array", "items": {"type": "array", "items": {"type": "number"}}},
]}

CONFIG_SCHEMA = {
    "type": "object",
    "additionalProperties": False,
    "properties": {
        "problem": {"enum": PROBLEMS},
        "system": {"oneOf": [
            {"const": "msd-default"},
            {"type": "object", "additionalProperties": False,
             "required": ["m", "d", "kappa0", "kappa1", "tau"],
             "properties": {k: {"type": "number"} for k in ("m", "d", "kappa0", "kappa1", "tau")}},
        ]},
        "structure": {"type": "object", "additionalProperties": False,
                      "required": ["n_w", "n_p", "order", "n_inputs", "lag"],
                      "properties": {k: {"type": "integer", "minimum": 0}
                                     for k in ("n_w", "n_p", "order", "n_inputs", "lag")}},
        "L": {"type": "integer", "minimum": 1},
        "N_d": {"type": "integer", "minimum": 1},
        "seed": {"type": "integer", "minimum": 0},
        "dictionary_csv": {"type": "string"},
        "rtol": {"type": "number", "exclusiveMinimum": 0},
        "scheduling": {"type": "object", "additionalProperties": False,
                       "required": ["law"],
                       "properties": {
                           "law": {"enum": ["uniform-pm1", "sinusoid", "constant", "values"]},
                           "seed": {"type": "integer", "minimum": 0},
                           "amplitude": {"type": "number"},
                           "period": {"type": "number", "exclusiveMinimum": 0},
                           "phase": {"type": "number"},
                           "value": {"type": "number"},
                           "values": {"type": "array", "items": {"type": "number"}},
                       }},
        "truth": {"type": "object", "additionalProperties": False,
                  "properties": {"seed": {"type": "integer", "minimum": 0},
                                 "y_init": {"enum": ["random", "zero"]}}},
        "given": {"type": "object", "additionalProperties": False,
                  "properties": {
                      "indices": {"type": "array", "items": {"type": "integer", "minimum": 1}},
                      "K": {"type": "integer", "minimum": 0},
                      "seed": {"type": "integer", "minimum": 0},
                      "require_unique": {"type": "boolean"},
                  }},
        "w_given": {"type": "array", "items": {"type": "number"}},
        "perturbation": {"type": "object", "additionalProperties": False,
                         "properties": {"magnitude": {"type": "number", "minimum": 0},
                                        "seed": {"type": "integer", "minimum": 0}}},
        "weights": {"type": "object", "additionalProperties": False,
                    "properties": {
                        "diagonal": {"type": "array", "items": {"type": "number"}},
                        "matrix": {"type": "array", "items": {"type": "array", "items": {"type": "number"}}},
                    }},
        "family_members": {"type": "integer", "minimum": 0},
        "family_seed": {"type": "integer", "minimum": 0},
        "waypoints": {"oneOf": [
            {"const": "msd-parabola"},
            {"type": "array", "items": {"type": "array", "minItems": 3, "maxItems": 3,
                                        "items": {"type": "number"}}},
        ]},
        "Q": _matrix_or_number,
        "R": _matrix_or_number,
        "Q_sweep": {"type": "array", "items": {"type": "number", "exclusiveMinimum": 0}},
        "io_partition": {"type": "array", "items": {"enum": ["u", "y"]}},
        "scheduling_map": {"enum": sorted(SCHEDULING_MAPS)},
        "sqp": {"type": "object", "additionalProperties": False,
                "properties": {"tol_p": {"type": "number", "exclusiveMinimum": 0},
                               "max_iters": {"type": "integer", "minimum": 1},
                               "record_iterates": {"type": "boolean"}}},
        "T_ini": {"type": "integer", "minimum": 1},
    },
}

DEFAULTS = {
    "system": "msd-default",
    "L": 30,
    "N_d": 121,
    "seed": 7,
    "scheduling": {"law": "uniform-pm1", "seed": 11},
    "truth": {"seed": 13, "y_init": "random"},
    "given": {"K": 35, "seed": 17},
    "perturbation": {"magnitude": 0.0, "seed": 19},
    "family_members": 5,
    "family_seed": 23,
    "waypoints": "msd-parabola",
    "Q": 1.0,
    "R": 1.0,
    "io_partition": ["u", "y"],
    "scheduling_map": "msd-endogenous",
    "sqp": {"tol_p": 1e-7, "max_iters": 100, "record_iterates": True},
    "T_ini": 2,
}


class UsageError(Exception):
    pass


def validate_config(config: dict) -> dict:
    """Schema-check ``config`` and fill defaults; unknown fields are rejected."""
    try:
        jsonschema.validate(config, CONFIG_SCHEMA)
    except jsonschema.ValidationError as exc:
        path = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise UsageError(f"invalid config at {path}: {exc.message}") from None
    merged = copy.deepcopy(DEFAULTS)
    for key, val in config.items():
        if isinstance(val, dict) and isinstance(merged.get(key), dict):
            merged[key] = {**merged[key], **val}
        else:
            merged[key] = val
    if "problem" not in merged:
        raise UsageError("config does not name a problem")
    return merged


# ---------------------------------------------------------------- builders

def _system(cfg):
    params = MSD_DEFAULT if cfg["system"] == "msd-default" else cfg["system"]
    return msd_kernel(**params)


def _structure(cfg) -> SystemStructure:
    if "structure" in cfg:
        return SystemStructure(**cfg["structure"])
    return msd_structure()


def _dictionary(cfg, rep):
    if "dictionary_csv" in cfg:
        return io.read_dictionary_csv(cfg["dictionary_csv"])
    return generate_dictionary(rep, ExcitationSpec(cfg["seed"], cfg["N_d"]))


def _scheduling(cfg) -> SchedulingTrajectory:
    sch = dict(cfg["scheduling"])
    law = sch.pop("law")
    sch.setdefault("seed", 0)
    return scheduling_signal(law, cfg["L"], **sch)


def _matrix(x):
    return np.atleast_2d(np.asarray(x, dtype=float))


def _given(cfg, dictionary, p_target, structure) -> IndexSet:
    L, n_w = cfg["L"], dictionary.n_w
    g = cfg["given"]
    if "indices" in g:
        return IndexSet.from_iterable(g["indices"], L * n_w)
    rng = np.random.default_rng(g.get("seed", 0))
    # below the minimum count no draw can be unique, so a plain draw is the default there
    unique = g.get("require_unique", g["K"] >= min_given_points(structure, L))
    try:
        return sample_given_set(dictionary, p_target, g["K"], structure, rng,
                                require_unique=unique, rtol=cfg.get("rtol"))
    except (RuntimeError, ValueError) as exc:
        raise UsageError(str(exc)) from None


def _interpolation_problem(cfg, rep, structure, dictionary):
    """Problem with its truth trajectory (``None`` when values are given explicitly)."""
    p_target = _scheduling(cfg)
    given = _given(cfg, dictionary, p_target, structure)
    truth = None
    if "w_given" in cfg:
        w_given = np.asarray(cfg["w_given"], dtype=float)
    else:
        truth = random_trajectory(rep, p_target, cfg["truth"]["seed"], cfg["truth"]["y_init"])
        w_given = select(vec_trajectory(truth), given)
    return InterpolationProblem(dictionary, p_target, given, w_given, structure), truth


def _control_problem(cfg, dictionary, scheduling):
    L, n_w = cfg["L"], dictionary.n_w
    triples = msd_parabola_waypoints(L) if cfg["waypoints"] == "msd-parabola" else cfg["waypoints"]
    given, w_given = waypoints_to_given(triples, L, n_w)
    return ControlProblem(dictionary, scheduling, given, w_given, _matrix(cfg["Q"]), _matrix(cfg["R"]),
                          tuple(cfg["io_partition"]))


def _waypoint_error(traj: Trajectory, given: IndexSet, w_given) -> float:
    if not len(given):
        return 0.0
    return float(np.max(np.abs(select(vec_trajectory(traj), given) - w_given)))


def _write_given(out: Path, given: IndexSet, values):
    io.write_json(out / "given.json", {"indices": given.tolist(), "universe": given.universe,
                                        "values": np.asarray(values)})


# ---------------------------------------------------------------- problems

def _run_gen_data(cfg, out, rep, s, rtol):
    d = _dictionary(cfg, rep)
    io.write_dictionary_csv(out / "result.csv", d)
    report = {"problem": "gen-data", "N_d": d.N_d, "seed": cfg["seed"], "L": cfg["L"]}
    if cfg["L"] <= d.N_d and cfg["L"] >= s.lag:
        report["gpe"] = check_gpe(d, cfg["L"], s, rtol)
    report["kernel_residual_max"] = float(kernel_residual(rep, d.w, d.p).max())
    return EXIT_OK, report


def _run_simulate(cfg, out, rep, s, rtol):
    d = _dictionary(cfg, rep)
    p_target = _scheduling(cfg)
    truth = random_trajectory(rep, p_target, cfg["truth"]["seed"], cfg["truth"]["y_init"])
    T_ini = cfg["T_ini"]
    ins = [int(i) + 1 for i in rep.input_channels]
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        sim = simulate_as_interpolation(d, p_target, truth.window(1, T_ini),
                                        truth.values[np.array(ins) - 1, T_ini:], s, ins, rtol)
    io.write_trajectory_csv(out / "result.csv", sim, p_target)
    io.write_trajectory_csv(out / "truth.csv", truth, p_target)
    return EXIT_OK, {
        "problem": "simulate", "T_ini": T_ini, "L": cfg["L"],
        "max_abs_error": float(np.max(np.abs(sim.values - truth.values))),
        "warnings": [str(w.message) for w in caught],
    }


def _run_check(cfg, out, rep, s, rtol):
    d = _dictionary(cfg, rep)
    prob, truth = _interpolation_problem(cfg, rep, s, d)
    gpe = check_gpe(d, prob.L, s, rtol)
    exist = check_existence(d, prob.p_target, prob.given, prob.w_given, s, rtol)
    uniq = check_uniqueness(d, prob.p_target, prob.given, s, rtol)
    _write_given(out, prob.given, prob.w_given)
    report = {"problem": "check", "K": len(prob.given), "min_given_points": min_given_points(s, prob.L),
              "gpe": gpe, "existence": exist, "uniqueness": uniq}
    for rep_ in (gpe, exist, uniq):
        if rep_.near_degenerate:
            log.warning("%s: rank decision is within 10x of the tolerance", rep_.name)
    if not exist.satisfied:
        log.error("Condition 2 (existence) fails: given points are not consistent with the behavior")
        return EXIT_INFEASIBLE, report
    return EXIT_OK, report


def _run_interpolate(cfg, out, rep, s, rtol):
    d = _dictionary(cfg, rep)
    prob, truth = _interpolation_problem(cfg, rep, s, d)
    res = interpolate(prob, rtol)
    _write_given(out, prob.given, prob.w_given)
    report = {"problem": "interpolate", "kind": res.kind, "K": len(prob.given),
              "residual": res.residual, "gpe": res.gpe, "uniqueness": res.uniqueness,
              "notes": res.notes}
    if truth is not None:
        io.write_trajectory_csv(out / "truth.csv", truth, prob.p_target)
    if res.kind == INFEASIBLE:
        log.error("Condition 2 (existence) fails: residual %.3e", res.residual)
        report["failed_condition"] = "Condition 2 (existence)"
        return EXIT_INFEASIBLE, report
    io.write_trajectory_csv(out / "result.csv", res.trajectory, prob.p_target)
    report["given_error"] = _waypoint_error(res.trajectory, prob.given, prob.w_given)
    report["kernel_residual_max"] = float(kernel_residual(rep, res.trajectory, prob.p_target).max())
    if truth is not None:
        report["max_deviation_from_truth"] = float(np.max(np.abs(res.trajectory.values - truth.values)))
    if res.kind == FAMILY:
        rng = np.random.default_rng(cfg["family_seed"])
        report["family_dimension"] = int(res.family_basis.shape[1])
        for j in range(cfg["family_members"]):
            member = evaluate_family(prob, res, rng.standard_normal(res.family_basis.shape[1]))
            io.write_trajectory_csv(out / f"family_{j + 1:02d}.csv", member, prob.p_target)
    return EXIT_OK, report


def _run_approximate(cfg, out, rep, s, rtol):
    d = _dictionary(cfg, rep)
    prob, truth = _interpolation_problem(cfg, rep, s, d)
    pert = cfg["perturbation"]
    if pert["magnitude"] > 0:
        noise = np.random.default_rng(pert["seed"]).uniform(-1, 1, len(prob.given)) * pert["magnitude"]
        prob = InterpolationProblem(d, prob.p_target, prob.given, prob.w_given + noise, s)
    K = len(prob.given)
    w = cfg.get("weights", {})
    try:
        if "matrix" in w:
            M = WeightMatrix(w["matrix"])
        elif "diagonal" in w:
            M = WeightMatrix.diagonal(w["diagonal"])
        else:
            M = WeightMatrix.identity(K)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    traj, err = approximate(prob, M, rtol)
    _write_given(out, prob.given, prob.w_given)
    io.write_trajectory_csv(out / "result.csv", traj, prob.p_target)
    report = {"problem": "approximate", "K": K, "error_norm": err,
              "kernel_residual_max": float(kernel_residual(rep, traj, prob.p_target).max())}
    if truth is not None:
        io.write_trajectory_csv(out / "truth.csv", truth, prob.p_target)
        report["max_deviation_from_truth"] = float(np.max(np.abs(traj.values - truth.values)))
    return EXIT_OK, report


def _run_control(cfg, out, rep, s, rtol):
    d = _dictionary(cfg, rep)
    p_target = _scheduling(cfg)
    prob = _control_problem(cfg, d, p_target)
    _write_given(out, prob.given, prob.w_given)
    sweep = cfg.get("Q_sweep")
    Qs = sweep if sweep else [None]
    points = []
    try:
        for j, Q in enumerate(Qs):
            p = prob if Q is None else ControlProblem(d, p_target, prob.given, prob.w_given, _matrix(Q),
                                                      prob.R, prob.io_partition)
            res = waypoint_control(p, rtol=rtol)
            name = "result.csv" if Q is None else f"sweep_{j + 1:02d}.csv"
            io.write_trajectory_csv(out / name, res.trajectory, p_target)
            points.append({"file": name, "Q": p.Q, "cost": res.cost,
                           "waypoint_error": _waypoint_error(res.trajectory, prob.given, prob.w_given),
                           "input_energy": float(np.sum(res.trajectory.values[[i for i, l in enumerate(prob.io_partition) if l == "u"]] ** 2)),
                           "kernel_residual_max": float(kernel_residual(rep, res.trajectory, p_target).max())})
    except InfeasibleError as exc:
        log.error("%s", exc)
        return EXIT_INFEASIBLE, {"problem": "control", "failed_condition": "Condition 2 (existence)",
                                 "message": str(exc), "points": points}
    if sweep:
        # the last sweep point doubles as the headline result
        io.write_trajectory_csv(out / "result.csv", res.trajectory, p_target)
    return EXIT_OK, {"problem": "control", "points": points}


def _run_control_nl(cfg, out, rep, s, rtol):
    d = _dictionary(cfg, rep)
    psi = SCHEDULING_MAPS[cfg["scheduling_map"]]
    prob = _control_problem(cfg, d, psi)
    _write_given(out, prob.given, prob.w_given)
    opts = SqpOptions(**cfg["sqp"])
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", RuntimeWarning)
            res = nonlinear_waypoint_control(prob, opts, rtol)
    except InfeasibleError as exc:
        log.error("%s", exc)
        return EXIT_INFEASIBLE, {"problem": "control-nl", "failed_condition": "Condition 2 (existence)",
                                 "iterate": exc.iterate, "message": str(exc)}
    io.write_trajectory_csv(out / "result.csv", res.trajectory, res.p_final)
    for it in res.history or []:
        io.write_trajectory_csv(out / f"iterate_{it.iteration:03d}.csv", it.trajectory, it.scheduling)
    consistency = float(np.max(np.abs(res.p_final.values - psi(res.trajectory).values)))
    report = {"problem": "control-nl", "converged": res.converged, "iterations": res.iterations,
              "step_norms": res.step_norms, "cost": res.cost,
              "scheduling_consistency": consistency,
              "waypoint_error": _waypoint_error(res.trajectory, prob.given, prob.w_given),
              "waypoint_error_norm": float(np.linalg.norm(
                  select(vec_trajectory(res.trajectory), prob.given) - prob.w_given)),
              "kernel_residual_max": float(kernel_residual(rep, res.trajectory, res.p_final).max())}
    if not res.converged:
        log.error("scheduling iteration did not converge in %d iterations", res.iterations)
        return EXIT_NONCONVERGED, report
    return EXIT_OK, report


RUNNERS = {
    "gen-data": _run_gen_data,
    "simulate": _run_simulate,
    "check": _run_check,
    "interpolate": _run_interpolate,
    "approximate": _run_approximate,
    "control": _run_control,
    "control-nl": _run_control_nl,
}


def run(config: dict, out_dir) -> int:
    """Validate ``config``, run its problem and write results into ``out_dir``."""
    try:
        cfg = validate_config(config)
        rtol = cfg.get("rtol")
        if rtol is None and os.environ.get(RTOL_ENV):
            rtol = float(os.environ[RTOL_ENV])
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        rep, s = _system(cfg), _structure(cfg)
        code, report = RUNNERS[cfg["problem"]](cfg, out, rep, s, rtol)
    except UsageError as exc:
        log.error("%s", exc)
        return EXIT_USAGE
    except (ValueError, FileNotFoundError) as exc:
        log.error("%s", exc)
        return EXIT_USAGE
    report["config"] = cfg
    report["rtol"] = rtol
    report["exit_code"] = code
    io.write_json(out / "report.json", report)
    return code


# ---------------------------------------------------------------- plot data

def _tidy_rows(w: Trajectory, series: str, times=None):
    rows = []
    for ch in range(w.n_w):
        for k in range(w.T):
            rows.append((k + 1, ch + 1, series, w.values[ch, k]))
    return rows


def _point_rows(given: IndexSet, values, n_w, series):
    rows = []
    for pos, val in zip(given.indices, values):
        rows.append(((pos - 1) // n_w + 1, (pos - 1) % n_w + 1, series, val))
    return rows


def emit_plot_data(result_dir, out_dir=None) -> list:
    """Turn a run directory into tidy ``time,channel,series,value`` CSVs, one per figure analog.

    Returns the written paths. Nothing is written when inputs are missing.
    """
    src = Path(result_dir)
    dst = Path(out_dir) if out_dir else src
    report_path = src / "report.json"
    if not report_path.is_file():
        raise FileNotFoundError(f"{report_path} not found; run a problem first")
    report = json.loads(report_path.read_text())
    problem = report.get("problem")

    def load(name):
        path = src / name
        if not path.is_file():
            raise FileNotFoundError(f"{path} not found")
        return io.read_trajectory_csv(path)[0]

    figures = {}
    given_path = src / "given.json"
    given = None
    if given_path.is_file():
        g = json.loads(given_path.read_text())
        given = (IndexSet(np.array(g["indices"], dtype=np.int64), g["universe"]), g["values"])

    if problem == "interpolate":
        truth = load("truth.csv") if (src / "truth.csv").is_file() else None
        if given is None:
            raise FileNotFoundError(f"{given_path} not found")
        idx, vals = given
        if report["kind"] == FAMILY:
            rows = _tidy_rows(truth, "truth") if truth is not None else []
            rows += _point_rows(idx, vals, load("result.csv").n_w, "given")
            for f in sorted(src.glob("family_*.csv")):
                rows += _tidy_rows(io.read_trajectory_csv(f)[0], f.stem.replace("family_", "member_"))
            figures["fig3_family.csv"] = rows
        else:
            result = load("result.csv")
            n_w = result.n_w
            if truth is not None:
                from .signals import complement_index_set
                missing = complement_index_set(idx)
                rows = _tidy_rows(truth, "truth") + _point_rows(idx, vals, n_w, "given")
                rows += _point_rows(missing, select(vec_trajectory(truth), missing), n_w, "missing")
                figures["fig1_given_missing.csv"] = rows
            rows = (_tidy_rows(truth, "truth") if truth is not None else [])
            rows += _point_rows(idx, vals, n_w, "given") + _tidy_rows(result, "interpolant")
            figures["fig2_interpolation.csv"] = rows
    elif problem == "control":
        if given is None:
            raise FileNotFoundError(f"{given_path} not found")
        idx, vals = given
        rows = []
        for pt in report["points"]:
            Q = pt["Q"][0][0] if isinstance(pt["Q"], list) else pt["Q"]
            traj = load(pt["file"])
            rows += _tidy_rows(traj, f"Q={io.format_number(Q)}")
        rows += _point_rows(idx, vals, traj.n_w, "reference")
        figures["fig4_q_sweep.csv"] = rows
    elif problem == "control-nl":
        if given is None:
            raise FileNotFoundError(f"{given_path} not found")
        idx, vals = given
        result = load("result.csv")
        rows = _tidy_rows(result, "solution")
        for f in sorted(src.glob("iterate_*.csv")):
            rows += _tidy_rows(io.read_trajectory_csv(f)[0], f.stem)
        rows += _point_rows(idx, vals, result.n_w, "reference")
        figures["fig5_nonlinear.csv"] = rows
    else:
        raise ValueError(f"no figure analog for problem {problem!r}")

    dst.mkdir(parents=True, exist_ok=True)
    written = []
    for name, rows in figures.items():
        path = dst / name
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["time", "channel", "series", "value"])
            for t, ch, series, val in rows:
                writer.writerow([t, ch, series, io.format_number(val)])
        written.append(path)
    return written


# ---------------------------------------------------------------- entry point

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lpvinterp", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in PROBLEMS:
        p = sub.add_parser(name, help=f"run the {name} problem")
        p.add_argument("-c", "--config", type=Path, help="JSON config file")
        p.add_argument("-o", "--out", type=Path, default=Path("out"), help="output directory")
        p.add_argument("--rtol", type=float, help="relative rank tolerance")
        p.add_argument("--seed", type=int, help="dictionary seed")
        p.add_argument("--N-d", dest="N_d", type=int, help="dictionary length")
        p.add_argument("--L", type=int, help="horizon")
        p.add_argument("--K", type=int, help="number of random given points")
        p.add_argument("--dictionary-csv", type=str, help="read the dictionary from CSV")
    p = sub.add_parser("plot-data", help="emit tidy CSVs for plotting from a run directory")
    p.add_argument("result_dir", type=Path)
    p.add_argument("-o", "--out", type=Path, help="output directory (defaults to result_dir)")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.INFO,
                        format="%(levelname)s: %(message)s")
    if args.command == "plot-data":
        try:
            for path in emit_plot_data(args.result_dir, args.out):
                print(path)
        except (FileNotFoundError, ValueError, KeyError) as exc:
            log.error("%s", exc)
            return EXIT_USAGE
        return EXIT_OK

    config = {}
    if args.config:
        try:
            config = json.loads(args.config.read_text())
        except (OSError, json.JSONDecodeError) as exc:
            log.error("cannot read config: %s", exc)
            return EXIT_USAGE
        if not isinstance(config, dict):
            log.error("config must be a JSON object")
            return EXIT_USAGE
    config["problem"] = args.command
    for key in ("rtol", "seed", "N_d", "L", "dictionary_csv"):
        val = getattr(args, key)
        if val is not None:
            config[key] = val
    if args.K is not None:
        config["given"] = {**config.get("given", {}), "K": args.K}
        config["given"].pop("indices", None)
    code = run(config, args.out)
    print(f"{args.command}: exit {code}, results in {args.out}")
    return code


if __name__ == "__main__":
    sys.exit(main())
