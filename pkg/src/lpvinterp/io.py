"""CSV trajectories and JSON index sets.

Trajectory CSV: header ``k,w1,...,w{n_w}[,p1,...,p{n_p}]``, one row per
time step with ``k`` starting at 1. Numbers are written with 17 significant
digits so files round-trip exactly.
"""
from __future__ import annotations

import csv
import json
import os
from pathlib import Path
from typing import Optional, Tuple, Union

import numpy as np

from .signals import DataDictionary, IndexSet, SchedulingTrajectory, Trajectory

__all__ = [
    "format_number",
    "write_trajectory_csv",
    "read_trajectory_csv",
    "write_dictionary_csv",
    "read_dictionary_csv",
    "write_index_set_json",
    "read_index_set_json",
    "write_json",
    "to_jsonable",
]

PathLike = Union[str, os.PathLike]


def format_number(x: float) -> str:
    return format(float(x), ".17g")


def write_trajectory_csv(path: PathLike, w: Trajectory, p: Optional[SchedulingTrajectory] = None):
    if p is not None and p.T != w.T:
        raise ValueError("w and p must have the same length")
    header = ["k"] + [f"w{i + 1}" for i in range(w.n_w)]
    cols = [w.values]
    if p is not None:
        header += [f"p{j + 1}" for j in range(p.n_p)]
        cols.append(p.values)
    data = np.vstack(cols)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for k in range(w.T):
            writer.writerow([str(k + 1)] + [format_number(v) for v in data[:, k]])


def read_trajectory_csv(path: PathLike) -> Tuple[Trajectory, Optional[SchedulingTrajectory]]:
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows:
        raise ValueError(f"{path}: empty trajectory file")
    header = [h.strip() for h in rows[0]]
    if not header or header[0] != "k":
        raise ValueError(f"{path}: first column must be 'k'")
    w_cols = [i for i, h in enumerate(header) if h.startswith("w")]
    p_cols = [i for i, h in enumerate(header) if h.startswith("p")]
    if [header[i] for i in w_cols] != [f"w{j + 1}" for j in range(len(w_cols))] or not w_cols:
        raise ValueError(f"{path}: expected columns w1..w{{n_w}}")
    if [header[i] for i in p_cols] != [f"p{j + 1}" for j in range(len(p_cols))]:
        raise ValueError(f"{path}: expected columns p1..p{{n_p}}")
    body = np.array([[float(x) for x in r] for r in rows[1:] if r], dtype=float)
    if body.size == 0:
        raise ValueError(f"{path}: no samples")
    if not np.array_equal(body[:, 0], np.arange(1, body.shape[0] + 1)):
        raise ValueError(f"{path}: k must run 1, 2, ..., T")
    w = Trajectory(body[:, w_cols].T)
    p = SchedulingTrajectory(body[:, p_cols].T) if p_cols else None
    return w, p


def write_dictionary_csv(path: PathLike, dictionary: DataDictionary):
    write_trajectory_csv(path, dictionary.w, dictionary.p)


def read_dictionary_csv(path: PathLike, bounds=None) -> DataDictionary:
    w, p = read_trajectory_csv(path)
    if p is None:
        raise ValueError(f"{path}: a data dictionary needs scheduling columns p1..")
    if bounds is not None:
        p = SchedulingTrajectory(p.values, bounds)
    return DataDictionary(w, p)


def write_index_set_json(path: PathLike, idx: IndexSet):
    Path(path).write_text(json.dumps(idx.tolist()) + "\n")


def read_index_set_json(path: PathLike, universe: int) -> IndexSet:
    data = json.loads(Path(path).read_text())
    if not isinstance(data, list) or not all(isinstance(i, int) for i in data):
        raise ValueError(f"{path}: an index set is a JSON array of integers")
    if data != sorted(set(data)):
        raise ValueError(f"{path}: index set must be sorted and free of duplicates")
    return IndexSet(np.array(data, dtype=np.int64), universe)


def to_jsonable(obj):
    """Recursively convert numpy scalars/arrays and report objects to JSON types."""
    if hasattr(obj, "to_dict"):
        return to_jsonable(obj.to_dict())
    if isinstance(obj, IndexSet):
        return obj.tolist()
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return to_jsonable(obj.tolist())
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, (np.floating, float)):
        x = float(obj)
        return x if np.isfinite(x) else str(x)
    return obj


def write_json(path: PathLike, payload):
    Path(path).write_text(json.dumps(to_jsonable(payload), indent=2, sort_keys=True) + "\n")
