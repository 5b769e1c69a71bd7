import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra import numpy as hnp

from lpvinterp import io
from lpvinterp.signals import IndexSet, SchedulingTrajectory, Trajectory


@settings(max_examples=30, deadline=None)
@given(hnp.arrays(float, st.tuples(st.integers(1, 3), st.integers(1, 8)),
                  elements=st.floats(allow_nan=False, allow_infinity=False)))
def test_trajectory_csv_roundtrip_is_exact(tmp_path_factory, arr):
    path = tmp_path_factory.mktemp("csv") / "w.csv"
    p = SchedulingTrajectory(np.linspace(-1, 1, arr.shape[1]) / 3)
    io.write_trajectory_csv(path, Trajectory(arr), p)
    w2, p2 = io.read_trajectory_csv(path)
    np.testing.assert_array_equal(w2.values, arr)
    np.testing.assert_array_equal(p2.values, p.values)


def test_header_layout(tmp_path):
    path = tmp_path / "w.csv"
    io.write_trajectory_csv(path, Trajectory(np.zeros((2, 2))), SchedulingTrajectory(np.ones((1, 2))))
    assert path.read_text().splitlines()[0] == "k,w1,w2,p1"
    w, p = io.read_trajectory_csv(path)
    assert w.n_w == 2 and p.n_p == 1


def test_rejects_bad_files(tmp_path):
    bad = tmp_path / "bad.csv"
    bad.write_text("t,w1\n1,0\n")
    with pytest.raises(ValueError):
        io.read_trajectory_csv(bad)
    bad.write_text("k,w1\n2,0\n")
    with pytest.raises(ValueError):
        io.read_trajectory_csv(bad)
    bad.write_text("k,w1\n1,0\n")
    with pytest.raises(ValueError):
        io.read_dictionary_csv(bad)


def test_dictionary_roundtrip(tmp_path, dictionary):
    path = tmp_path / "d.csv"
    io.write_dictionary_csv(path, dictionary)
    d2 = io.read_dictionary_csv(path, bounds=[[-1, 1]])
    np.testing.assert_array_equal(d2.w.values, dictionary.w.values)
    np.testing.assert_array_equal(d2.p.values, dictionary.p.values)


def test_index_set_json(tmp_path):
    path = tmp_path / "g.json"
    idx = IndexSet.from_iterable([2, 5, 6], 6)
    io.write_index_set_json(path, idx)
    assert json.loads(path.read_text()) == [2, 5, 6]
    assert io.read_index_set_json(path, 6) == idx
    path.write_text("[5, 2]")
    with pytest.raises(ValueError):
        io.read_index_set_json(path, 6)


def test_to_jsonable_handles_numpy():
    out = io.to_jsonable({"a": np.float64(0.1), "b": np.arange(2), "c": np.bool_(True),
                          "d": IndexSet.from_iterable([1], 2), "e": float("inf")})
    assert out == {"a": 0.1, "b": [0, 1], "c": True, "d": [1], "e": "inf"}
    json.dumps(out)
