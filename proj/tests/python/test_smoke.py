import math

import numpy as np
import pytest

import sminlab


def test_row_distances_identity():
    assert sminlab.row_distances(np.eye(4)) == pytest.approx([1.0] * 4)


def test_row_distances_match_inverse_columns():
    b = sminlab.sample_matrix("gaussian", 8, seed=3, trial=1)
    d = np.array(sminlab.row_distances(b))
    cols = np.linalg.norm(np.linalg.inv(b), axis=0)
    assert d * cols == pytest.approx(np.ones(8), rel=1e-9)


def test_singular_data_agrees_with_numpy():
    b = sminlab.sample_matrix("uniform_entry", 6, seed=11, shift="scaled_identity:2")
    data = sminlab.singular_data(b)
    s = np.linalg.svd(b, compute_uv=False)
    assert data["s_min"] == pytest.approx(s[-1], rel=1e-10)
    assert not data["singular"]


def test_sampling_is_deterministic():
    a = sminlab.sample_matrix("bernoulli", 5, seed=7, trial=2)
    assert np.array_equal(a, sminlab.sample_matrix("bernoulli", 5, seed=7, trial=2))
    assert set(np.unique(a)) <= {-1.0, 1.0}


def test_wilson_zero_hits():
    low, high = sminlab.wilson_interval(0, 10)
    assert low == 0.0
    assert high == pytest.approx(1.96**2 / (10 + 1.96**2))


def test_estimate_tail():
    out = sminlab.estimate_tail(
        {"dist": "gaussian", "n": 10, "trials": 50, "t_grid": [0.1, 1.0], "master_seed": 1}, workers=1
    )
    p = out["points"]
    assert len(p) == 2 and p[0]["hits"] <= p[1]["hits"]


def test_suite_and_cube():
    assert sminlab.run_suite("biorthogonality", 20, 1)["passed"]
    cube = sminlab.cube_demo()
    assert cube["holds"]
    assert cube["event_probability"] == pytest.approx(0.14206, abs=1e-5)


def test_errors_map_to_python():
    with pytest.raises(ValueError):
        sminlab.row_distances(np.ones((2, 3)))
    with pytest.raises(ValueError):
        sminlab.run_suite("no-such-suite", 1, 0)
    with pytest.raises(ValueError):
        sminlab.sample_matrix("gaussian", 3, seed=0, shift="diagonal:1,2")
    assert math.isfinite(sminlab.singular_data(np.eye(2))["hs_inverse"])
