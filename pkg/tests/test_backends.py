"""The numba and numpy kernel lanes must produce identical numbers."""

import os
import subprocess
import sys

import numpy as np
import pytest

from brownhull import _kernels_numba as nb_lane
from brownhull import _kernels_numpy as np_lane
from brownhull import backend_name, rng

KEY = rng.stream_key(2024, 17)


def test_active_backend_is_known():
    assert backend_name() in ("numba", "numpy")


def test_uniform_blocks_bitwise_equal():
    a = nb_lane.uniform_block(KEY, 65_536)
    b = np_lane.uniform_block(KEY, 65_536)
    assert np.array_equal(a, b)


def test_gaussian_blocks_bitwise_equal():
    # Covers both the rational central branch and the log-based tails.
    a = nb_lane.gaussian_block(KEY, 200_000)
    b = np_lane.gaussian_block(KEY, 200_000)
    assert np.array_equal(a, b)
    assert np.abs(a).max() > 3.5  # tails actually exercised


def test_gaussian_block_matches_scalar_reference():
    u = np_lane.uniform_block(KEY, 2000)
    ref = np.array([rng.inv_norm_cdf(float(p)) for p in u])
    assert np.array_equal(np_lane.gaussian_block(KEY, 2000), ref)


@pytest.mark.parametrize("steps", [2, 17, 1024])
def test_paths_bitwise_equal(steps):
    assert np.array_equal(nb_lane.bm_path(KEY, steps), np_lane.bm_path(KEY, steps))
    assert np.array_equal(nb_lane.bb_path(KEY, steps), np_lane.bb_path(KEY, steps))


def test_hull_indices_equal_random_points():
    rs = np.random.default_rng(3)
    for n in (2, 3, 20, 33, 5000):
        xs = rs.normal(size=n)
        ys = rs.normal(size=n)
        assert np.array_equal(nb_lane.hull_indices(xs, ys),
                              np_lane.hull_indices(xs, ys)), n


def test_hull_indices_equal_with_duplicates():
    # Pooled paths repeat the origin many times; both lanes must agree.
    rs = np.random.default_rng(4)
    xs = np.concatenate([np.zeros(5), rs.normal(size=200), np.zeros(3)])
    ys = np.concatenate([np.zeros(5), rs.normal(size=200), np.zeros(3)])
    assert np.array_equal(nb_lane.hull_indices(xs, ys),
                          np_lane.hull_indices(xs, ys))


def test_hull_metrics_batch_bitwise_equal():
    a = nb_lane.hull_metrics_batch(99, 5, 25, 2, 1, 256)
    b = np_lane.hull_metrics_batch(99, 5, 25, 2, 1, 256)
    assert np.array_equal(a, b)


def test_argmax_batch_bitwise_equal():
    a = nb_lane.argmax_batch(99, 0, 40, 1, 2, 256)
    b = np_lane.argmax_batch(99, 0, 40, 1, 2, 256)
    for x, y in zip(a, b):
        assert np.array_equal(x, y)


def test_env_flag_selects_numpy_lane():
    env = dict(os.environ, BROWNHULL_BACKEND="numpy")
    out = subprocess.run(
        [sys.executable, "-c", "import brownhull; print(brownhull.backend_name())"],
        capture_output=True, text=True, env=env, check=True)
    assert out.stdout.strip() == "numpy"


def test_env_flag_rejects_unknown_backend():
    env = dict(os.environ, BROWNHULL_BACKEND="cuda")
    out = subprocess.run(
        [sys.executable, "-c", "import brownhull"],
        capture_output=True, text=True, env=env)
    assert out.returncode != 0
    assert "BROWNHULL_BACKEND" in out.stderr
