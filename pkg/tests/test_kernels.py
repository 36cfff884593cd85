import importlib
import os
import subprocess
import sys
from itertools import combinations

import numpy as np
import pytest

from fdo import _pykernels, kernels

BACKENDS = [_pykernels]
try:
    BACKENDS.append(kernels.load_backend("cython"))
except ImportError:  # extension not built
    pass


@pytest.fixture(params=BACKENDS, ids=lambda m: m.__name__.rsplit(".", 1)[-1])
def k(request):
    return request.param


def test_first_fit(k):
    bin_of, fills = k.first_fit([6, 6, 4, 4], [0, 1, 2, 3], 10.0)
    assert bin_of.tolist() == [0, 1, 0, 1] and fills.tolist() == [10.0, 10.0]


def test_perm_diff_and_apply(k):
    assert k.perm_diff([1, 0, 2], [0, 1, 2]).tolist() == [[0, 1]]
    assert k.perm_diff([0, 1], [0, 1]).shape == (0, 2)
    assert k.apply_swaps([0, 1, 2], [[0, 2]]).tolist() == [2, 1, 0]


def test_subset_sum_counts_against_enumeration(k):
    rng = np.random.default_rng(3)
    for _ in range(30):
        v = rng.integers(0, 9, int(rng.integers(1, 10)))
        size = int(rng.integers(0, len(v) + 1))
        counts = k.subset_sum_counts(v, size)
        want = np.zeros_like(counts)
        for c in combinations(range(len(v)), size):
            want[int(sum(v[list(c)]))] += 1
        assert np.array_equal(counts, want)


def test_discrepancy_brute_force(k):
    rng = np.random.default_rng(4)
    pts = rng.random((40, 2))
    grid = 8
    worst = 0.0
    for a in range(1, grid + 1):
        for b in range(1, grid + 1):
            inside = np.sum((pts[:, 0] < a / grid) & (pts[:, 1] < b / grid))
            worst = max(worst, abs(inside / 40 - a * b / grid ** 2))
    assert k.star_discrepancy_grid(pts, grid) == pytest.approx(worst, abs=1e-15)


@pytest.mark.skipif(len(BACKENDS) < 2, reason="compiled backend not built")
def test_backends_agree_on_random_inputs():
    py, cy = BACKENDS
    rng = np.random.default_rng(5)
    for _ in range(200):
        n = int(rng.integers(1, 80))
        w = rng.uniform(0.1, 10, n)
        perm = rng.permutation(n)
        a, b = py.first_fit(w, perm, 10.0), cy.first_fit(w, perm, 10.0)
        assert np.array_equal(a[0], b[0]) and np.array_equal(a[1], b[1])
        x, y = rng.permutation(n), rng.permutation(n)
        assert np.array_equal(py.perm_diff(x, y), cy.perm_diff(x, y))
        pts = rng.random((64, int(rng.integers(1, 4))))
        assert py.star_discrepancy_grid(pts, 16) == cy.star_discrepancy_grid(pts, 16)


def test_pure_python_switch():
    env = dict(os.environ, FDO_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "import fdo.kernels as k; print(k.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


def test_unknown_backend():
    with pytest.raises(ValueError):
        kernels.load_backend("fortran")
    assert importlib.import_module("fdo.kernels").BACKEND in ("cython", "python")
