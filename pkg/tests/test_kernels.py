import os
import subprocess
import sys
from math import comb

import numpy as np
import pytest
from hypothesis import given, settings

from gcomplex import _pykernels as py
from gcomplex import kernels
from conftest import graphs, random_corpus

try:
    from gcomplex import _ckernels as ck
except ImportError:  # pure install
    ck = None

needs_c = pytest.mark.skipif(ck is None, reason="compiled kernels not built")


def test_backend_is_reported():
    assert kernels.BACKEND in ("cython", "python")


def test_pure_env_forces_fallback():
    env = dict(os.environ, GCOMPLEX_PURE="1")
    out = subprocess.run([sys.executable, "-c", "import gcomplex; print(gcomplex.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


@needs_c
@settings(max_examples=200, deadline=None)
@given(graphs(max_order=12))
def test_compiled_matches_reference(g):
    rows = g.adj
    assert ck.triangle_count(rows) == py.triangle_count(rows)
    assert ck.is_connected(rows) == py.is_connected(rows)
    assert tuple(ck.canonical_labeling(rows)[1]) == tuple(py.canonical_labeling(rows)[1])
    for seed in (0, 1, (1 << g.order) - 1, 5 % (1 << g.order) if g.order else 0):
        for t in (1, 2, 3):
            assert ck.istar(rows, t, seed) == py.istar(rows, t, seed)


@needs_c
def test_compiled_bareiss_matches_reference():
    rng = np.random.default_rng(3)
    for _ in range(200):
        n = int(rng.integers(1, 9))
        m = rng.integers(-20, 21, size=(n, n)).tolist()
        assert ck.bareiss_det(m) == py.bareiss_det(m)
    big = [[10 ** 12 + i * j for j in range(6)] for i in range(6)]
    big[0][0] += 7
    assert ck.bareiss_det(big) == py.bareiss_det(big)


def test_bareiss_matches_float_det():
    rng = np.random.default_rng(4)
    for _ in range(100):
        n = int(rng.integers(1, 7))
        m = rng.integers(-5, 6, size=(n, n))
        assert kernels.bareiss_det(m.tolist()) == round(np.linalg.det(m))


def test_bareiss_handles_zero_pivots():
    assert kernels.bareiss_det([[0, 1], [1, 0]]) == -1
    assert kernels.bareiss_det([[0, 0], [0, 1]]) == 0
    assert kernels.bareiss_det([]) == 1


@needs_c
def test_sync_histogram_parity():
    for g in random_corpus(40, 9, seed=11, min_order=2):
        for t in (1, 2):
            k = g.order // 2
            assert list(ck.sync_histogram(g.adj, t, k)) == list(py.sync_histogram(g.adj, t, k))


def _classes(gen, n, m, degree=-1):
    return {tuple(kernels.canonical_labeling(r)[1]) for r in gen(n, m, degree, True)}


# connected graphs on n vertices (OEIS A001349)
CONNECTED = {1: 1, 2: 1, 3: 2, 4: 6, 5: 21, 6: 112, 7: 853}


@pytest.mark.parametrize("n", range(1, 8))
def test_enumeration_counts_connected_graphs(n):
    total = sum(len(_classes(kernels.enumerate_rows, n, m)) for m in range(max(n - 1, 0), comb(n, 2) + 1))
    assert total == CONNECTED[n]


@pytest.mark.parametrize("n,d,count", [(6, 3, 2), (8, 3, 5), (10, 3, 19), (9, 4, 16), (7, 4, 2), (8, 4, 6)])
def test_enumeration_counts_regular_graphs(n, d, count):
    assert len(_classes(kernels.enumerate_rows, n, n * d // 2, d)) == count


@pytest.mark.parametrize("n", range(2, 7))
def test_pure_enumerator_matches_compiled_classes(n):
    for m in range(n - 1, comb(n, 2) + 1):
        a = {tuple(py.canonical_labeling(r)[1]) for r in py.enumerate_rows(n, m)}
        b = _classes(kernels.enumerate_rows, n, m)
        assert a == b
