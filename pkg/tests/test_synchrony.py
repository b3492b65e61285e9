import math
from fractions import Fraction

import numpy as np
import pytest

from gcomplex.errors import DomainError, EnvelopeExceeded
from gcomplex.families import complete, cycle, petersen
from gcomplex.synchrony import (
    SeedConfig,
    evolve,
    i_star,
    measures_exhaustive,
    measures_monte_carlo,
    sample_seeds,
)
from conftest import random_corpus


def test_evolve_examples():
    out = evolve(cycle(4), SeedConfig(1, {0}))
    assert out.trajectory == (frozenset({0}), frozenset({0, 1, 3}), frozenset({0, 1, 2, 3}))
    assert out.i_star == 2 and out.synchronized
    assert evolve(cycle(4), SeedConfig(2, {0, 2})).i_star == 1
    stuck = evolve(cycle(4), SeedConfig(2, {0, 1}))
    assert stuck.i_star == math.inf and not stuck.synchronized
    assert stuck.trajectory == (frozenset({0, 1}),)
    assert evolve(cycle(4), SeedConfig(3, range(4))).i_star == 0


def test_seed_validation():
    with pytest.raises(DomainError):
        SeedConfig(0, {0})
    with pytest.raises(DomainError):
        evolve(cycle(4), SeedConfig(1, {7}))


def test_exhaustive_examples():
    m = measures_exhaustive(cycle(4), 2, 2)
    assert m.p_k == Fraction(1, 3) and m.e_k == Fraction(1, 3)
    m = measures_exhaustive(cycle(4), 1, 1)
    assert m.p_k == 1 and m.e_k == Fraction(1, 2)
    for g in (cycle(5), petersen()):
        m = measures_exhaustive(g, 1, g.order)
        assert m.p_k == 1 and m.e_k == 1


def test_exhaustive_denominator_and_bounds():
    from math import comb

    for g in random_corpus(30, 9, seed=41, min_order=3):
        for t in (1, 2):
            k = g.order // 2
            m = measures_exhaustive(g, t, k)
            assert comb(g.order, k) % m.p_k.denominator == 0
            assert 0 <= m.e_k <= m.p_k <= 1


def test_exhaustive_envelope():
    with pytest.raises(EnvelopeExceeded):
        measures_exhaustive(complete(40), 1, 20)


def test_monte_carlo_close_to_exact():
    m = measures_monte_carlo(cycle(4), 2, 2, 60000, 0)
    assert abs(float(m.p_k) - 1 / 3) <= 3 * m.sigma
    assert measures_monte_carlo(petersen(), 1, 1, 200, 0).p_k == 1
    with pytest.raises(DomainError):
        measures_monte_carlo(cycle(4), 1, 1, 0, 0)


def test_monte_carlo_reproducible():
    a = measures_monte_carlo(petersen(), 2, 3, 500, 17)
    b = measures_monte_carlo(petersen(), 2, 3, 500, 17)
    assert a == b
    assert sample_seeds(10, 3, 5, 1) == sample_seeds(10, 3, 5, 1)
    assert all(bin(s).count("1") == 3 for s in sample_seeds(10, 3, 50, 2))


def test_monte_carlo_agrees_with_exhaustive():
    for g in random_corpus(6, 8, seed=43, min_order=5):
        for t in (1, 2):
            k = 2
            exact = measures_exhaustive(g, t, k)
            est = measures_monte_carlo(g, t, k, 20000, 5)
            p = float(exact.p_k)
            sigma = math.sqrt(max(p * (1 - p), 1e-12) / 20000)
            assert abs(float(est.p_k) - p) <= 3 * sigma + 1e-12


def _random_cases(count, seed):
    rng = np.random.default_rng(seed)
    for g in random_corpus(count, 10, seed=seed, min_order=2):
        mask = [v for v in range(g.order) if rng.random() < 0.4]
        extra = mask + [v for v in range(g.order) if v not in mask and rng.random() < 0.3]
        yield g, mask, extra, int(rng.integers(1, 4))


def test_monotonicity_properties():
    for g, seed, bigger, t in _random_cases(500, 47):
        out = evolve(g, SeedConfig(t, seed))
        for a, b in zip(out.trajectory, out.trajectory[1:]):
            assert a < b
        if out.synchronized:
            assert out.i_star <= g.order
        assert out.i_star == i_star(g, t, seed)
        assert evolve(g, SeedConfig(t + 1, seed)).i_star >= out.i_star
        big = evolve(g, SeedConfig(t, bigger))
        for i, s in enumerate(out.trajectory):
            j = min(i, len(big.trajectory) - 1)
            assert s <= big.trajectory[j]
