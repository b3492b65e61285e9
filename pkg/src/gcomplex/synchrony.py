"""Threshold activation (bootstrap percolation) and the synchrony measures p_k, e_k.

A vertex outside the active set joins at the next step once at least ``t``
of its neighbours are active.  ``i*`` is the number of steps until every
vertex is active (``math.inf`` if the process stalls first).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable

import numpy as np

from gcomplex import kernels
from gcomplex.errors import DomainError, EnvelopeExceeded
from gcomplex.graph import Graph

EXHAUSTIVE_ENVELOPE = 10 ** 7
SEED_ALL_RULE = "a seed equal to the whole vertex set (i* = 0) contributes 1 to e_k"


@dataclass(frozen=True)
class SeedConfig:
    threshold: int
    seed: frozenset[int]

    def __init__(self, threshold: int, seed: Iterable[int]):
        object.__setattr__(self, "threshold", threshold)
        object.__setattr__(self, "seed", frozenset(seed))
        if threshold < 1:
            raise DomainError("threshold must be at least 1")

    def mask(self, order: int) -> int:
        m = 0
        for v in self.seed:
            if not 0 <= v < order:
                raise DomainError(f"seed vertex {v} outside 0..{order - 1}")
            m |= 1 << v
        return m


@dataclass(frozen=True)
class SynchronyOutcome:
    trajectory: tuple[frozenset[int], ...]
    i_star: float  # int, or math.inf

    @property
    def synchronized(self) -> bool:
        return math.isfinite(self.i_star)


def _members(mask: int) -> frozenset[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return frozenset(out)


def evolve(g: Graph, cfg: SeedConfig) -> SynchronyOutcome:
    """Run the process to its fixpoint; the trajectory ends at the fixpoint."""
    full = (1 << g.order) - 1
    s = cfg.mask(g.order)
    traj = [s]
    while s != full:
        add = 0
        for v in range(g.order):
            if not s >> v & 1 and (g.adj[v] & s).bit_count() >= cfg.threshold:
                add |= 1 << v
        if not add:
            break
        s |= add
        traj.append(s)
    i_star = len(traj) - 1 if s == full else math.inf
    return SynchronyOutcome(tuple(_members(m) for m in traj), i_star)


def i_star(g: Graph, threshold: int, seed: Iterable[int]) -> float:
    """i* via the compiled kernel (no trajectory)."""
    steps = kernels.istar(g.adj, threshold, SeedConfig(threshold, seed).mask(g.order))
    return math.inf if steps == kernels.INFINITE else steps


@dataclass(frozen=True)
class SynchronyMeasures:
    k: int
    p_k: Fraction
    e_k: Fraction
    method: str
    samples: int | None = None
    rng_seed: int | None = None
    histogram: tuple[int, ...] | None = None

    @property
    def sigma(self) -> float | None:
        """Binomial standard error of ``p_k`` for Monte Carlo estimates."""
        if self.samples is None:
            return None
        p = float(self.p_k)
        return math.sqrt(p * (1 - p) / self.samples)

    def to_dict(self) -> dict:
        out = {
            "k": self.k,
            "p_k": self.p_k,
            "e_k": self.e_k,
            "method": self.method,
            "seed_all_rule": SEED_ALL_RULE,
        }
        if self.samples is not None:
            out.update(samples=self.samples, rng_seed=self.rng_seed, sigma=self.sigma, rng="numpy PCG64")
        if self.histogram is not None:
            out["i_star_histogram"] = list(self.histogram)
        return out


def _contribution(hist, order: int) -> tuple[int, Fraction]:
    """(number synchronising, sum of 1/i*) from a histogram indexed by i*."""
    sync = sum(hist[: order + 1])
    total = Fraction(hist[0]) + sum((Fraction(c, i) for i, c in enumerate(hist[1: order + 1], start=1) if c), Fraction(0))
    return sync, total


def _check_args(g: Graph, t: int, k: int):
    if t < 1:
        raise DomainError("threshold must be at least 1")
    if not 0 <= k <= g.order:
        raise DomainError(f"subset size {k} outside 0..{g.order}")


def measures_exhaustive(g: Graph, t: int, k: int) -> SynchronyMeasures:
    """Exact p_k and e_k over all C(order, k) seed sets."""
    _check_args(g, t, k)
    total = comb(g.order, k)
    if total > EXHAUSTIVE_ENVELOPE:
        raise EnvelopeExceeded(f"C({g.order},{k}) = {total} seed sets exceeds {EXHAUSTIVE_ENVELOPE}")
    hist = kernels.sync_histogram(g.adj, t, k)
    sync, contrib = _contribution(hist, g.order)
    return SynchronyMeasures(k, Fraction(sync, total), contrib / total, "exhaustive", histogram=tuple(hist))


def sample_seeds(order: int, k: int, samples: int, rng_seed: int) -> list[int]:
    """Uniform k-subsets as bitmasks, from numpy's PCG64 seeded with ``rng_seed``."""
    rng = np.random.Generator(np.random.PCG64(rng_seed))
    seeds = []
    for _ in range(samples):
        mask = 0
        for v in rng.choice(order, size=k, replace=False):
            mask |= 1 << int(v)
        seeds.append(mask)
    return seeds


def measures_monte_carlo(g: Graph, t: int, k: int, samples: int, rng_seed: int = 0) -> SynchronyMeasures:
    """Estimate p_k and e_k from ``samples`` uniform seed sets (reproducible)."""
    _check_args(g, t, k)
    if samples < 1:
        raise DomainError("samples must be at least 1")
    if rng_seed < 0:
        raise DomainError("rng seed must be nonnegative")
    steps = kernels.istar_batch(g.adj, t, sample_seeds(g.order, k, samples, rng_seed))
    hist = [0] * (g.order + 2)
    for s in steps:
        hist[g.order + 1 if s == kernels.INFINITE else s] += 1
    sync, contrib = _contribution(hist, g.order)
    return SynchronyMeasures(k, Fraction(sync, samples), contrib / samples, "monte-carlo",
                             samples=samples, rng_seed=rng_seed, histogram=tuple(hist))
