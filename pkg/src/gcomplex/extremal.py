"""Trace filtration for extremal spanning-tree counts, and its analytic side.

The filtration starts from all connected graphs with a given order and size
(``g_0``/``g_1``) and at level ``r >= 2`` keeps the graphs maximising
``(-1)**(r-1) * Tr(L**r)``.  Every comparison is on exact integers.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb
from typing import Iterator, Sequence

import numpy as np

from gcomplex import kernels
from gcomplex.errors import DomainError, EnvelopeExceeded
from gcomplex.graph import Graph, canonical_key, complement, complete_graph_triangle_identity, degree_stats, is_connected, triangle_count
from gcomplex.spectral import (
    complement_spectrum,
    detect_two_eigenvalue,
    eigenvalues,
    shifted_tree_count,
    trace_powers,
    tree_count_exact,
)

GENERAL_ENVELOPE = 8
REGULAR_ENVELOPE = 10
TRACE_READING = "Tr(C^r) in the conjecture statement is read as Tr(L^r)"


@dataclass(frozen=True)
class FiltrationConfig:
    order: int
    size: int
    max_r: int = 3
    dedup: bool = True
    regular_only: bool = False
    allow_large: bool = False
    workers: int = 1

    def __post_init__(self):
        if self.order < 1:
            raise DomainError("order must be positive")
        if not 0 < self.size <= comb(self.order, 2):
            raise DomainError(f"size must lie in 1..{comb(self.order, 2)}")
        if self.max_r < 2:
            raise DomainError("max_r must be at least 2")
        if self.workers < 1:
            raise DomainError("workers must be at least 1")

    @property
    def regular_degree(self) -> int | None:
        if 2 * self.size % self.order:
            return None
        return 2 * self.size // self.order


def _check_envelope(order: int, regular_only: bool, allow_large: bool):
    limit = REGULAR_ENVELOPE if regular_only else GENERAL_ENVELOPE
    if order > limit and not allow_large:
        kind = "regular-only" if regular_only else "general"
        raise EnvelopeExceeded(f"{kind} enumeration is limited to order <= {limit} (pass allow_large to override)")


def _raw_rows(order: int, size: int, regular_only: bool) -> list[tuple[int, ...]]:
    if regular_only:
        if 2 * size % order:
            return []
        return kernels.enumerate_rows(order, size, 2 * size // order, True)
    return kernels.enumerate_rows(order, size, -1, True)


def enumerate_graphs(cfg: FiltrationConfig) -> Iterator[Graph]:
    """Connected graphs with ``cfg.order`` vertices and ``cfg.size`` edges.

    With ``dedup`` exactly one canonical representative per isomorphism
    class, in increasing canonical order; otherwise the raw (labelled,
    possibly repeated) output of the orderly generator.
    """
    _check_envelope(cfg.order, cfg.regular_only, cfg.allow_large)
    rows = _raw_rows(cfg.order, cfg.size, cfg.regular_only)
    if not cfg.dedup:
        for r in rows:
            yield Graph(cfg.order, tuple(r))
        return
    for code in _canonical_codes(cfg.order, rows):
        yield Graph(cfg.order, code)


def _canonical_codes(order: int, rows) -> list[tuple[int, ...]]:
    codes = {tuple(kernels.canonical_labeling(r)[1]) for r in rows}
    return sorted(codes)


@dataclass(frozen=True)
class GraphRecord:
    """A canonical graph with the exact invariants the filtration reads."""

    graph: Graph
    traces: tuple[int, ...]  # Tr(L^0) .. Tr(L^depth)
    tree_count: int
    triangles: int
    min_deg: int
    max_deg: int

    @property
    def code(self) -> tuple[int, ...]:
        return self.graph.adj

    def level_value(self, r: int) -> int:
        return (-1) ** (r - 1) * self.traces[r]


def _record(args) -> GraphRecord:
    order, code, depth = args
    g = Graph(order, code)
    st = degree_stats(g)
    return GraphRecord(g, tuple(trace_powers(g, depth)), tree_count_exact(g), triangle_count(g), st.min_deg, st.max_deg)


def _records(order: int, codes, depth: int, workers: int) -> list[GraphRecord]:
    jobs = [(order, c, depth) for c in codes]
    if workers > 1 and len(jobs) > 64:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_record, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    return [_record(j) for j in jobs]


@lru_cache(maxsize=None)
def _class_records(order: int, size: int, regular_only: bool, depth: int, workers: int = 1) -> tuple[GraphRecord, ...]:
    codes = _canonical_codes(order, _raw_rows(order, size, regular_only))
    return tuple(_records(order, codes, depth, workers))


@dataclass
class FiltrationLevel:
    r: int
    value: int
    survivors: list[GraphRecord]

    @property
    def count(self) -> int:
        return len(self.survivors)


@dataclass
class FiltrationReport:
    config: FiltrationConfig
    levels: list[FiltrationLevel]
    stabilized_at: int | None
    champions: list[GraphRecord]
    max_tree_count: int
    candidates: int

    @property
    def final(self) -> list[GraphRecord]:
        return self.levels[-1].survivors if self.levels else []

    def level(self, r: int) -> FiltrationLevel:
        return self.levels[r - 1]

    def to_dict(self) -> dict:
        cfg = self.config
        return {
            "order": cfg.order,
            "size": cfg.size,
            "max_r": cfg.max_r,
            "regular_only": cfg.regular_only,
            "candidates": self.candidates,
            "levels": [
                {
                    "r": lv.r,
                    "value": str(lv.value),
                    "count": lv.count,
                    "survivors": [rec.graph for rec in lv.survivors],
                }
                for lv in self.levels
            ],
            "stabilized_at": self.stabilized_at,
            "champions": [
                {"graph6": rec.graph, "tree_count": str(rec.tree_count), "triangles": rec.triangles}
                for rec in self.champions
            ],
            "max_tree_count": str(self.max_tree_count),
            "trace_reading": TRACE_READING,
        }


def _cospectral(recs: Sequence[GraphRecord], order: int) -> bool:
    # n power sums of n eigenvalues determine the multiset (Newton identities)
    first = recs[0].traces[: order + 1]
    return all(rec.traces[: order + 1] == first for rec in recs[1:])


def filtrate(records: Sequence[GraphRecord], order: int, size: int, max_r: int) -> tuple[list[FiltrationLevel], int | None]:
    """Apply levels 1..max_r to precomputed records (already deduplicated)."""
    current = sorted(records, key=lambda rec: rec.code)
    levels = [FiltrationLevel(1, 2 * size, current)]
    stabilized = 1 if current and _cospectral(current, order) else None
    for r in range(2, max_r + 1):
        best = max(rec.level_value(r) for rec in current)
        current = [rec for rec in current if rec.level_value(r) == best]
        levels.append(FiltrationLevel(r, best, current))
        if stabilized is None and _cospectral(current, order):
            stabilized = r
    return levels, stabilized


def run_filtration(cfg: FiltrationConfig, extra_depth: int = 0) -> FiltrationReport:
    _check_envelope(cfg.order, cfg.regular_only, cfg.allow_large)
    depth = max(cfg.max_r, cfg.order, extra_depth)
    records = _class_records(cfg.order, cfg.size, cfg.regular_only, depth, cfg.workers)
    if not records:
        return FiltrationReport(cfg, [], None, [], 0, 0)
    levels, stabilized = filtrate(records, cfg.order, cfg.size, cfg.max_r)
    final = levels[-1].survivors
    top = max(rec.tree_count for rec in final)
    champions = [rec for rec in final if rec.tree_count == top]
    return FiltrationReport(cfg, levels, stabilized, champions, top, len(records))


# -- conjecture harness ------------------------------------------------------

@lru_cache(maxsize=None)
def max_tree_count(order: int, size: int, regular_only: bool = False) -> int:
    """Direct maximum of the exact tree count over the class (0 if empty)."""
    depth = max(order, 3)
    recs = _class_records(order, size, regular_only, depth)
    return max((rec.tree_count for rec in recs), default=0)


@dataclass
class ConjectureReport:
    config: FiltrationConfig
    holds: bool
    filtration: FiltrationReport
    oracle_max: int
    oracle_maximizers: list[Graph]
    scope: str
    levels_used: int
    global_max: int | None = None
    global_max_at_exact: bool | None = None
    survivors_equal_maximizers: bool = False
    notes: list[str] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.holds

    def to_dict(self) -> dict:
        return {
            "holds": self.holds,
            "scope": self.scope,
            "levels_used": self.levels_used,
            "oracle_max": str(self.oracle_max),
            "oracle_maximizers": self.oracle_maximizers,
            "final_survivors": [rec.graph for rec in self.filtration.final],
            "global_max_at_most": None if self.global_max is None else str(self.global_max),
            "global_max_at_exact": self.global_max_at_exact,
            "survivors_equal_maximizers": self.survivors_equal_maximizers,
            "filtration": self.filtration.to_dict(),
            "notes": self.notes,
        }


def verify_conjecture(cfg: FiltrationConfig) -> ConjectureReport:
    """Check that every final filtration survivor has the maximum tree count.

    Levels run up to ``max(cfg.max_r, order)``, enough for the survivors to
    be cospectral.  The oracle enumerates the same class independently and
    takes the argmax of the exact tree count; the filtration is not
    consulted.  Whether the survivors are *all* the maximisers is reported
    separately (it fails for trees, where every graph has one spanning
    tree).  In general mode the "at most order vertices, at most size
    edges" maximum is also computed and reported separately.
    """
    levels_used = max(cfg.max_r, cfg.order)
    run_cfg = FiltrationConfig(cfg.order, cfg.size, levels_used, True, cfg.regular_only, cfg.allow_large, cfg.workers)
    report = run_filtration(run_cfg)

    _check_envelope(cfg.order, cfg.regular_only, cfg.allow_large)
    oracle = [Graph(cfg.order, c) for c in _canonical_codes(cfg.order, _raw_rows(cfg.order, cfg.size, cfg.regular_only))]
    counts = [tree_count_exact(g) for g in oracle]
    best = max(counts, default=0)
    maximizers = [g for g, t in zip(oracle, counts) if t == best]

    survivors = {rec.graph.adj for rec in report.final}
    max_set = {g.adj for g in maximizers}
    holds = bool(survivors) and survivors <= max_set
    scope = "regular" if cfg.regular_only else "general"
    notes = [TRACE_READING]
    global_max = at_exact = None
    if not cfg.regular_only and cfg.order <= GENERAL_ENVELOPE:
        global_max = max(
            max_tree_count(n, m)
            for n in range(1, cfg.order + 1)
            for m in range(0, min(cfg.size, comb(n, 2)) + 1)
        )
        at_exact = global_max == best
        if not at_exact:
            notes.append("a graph with fewer vertices or edges has more spanning trees; the verdict uses exact (order, size)")
    return ConjectureReport(cfg, holds, report, best, maximizers, scope, levels_used, global_max, at_exact,
                            survivors == max_set, notes)


# -- two-eigenvalue multiplicity curves --------------------------------------

@dataclass(frozen=True)
class CurvePoint:
    x: float
    f: float
    c: float
    f_prime: float
    c_prime: float


class MultiplicityCurves:
    """The log-product ``f`` and the cubic power sum ``c`` of the two-eigenvalue
    model as functions of the (continuous) multiplicity ``x`` of the larger
    eigenvalue, for fixed ``n``, ``r = sum x_i`` and ``s = sum x_i^2``.
    """

    def __init__(self, n: int, r: float, s: float):
        if n < 3:
            raise DomainError("need n >= 3 for a nonempty open interval (1, n-1)")
        disc = n * s - r * r
        if disc <= 0:
            raise DomainError(f"n*s - r^2 = {disc} must be positive")
        self.n, self.r, self.s = n, r, s
        self.z = math.sqrt(disc)

    def roots(self, x):
        n, r, z = self.n, self.r, self.z
        x1 = r / n + (z / n) * np.sqrt((n - x) / x)
        x2 = r / n - (z / n) * np.sqrt(x / (n - x))
        return x1, x2

    def f(self, x):
        x1, x2 = self.roots(x)
        return x * np.log(x1) + (self.n - x) * np.log(x2)

    def f_prime(self, x):
        x1, x2 = self.roots(x)
        return np.log(x1 / x2) - 0.5 * (x1 - x2) * (1 / x1 + 1 / x2)

    def c(self, x):
        n, r, z = self.n, self.r, self.z
        y = np.sqrt(x * (n - x))
        return n * r ** 3 + 3 * n * r * z * z + 2 * n * z ** 3 * (n - 2 * x) / (2 * y)

    def c_prime(self, x):
        n, z = self.n, self.z
        y = np.sqrt(x * (n - x))
        return -(n ** 3) * z ** 3 / (2 * y ** 3)

    def grid(self, samples: int, eps: float = 1e-6) -> np.ndarray:
        if samples < 3:
            raise DomainError("need at least 3 samples")
        return np.linspace(1 + eps, self.n - 1 - eps, samples)


def multiplicity_curves(n: int, r: float, s: float, samples: int = 1000) -> list[CurvePoint]:
    """Evaluate ``f``, ``c`` and their closed-form derivatives on a uniform grid
    over ``[1+eps, n-1-eps]``.  Raises DomainError if ``x2 <= 0`` anywhere."""
    mc = MultiplicityCurves(n, r, s)
    xs = mc.grid(samples)
    _, x2 = mc.roots(xs)
    if float(x2.min()) <= 0:
        raise DomainError(f"smaller eigenvalue reaches {float(x2.min()):.6g} <= 0 on the grid")
    f, fp, c, cp = mc.f(xs), mc.f_prime(xs), mc.c(xs), mc.c_prime(xs)
    return [CurvePoint(float(a), float(b), float(d), float(e), float(h)) for a, b, d, e, h in zip(xs, f, c, fp, cp)]


def log_slope_g(t):
    """ln(1+t) - t(2+t) / (2(1+t)); zero at 0 and negative for t > 0."""
    return np.log1p(t) - 0.5 * t * (2 + t) / (1 + t)


def log_slope_g_prime(t):
    return -(t * t) / (2 * (1 + t) ** 2)


# -- divisibility and complements --------------------------------------------

def divisibility_check(order: int, d: int) -> bool:
    """Whether ``n = order - 1`` divides ``d(d+1)``."""
    n = order - 1
    if n <= 0:
        raise DomainError("order must be at least 2")
    return d * (d + 1) % n == 0


@dataclass
class ComplementReport:
    order: int
    connected: bool
    complement_connected: bool
    spectrum_gap: float
    spectrum_dual: bool
    two_eigenvalue: tuple[bool, bool] | None
    nearly_regular: tuple[bool, bool]
    triangles: tuple[int, int]
    triangle_identity: int
    identity_holds: bool
    pairing: str

    @property
    def passed(self) -> bool:
        ok = self.spectrum_dual and self.identity_holds and self.nearly_regular[0] == self.nearly_regular[1]
        if self.two_eigenvalue is not None:
            ok = ok and self.two_eigenvalue[0] == self.two_eigenvalue[1]
        return ok

    def to_dict(self) -> dict:
        return {
            "order": self.order,
            "connected": self.connected,
            "complement_connected": self.complement_connected,
            "spectrum_gap": self.spectrum_gap,
            "spectrum_dual": self.spectrum_dual,
            "two_eigenvalue": None if self.two_eigenvalue is None else list(self.two_eigenvalue),
            "nearly_regular": list(self.nearly_regular),
            "triangles": list(self.triangles),
            "triangle_identity": self.triangle_identity,
            "identity_holds": self.identity_holds,
            "pairing": self.pairing,
            "passed": self.passed,
        }


def complement_duality_check(g: Graph, tol: float = 1e-8) -> ComplementReport:
    """Check the complement facts on ``g``.

    Spectrum duality and the triangle identity are checked for every input;
    the two-eigenvalue equivalence only when both graphs are connected.
    """
    h = complement(g)
    conn, hconn = is_connected(g), is_connected(h)
    sp, hsp = eigenvalues(g), eigenvalues(h)
    mapped = complement_spectrum(sp, g.order)
    gap = float(np.max(np.abs(np.array(mapped.values) - np.array(hsp.values)))) if g.order else 0.0
    two = None
    if conn and hconn:
        two = (detect_two_eigenvalue(sp) is not None, detect_two_eigenvalue(hsp) is not None)
    nr = (degree_stats(g).nearly_regular, degree_stats(h).nearly_regular)
    tri = (triangle_count(g), triangle_count(h))
    ident = complete_graph_triangle_identity(g)
    if nr[0]:
        pairing = (
            f"triangle sum is fixed at {ident} over this nearly regular class, so fewer triangles in the graph "
            "(the maximal-complexity candidate) means more in the complement (the minimal-complexity candidate)"
        )
    else:
        pairing = "not nearly regular; no pairing"
    return ComplementReport(g.order, conn, hconn, gap, gap <= tol, two, nr, tri, ident, tri[0] + tri[1] == ident, pairing)


# -- superimposed complete graphs --------------------------------------------

@dataclass
class SuperimposeRow:
    x: int
    tree_counts: list[int]
    ranking: list[int]


@dataclass
class SuperimposeTable:
    graphs: list[Graph]
    rows: list[SuperimposeRow]
    trace_key_ranking: list[int]
    shift_per_copy: int
    stated_shift_matches: list[bool]

    @property
    def ranking_matches_at_largest_x(self) -> bool:
        return bool(self.rows) and self.rows[-1].ranking == self.trace_key_ranking

    def to_dict(self) -> dict:
        return {
            "graphs": self.graphs,
            "rows": [{"x": r.x, "tree_counts": [str(t) for t in r.tree_counts], "ranking": r.ranking} for r in self.rows],
            "trace_key_ranking": self.trace_key_ranking,
            "ranking_matches_at_largest_x": self.ranking_matches_at_largest_x,
            "shift_per_copy": self.shift_per_copy,
            "shift_by_x_matches_exact": self.stated_shift_matches,
            "note": "each copy of the complete graph shifts every nonzero eigenvalue by the order, not by 1",
        }


def _rank(values: Sequence) -> list[int]:
    """Indices sorted by value (largest first), ties broken by index."""
    return sorted(range(len(values)), key=lambda i: (values[i], -i), reverse=True)


def trace_key(g: Graph, depth: int | None = None) -> tuple[int, ...]:
    """(Tr L, -Tr L^2, Tr L^3, ...): larger keys win for large superimposition."""
    depth = g.order if depth is None else depth
    tr = trace_powers(g, depth)
    return tuple((-1) ** (r - 1) * tr[r] for r in range(1, depth + 1))


def superimpose_demo(graphs: Graph | Sequence[Graph], x_max: int) -> SuperimposeTable:
    """Exact tree counts of ``g + x K`` (x copies of the complete graph on the
    same vertices) for ``x = 0..x_max``, and the ranking they induce.

    Ground truth is the Bareiss determinant of ``L + x L(K)``.  The table also
    records whether the product of ``(x_i + x)`` (the shift by ``x`` per copy)
    would have reproduced it.
    """
    if isinstance(graphs, Graph):
        graphs = [graphs]
    graphs = list(graphs)
    if not graphs:
        raise DomainError("need at least one graph")
    order = graphs[0].order
    if any(g.order != order for g in graphs):
        raise DomainError("graphs must share the same order")
    if order > 10:
        raise DomainError("superimposition demo is limited to order <= 10")
    if x_max < 0:
        raise DomainError("x_max must be nonnegative")
    rows = []
    for x in range(x_max + 1):
        counts = [shifted_tree_count(g, x) for g in graphs]
        rows.append(SuperimposeRow(x, counts, _rank(counts)))
    keys = [trace_key(g) for g in graphs]
    stated = []
    for g in graphs:
        vals = eigenvalues(g).values[1:]
        ok = True
        for x in range(1, x_max + 1):
            approx = math.exp(sum(math.log(v + x) for v in vals) - math.log(order)) if all(v + x > 0 for v in vals) else 0.0
            exact = shifted_tree_count(g, x)
            ok = ok and math.isclose(approx, exact, rel_tol=1e-6)
        stated.append(ok)
    return SuperimposeTable(graphs, rows, _rank(keys), order, stated)
