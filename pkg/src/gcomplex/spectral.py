"""Laplacians, exact spanning-tree counts, spectra and trace invariants.

The integer paths (Bareiss determinant, exact matrix powers) are
authoritative; floating-point spectra are used for structure detection and
as a cross-check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from gcomplex import kernels
from gcomplex.errors import ConvergenceError, DegenerateSpectrumError, DomainError
from gcomplex.graph import Graph, degree_stats, is_connected, triangle_count

SNAP_TOL = 1e-6
GAP_PER_VERTEX = 1e-6
_INT64_SAFE = 2 ** 62


def laplacian(g: Graph) -> np.ndarray:
    lap = -g.adjacency_matrix()
    lap[np.diag_indices(g.order)] = g.degrees
    return lap


def _minor_rows(g: Graph, drop: int) -> list[list[int]]:
    lap = laplacian(g).tolist()
    return [[x for j, x in enumerate(row) if j != drop] for i, row in enumerate(lap) if i != drop]


def tree_count_exact(g: Graph, drop: int | None = None) -> int:
    """Number of labelled spanning trees (0 when disconnected).

    Determinant of the Laplacian with row/column ``drop`` removed (default:
    the last vertex), by fraction-free elimination.
    """
    if g.order == 0:
        return 0
    if g.order == 1:
        return 1
    if not is_connected(g):
        return 0
    if drop is None:
        drop = g.order - 1
    return kernels.bareiss_det(_minor_rows(g, drop))


def shifted_tree_count(g: Graph, copies: int) -> int:
    """Spanning trees of the multigraph ``g`` plus ``copies`` superimposed
    complete graphs on the same vertex set (Laplacian ``L + copies*L(K)``)."""
    n1 = g.order
    lap = laplacian(g) + copies * (n1 * np.eye(n1, dtype=np.int64) - np.ones((n1, n1), dtype=np.int64))
    if n1 <= 1:
        return 1
    minor = lap[:-1, :-1].tolist()
    return kernels.bareiss_det(minor)


@dataclass(frozen=True)
class Spectrum:
    """Ascending Laplacian eigenvalues with multiplicity clusters.

    ``clusters`` holds ``(value, multiplicity)``; a cluster value within
    ``SNAP_TOL`` of an integer is replaced by that integer and flagged in
    ``snapped``.
    """

    values: tuple[float, ...]
    clusters: tuple[tuple[float, int], ...]
    snapped: tuple[bool, ...]

    @classmethod
    def from_values(cls, values) -> Spectrum:
        vals = tuple(sorted(float(x) for x in values))
        gap = GAP_PER_VERTEX * max(len(vals), 1)
        groups: list[list[float]] = []
        for x in vals:
            if groups and x - groups[-1][-1] <= gap:
                groups[-1].append(x)
            else:
                groups.append([x])
        clusters = []
        snapped = []
        for grp in groups:
            mean = math.fsum(grp) / len(grp)
            near = round(mean)
            if abs(mean - near) <= SNAP_TOL:
                clusters.append((float(near), len(grp)))
                snapped.append(True)
            else:
                clusters.append((mean, len(grp)))
                snapped.append(False)
        return cls(vals, tuple(clusters), tuple(snapped))

    @property
    def order(self) -> int:
        return len(self.values)

    def nonzero_clusters(self, tol: float = SNAP_TOL) -> tuple[tuple[float, int], ...]:
        out = []
        for value, mult in self.clusters:
            if abs(value) <= tol:
                if mult > 1:
                    out.append((0.0, mult - 1))
                continue
            out.append((value, mult))
        return tuple(out)

    def multiset(self) -> list[float]:
        """Cluster values expanded by multiplicity (snapped values exact)."""
        return [v for v, m in self.clusters for _ in range(m)]


def eigenvalues(g: Graph, tol: float = 1e-10) -> Spectrum:
    """Full Laplacian spectrum via LAPACK ``syevd``.

    Raises ConvergenceError if some eigenpair residual exceeds ``tol*||L||``.
    """
    if tol <= 0:
        raise DomainError("tol must be positive")
    if g.order == 0:
        return Spectrum((), (), ())
    lap = laplacian(g).astype(float)
    vals, vecs = np.linalg.eigh(lap)
    norm = max(float(np.abs(vals).max()), 1.0)
    resid = np.linalg.norm(lap @ vecs - vecs * vals, axis=0)
    if float(resid.max()) > tol * norm:
        raise ConvergenceError(f"eigen residual {resid.max():.3e} exceeds {tol * norm:.3e}")
    return Spectrum.from_values(vals)


def tree_count_from_spectrum(sp: Spectrum, tol: float = 1e-9) -> float:
    """(x_1 * ... * x_n) / (n + 1), evaluated through logarithms."""
    if sp.order < 2:
        return 1.0
    rest = sp.values[1:]
    if min(rest) <= tol:
        raise DegenerateSpectrumError("a nonzero-index eigenvalue vanishes (disconnected graph)")
    logs = math.fsum(math.log(x) for x in rest) - math.log(sp.order)
    try:
        return math.exp(logs)
    except OverflowError:
        return math.inf


def matrix_power_traces(mat, r_max: int) -> list[int]:
    """[Tr(M^0), ..., Tr(M^r_max)] as exact Python ints."""
    m = np.asarray(mat, dtype=np.int64)
    n = m.shape[0]
    traces = [n]
    if r_max == 0:
        return traces
    row_bound = int(np.abs(m).sum(axis=1).max()) if n else 0
    exact_int64 = row_bound <= 1 or r_max * math.log2(row_bound) < math.log2(_INT64_SAFE)
    base = m if exact_int64 else m.astype(object)
    power = base.copy()
    traces.append(int(np.trace(power)))
    for _ in range(2, r_max + 1):
        power = power @ base
        traces.append(int(np.trace(power)))
    return traces


def trace_powers(g: Graph, r_max: int) -> list[int]:
    """[Tr(L^0), ..., Tr(L^r_max)], exact."""
    if r_max < 0:
        raise DomainError("r must be nonnegative")
    return matrix_power_traces(laplacian(g), r_max)


def trace_power(g: Graph, r: int) -> int:
    return trace_powers(g, r)[r]


def trace_cube_identity_check(g: Graph) -> bool:
    """Tr(L^3) == sum d^3 + 3 sum d^2 - 6 * triangles, exactly."""
    st = degree_stats(g)
    return trace_power(g, 3) == st.sum_cubes + 3 * st.sum_squares - 6 * triangle_count(g)


@dataclass(frozen=True)
class TwoEigenvalueModel:
    """Connected graph whose nonzero Laplacian eigenvalues take two values.

    ``n`` is order-1, ``r`` the trace, ``s`` the trace of the square,
    ``n1`` the multiplicity of the larger value ``x1``.
    """

    n: int
    r: int
    s: int
    z: float
    n1: int
    x1: float
    x2: float


def two_eigenvalue_roots(n: int, r: int, s: int, n1: int) -> tuple[float, float]:
    """The two eigenvalues fixed by their power sums ``r``, ``s`` and the
    multiplicity ``n1`` of the larger one (out of ``n``)."""
    if not 1 <= n1 <= n - 1:
        raise DomainError(f"multiplicity {n1} outside [1, {n - 1}]")
    disc = n * s - r * r
    if disc < 0:
        raise DomainError(f"n*s - r^2 = {disc} < 0")
    z = math.sqrt(disc)
    x1 = r / n + (z / n) * math.sqrt((n - n1) / n1)
    x2 = r / n - (z / n) * math.sqrt(n1 / (n - n1))
    return x1, x2


def detect_two_eigenvalue(sp: Spectrum, rel_tol: float = 1e-9) -> TwoEigenvalueModel | None:
    nz = sp.nonzero_clusters()
    if len(nz) != 2 or any(v == 0.0 for v, _ in nz):
        return None
    (lo, m_lo), (hi, m_hi) = nz
    n = sp.order - 1
    r = round(math.fsum(sp.values))
    s = round(math.fsum(x * x for x in sp.values))
    x1, x2 = two_eigenvalue_roots(n, r, s, m_hi)
    if not (math.isclose(x1, hi, rel_tol=rel_tol, abs_tol=rel_tol)
            and math.isclose(x2, lo, rel_tol=rel_tol, abs_tol=rel_tol)):
        return None
    return TwoEigenvalueModel(n=n, r=r, s=s, z=math.sqrt(n * s - r * r), n1=m_hi, x1=x1, x2=x2)


def complement_spectrum(sp: Spectrum, order: int | None = None) -> Spectrum:
    """Spectrum of the complement: nonzero ``x`` maps to ``order - x``."""
    order = sp.order if order is None else order
    if not sp.values:
        return sp
    mapped = [0.0] + [order - x for x in sp.values[1:]]
    return Spectrum.from_values(mapped)
