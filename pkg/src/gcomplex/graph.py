"""Simple undirected graphs on bitset rows, and their elementary invariants."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from gcomplex import kernels
from gcomplex.errors import DomainError


@dataclass(frozen=True)
class Graph:
    """Labelled simple graph; vertices are ``0..order-1``.

    ``adj[i]`` is an int bitset of the neighbours of ``i``.  Instances are
    immutable and validated on construction (symmetric, loop-free).
    """

    order: int
    adj: tuple[int, ...]

    def __post_init__(self):
        if self.order < 0 or len(self.adj) != self.order:
            raise DomainError(f"adjacency has {len(self.adj)} rows for order {self.order}")
        full = (1 << self.order) - 1
        for i, row in enumerate(self.adj):
            if row & ~full or row >> i & 1:
                raise DomainError(f"row {i} has a loop or an out-of-range neighbour")
            rest = row
            while rest:
                low = rest & -rest
                j = low.bit_length() - 1
                if not self.adj[j] >> i & 1:
                    raise DomainError(f"edge {i}-{j} is not symmetric")
                rest ^= low

    @classmethod
    def from_edges(cls, order: int, edges: Iterable[tuple[int, int]]) -> Graph:
        rows = [0] * order
        for u, v in edges:
            if u == v or not (0 <= u < order and 0 <= v < order):
                raise DomainError(f"bad edge ({u}, {v}) for order {order}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(order, tuple(rows))

    @classmethod
    def empty(cls, order: int) -> Graph:
        return cls(order, (0,) * order)

    @property
    def size(self) -> int:
        return sum(r.bit_count() for r in self.adj) // 2

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(r.bit_count() for r in self.adj)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        return [j for j in range(self.order) if self.adj[v] >> j & 1]

    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.order) for j in range(i + 1, self.order) if self.adj[i] >> j & 1]

    def adjacency_matrix(self) -> np.ndarray:
        a = np.zeros((self.order, self.order), dtype=np.int64)
        for i, j in self.edges():
            a[i, j] = a[j, i] = 1
        return a

    def relabel(self, perm: Sequence[int]) -> Graph:
        """Graph whose vertex ``i`` is the old vertex ``perm[i]``."""
        pos = [0] * self.order
        for p, v in enumerate(perm):
            pos[v] = p
        return Graph.from_edges(self.order, ((pos[u], pos[v]) for u, v in self.edges()))

    def __repr__(self) -> str:
        return f"Graph(order={self.order}, size={self.size})"


@dataclass(frozen=True)
class DegreeStats:
    degrees: tuple[int, ...]
    sum: int
    sum_squares: int
    sum_cubes: int
    min_deg: int
    max_deg: int

    @property
    def nearly_regular(self) -> bool:
        return self.max_deg - self.min_deg <= 1


class SrgParams(NamedTuple):
    v: int
    k: int
    lam: int
    mu: int

    def consistent(self) -> bool:
        return self.k * (self.k - self.lam - 1) == (self.v - self.k - 1) * self.mu


def degree_stats(g: Graph) -> DegreeStats:
    d = g.degrees
    return DegreeStats(
        degrees=d,
        sum=sum(d),
        sum_squares=sum(x * x for x in d),
        sum_cubes=sum(x ** 3 for x in d),
        min_deg=min(d, default=0),
        max_deg=max(d, default=0),
    )


def is_connected(g: Graph) -> bool:
    return kernels.is_connected(g.adj)


def is_nearly_regular(g: Graph) -> bool:
    return degree_stats(g).nearly_regular


def is_regular(g: Graph) -> bool:
    return len(set(g.degrees)) <= 1


def triangle_count(g: Graph) -> int:
    return kernels.triangle_count(g.adj)


def closed_walk_count(g: Graph, r: int) -> int:
    """Tr(A^r), exact."""
    if r < 0:
        raise DomainError("walk length must be nonnegative")
    from gcomplex.spectral import matrix_power_traces

    return matrix_power_traces(g.adjacency_matrix(), r)[r]


def complement(g: Graph) -> Graph:
    full = (1 << g.order) - 1
    return Graph(g.order, tuple(full & ~row & ~(1 << i) for i, row in enumerate(g.adj)))


def complete_graph_triangle_identity(g: Graph) -> int:
    """Triangles of g plus triangles of its complement, from order, size and degrees."""
    n = g.order - 1
    st = degree_stats(g)
    twice = 2 * comb(g.order, 3) - 2 * n * g.size + st.sum_squares
    return twice // 2


def srg_check(g: Graph) -> SrgParams | None:
    """Parameters (v, k, lambda, mu) if ``g`` is strongly regular, else None.

    Disconnected, complete and empty graphs are not counted as strongly regular.
    """
    v = g.order
    if v < 2 or not is_regular(g) or not is_connected(g):
        return None
    k = g.adj[0].bit_count()
    lam = mu = None
    for i in range(v):
        for j in range(i + 1, v):
            common = (g.adj[i] & g.adj[j]).bit_count()
            if g.adj[i] >> j & 1:
                if lam is None:
                    lam = common
                elif common != lam:
                    return None
            else:
                if mu is None:
                    mu = common
                elif common != mu:
                    return None
    if lam is None or mu is None:
        return None
    return SrgParams(v, k, lam, mu)


def canonical_labeling(g: Graph) -> list[int]:
    return list(kernels.canonical_labeling(g.adj)[0])


def canonical_key(g: Graph) -> tuple[int, ...]:
    """Hashable isomorphism-class key (rows of the canonical form)."""
    return tuple(kernels.canonical_labeling(g.adj)[1])


def canonical_form(g: Graph) -> Graph:
    """Relabelling of ``g`` with the lexicographically least adjacency rows.

    Equal for two graphs iff they are isomorphic.  Exhaustive search with
    equitable refinement, twin and automorphism pruning; comfortable up to
    order ~12 and for most larger sparse graphs.
    """
    if g.order == 0:
        return g
    return Graph(g.order, canonical_key(g))


def is_isomorphic(g1: Graph, g2: Graph) -> bool:
    if g1.order != g2.order or g1.size != g2.size or sorted(g1.degrees) != sorted(g2.degrees):
        return False
    return canonical_key(g1) == canonical_key(g2)
