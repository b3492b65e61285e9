"""Constructors for the named graph families, and SRG fixture verification."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Any, Mapping

from gcomplex.errors import DomainError
from gcomplex.graph import Graph, SrgParams, is_connected, srg_check, triangle_count


def cycle(n: int) -> Graph:
    if n < 3:
        raise DomainError("cycle needs n >= 3")
    return Graph.from_edges(n, ((i, (i + 1) % n) for i in range(n)))


def path(n: int) -> Graph:
    if n < 1:
        raise DomainError("path needs n >= 1")
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def complete(n: int) -> Graph:
    if n < 1:
        raise DomainError("complete graph needs n >= 1")
    return Graph.from_edges(n, combinations(range(n), 2))


def complete_multipartite(p: int, q: int) -> Graph:
    """K_{q,...,q} with ``p`` parts; part of vertex v is ``v // q``."""
    if p < 2 or q < 1:
        raise DomainError("complete multipartite needs p >= 2, q >= 1")
    n = p * q
    return Graph.from_edges(n, ((u, v) for u, v in combinations(range(n), 2) if u // q != v // q))


def complete_bipartite(a: int, b: int) -> Graph:
    if a < 1 or b < 1:
        raise DomainError("complete bipartite needs both sides nonempty")
    return Graph.from_edges(a + b, ((u, a + v) for u in range(a) for v in range(b)))


def moebius_ladder(two_n: int) -> Graph:
    """Cycle on ``two_n`` vertices plus the ``two_n/2`` long diagonals."""
    if two_n < 6 or two_n % 2:
        raise DomainError("Moebius ladder needs an even vertex count >= 6")
    half = two_n // 2
    edges = [(i, (i + 1) % two_n) for i in range(two_n)]
    edges += [(i, i + half) for i in range(half)]
    return Graph.from_edges(two_n, edges)


def moebius_tree_count(two_n: int) -> int:
    """Closed-form spanning-tree count of the Moebius ladder, in integers.

    ``(2+sqrt3)^j + (2-sqrt3)^j`` is produced by ``u_{j+1} = 4 u_j - u_{j-1}``.
    """
    if two_n < 6 or two_n % 2:
        raise DomainError("Moebius ladder needs an even vertex count >= 6")
    n = two_n // 2
    u_prev, u = 2, 4
    for _ in range(n - 1):
        u_prev, u = u, 4 * u - u_prev
    total = n * (u + 2)
    assert total % 2 == 0
    return total // 2


def complete_minus_matching(order: int, match_size: int) -> Graph:
    """K_order without the disjoint edges 0-1, 2-3, ... (``match_size`` of them)."""
    if order < 1 or not 0 <= match_size <= order // 2:
        raise DomainError(f"matching of size {match_size} impossible on {order} vertices")
    removed = {(2 * i, 2 * i + 1) for i in range(match_size)}
    return Graph.from_edges(order, (e for e in combinations(range(order), 2) if e not in removed))


def rook_graph(a: int, b: int) -> Graph:
    """Lattice (rook's) graph K_a x K_b: cells sharing a row or column."""
    if a < 1 or b < 1:
        raise DomainError("rook graph needs positive dimensions")
    cells = list(product(range(a), range(b)))
    return Graph.from_edges(
        a * b,
        ((i, j) for i, j in combinations(range(a * b), 2)
         if cells[i][0] == cells[j][0] or cells[i][1] == cells[j][1]),
    )


def petersen() -> Graph:
    """Kneser graph K(5,2): 2-subsets of a 5-set, adjacent when disjoint."""
    pairs = list(combinations(range(5), 2))
    return Graph.from_edges(10, ((i, j) for i, j in combinations(range(10), 2)
                                 if not set(pairs[i]) & set(pairs[j])))


def clebsch() -> Graph:
    """Folded 5-cube: 4-bit words adjacent at Hamming distance 1 or 4."""
    return Graph.from_edges(16, ((i, j) for i, j in combinations(range(16), 2)
                                 if (i ^ j).bit_count() in (1, 4)))


def hoffman_singleton() -> Graph:
    """Robertson's pentagons-and-pentagrams construction.

    Pentagon ``P_h`` vertex ``j`` is joined to ``j +- 1``, pentagram ``Q_i``
    vertex ``j`` to ``j +- 2`` (mod 5), and ``P_h[j]`` to ``Q_i[h*i + j]``.
    """
    def p(h, j):
        return 5 * h + j % 5

    def q(i, j):
        return 25 + 5 * i + j % 5

    edges = []
    for h in range(5):
        for j in range(5):
            edges.append((p(h, j), p(h, j + 1)))
            edges.append((q(h, j), q(h, j + 2)))
    for h, i, j in product(range(5), repeat=3):
        edges.append((p(h, j), q(i, h * i + j)))
    return Graph.from_edges(50, edges)


def hub_bipartite(k: int, l: int) -> Graph:
    """Regular graph of degree 2k on 4k+2l+1 vertices with k(k-l-1) triangles.

    Start from K_{2k+l,2k+l} on x_0.., y_0..; delete the cyclic (l+1)-factor
    x_i y_{i+j mod k} (j <= l) inside the first k of each side, the cyclic
    l-factor inside the remaining k+l of each side, and join a hub to the
    first k vertices of each side.
    """
    if not (k > l >= 0):
        raise DomainError("need k > l >= 0")
    side = 2 * k + l
    x = list(range(side))
    y = list(range(side, 2 * side))
    hub = 2 * side
    removed = set()
    for i in range(k):
        for j in range(l + 1):
            removed.add((x[i], y[(i + j) % k]))
    rest = k + l
    for i in range(rest):
        for j in range(l):
            removed.add((x[k + i], y[k + (i + j) % rest]))
    edges = [(a, b) for a in x for b in y if (a, b) not in removed]
    edges += [(hub, v) for v in x[:k] + y[:k]]
    return Graph.from_edges(hub + 1, edges)


def doubled(h: Graph) -> Graph:
    """Two copies of ``h`` joined by the perfect matching v <-> v'."""
    n = h.order
    edges = h.edges()
    return Graph.from_edges(2 * n, edges + [(u + n, v + n) for u, v in edges] + [(v, v + n) for v in range(n)])


def k44_plus(extra: tuple[tuple[int, int], tuple[int, int]]) -> Graph:
    """K_{4,4} on parts {0..3}, {4..7} plus two extra edges (0-based)."""
    base = complete_bipartite(4, 4)
    return Graph.from_edges(8, base.edges() + list(extra))


# -- family specs ------------------------------------------------------------

_BUILDERS = {
    "cycle": (cycle, ("n",)),
    "path": (path, ("n",)),
    "complete": (complete, ("n",)),
    "complete_bipartite": (complete_bipartite, ("a", "b")),
    "complete_multipartite": (complete_multipartite, ("p", "q")),
    "moebius_ladder": (moebius_ladder, ("two_n",)),
    "complete_minus_matching": (complete_minus_matching, ("order", "match_size")),
    "rook": (rook_graph, ("a", "b")),
    "petersen": (petersen, ()),
    "clebsch": (clebsch, ()),
    "hoffman_singleton": (hoffman_singleton, ()),
    "hub_bipartite": (hub_bipartite, ("k", "l")),
}
_ALIASES = {"gkl": "hub_bipartite", "moebius": "moebius_ladder", "lattice": "rook", "mobius": "moebius_ladder"}

KINDS = tuple(sorted(_BUILDERS)) + ("doubled",)


@dataclass(frozen=True)
class FamilySpec:
    """A family member by name; ``doubled`` wraps a ``base`` spec."""

    kind: str
    params: Mapping[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "kind", _ALIASES.get(self.kind, self.kind))
        if self.kind not in KINDS:
            raise DomainError(f"unknown family {self.kind!r}")

    @property
    def index_param(self) -> str | None:
        if self.kind == "doubled":
            return self.params["base"].index_param
        names = _BUILDERS[self.kind][1]
        return names[0] if names else None

    def with_index(self, value: int) -> FamilySpec:
        if self.kind == "doubled":
            return FamilySpec("doubled", {"base": self.params["base"].with_index(value)})
        name = self.index_param
        if name is None:
            raise DomainError(f"family {self.kind!r} has no index parameter")
        return FamilySpec(self.kind, {**self.params, name: value})

    def build(self) -> Graph:
        if self.kind == "doubled":
            return doubled(self.params["base"].build())
        fn, names = _BUILDERS[self.kind]
        missing = [n for n in names if n not in self.params]
        if missing:
            raise DomainError(f"family {self.kind!r} needs {', '.join(missing)}")
        return fn(*(int(self.params[n]) for n in names))

    def closed_form_tree_count(self) -> int | None:
        if self.kind == "cycle":
            return int(self.params["n"])
        if self.kind == "moebius_ladder":
            return moebius_tree_count(int(self.params["two_n"]))
        if self.kind == "complete":
            n = int(self.params["n"])
            return n ** (n - 2) if n >= 2 else 1
        if self.kind == "complete_multipartite":
            p, q = int(self.params["p"]), int(self.params["q"])
            # eigenvalue pq has multiplicity p-1, pq-q has p(q-1)
            return (p * q) ** (p - 2) * (p * q - q) ** (p * (q - 1))
        return None

    def label(self) -> str:
        if self.kind == "doubled":
            return f"doubled({self.params['base'].label()})"
        args = ",".join(f"{k}={self.params[k]}" for k in sorted(self.params))
        return f"{self.kind}({args})"


def build_family(kind: str, **params) -> Graph:
    return FamilySpec(kind, params).build()


# -- SRG verification --------------------------------------------------------

@dataclass
class SrgReport:
    expected: SrgParams
    found: SrgParams | None
    triangles: int
    clusters: tuple[tuple[float, int], ...]
    tree_count: int
    tree_count_spectral: float | None
    tree_count_closed_form: int | None
    mismatches: list[str]

    @property
    def passed(self) -> bool:
        return not self.mismatches

    def to_dict(self) -> dict:
        return {
            "expected": list(self.expected),
            "found": list(self.found) if self.found else None,
            "triangles": self.triangles,
            "clusters": [[v, m] for v, m in self.clusters],
            "tree_count": str(self.tree_count),
            "tree_count_spectral": self.tree_count_spectral,
            "tree_count_closed_form": None if self.tree_count_closed_form is None else str(self.tree_count_closed_form),
            "mismatches": self.mismatches,
            "passed": self.passed,
        }


def srg_laplacian_spectrum(p: SrgParams) -> tuple[tuple[int, int], tuple[int, int]] | None:
    """Integral nonzero Laplacian eigenvalues with multiplicities, when the
    adjacency eigenvalues of SRG(v,k,lam,mu) are integers."""
    v, k, lam, mu = p
    disc = (lam - mu) ** 2 + 4 * (k - mu)
    root = int(round(disc ** 0.5))
    if root * root != disc or (lam - mu + root) % 2:
        return None
    theta = (lam - mu + root) // 2
    tau = (lam - mu - root) // 2
    num = (v - 1) * tau + k
    if (num * -1) % (theta - tau):
        return None
    f = -num // (theta - tau)
    g = v - 1 - f
    return (k - theta, f), (k - tau, g)


def verify_triangle_free_srg(g: Graph, expected: SrgParams | tuple) -> SrgReport:
    """Structural check of a claimed triangle-free SRG.

    Mismatches are collected, not raised, so a wrong fixture shows every
    failing expectation at once.
    """
    from gcomplex.spectral import eigenvalues, tree_count_exact, tree_count_from_spectrum

    expected = SrgParams(*expected)
    mismatches = []
    if g.order != expected.v:
        mismatches.append(f"order {g.order} != {expected.v}")
    found = srg_check(g) if is_connected(g) else None
    if found != expected:
        mismatches.append(f"srg parameters {found} != {tuple(expected)}")
    tri = triangle_count(g)
    if tri != 0:
        mismatches.append(f"{tri} triangles, expected none")
    sp = eigenvalues(g)
    t_exact = tree_count_exact(g)
    try:
        t_spec = tree_count_from_spectrum(sp)
    except Exception:
        t_spec = None
    closed = None
    lap = srg_laplacian_spectrum(expected) if expected.consistent() else None
    if lap is not None:
        (a, fa), (b, fb) = lap
        closed = a ** fa * b ** fb
        if closed % expected.v:
            closed = None
        else:
            closed //= expected.v
            want = sorted([(0.0, 1), (float(a), fa), (float(b), fb)])
            if list(sp.clusters) != want:
                mismatches.append(f"spectrum clusters {list(sp.clusters)} != {want}")
    if closed is not None and closed != t_exact:
        mismatches.append(f"tree count {t_exact} != closed form {closed}")
    if t_spec is not None and t_exact and abs(t_spec - t_exact) > 1e-6 * t_exact:
        mismatches.append("spectral tree count disagrees with exact count")
    return SrgReport(expected, found, tri, sp.clusters, t_exact, t_spec, closed, mismatches)
