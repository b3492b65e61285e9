"""Write graph6 fixtures for the Gewirtz, M22 and Higman-Sims graphs.

All three come from the Steiner system S(3,6,22): points are the 21 points
of PG(2,4) plus one extra point, blocks are the 21 lines (each extended by
the extra point) and one of the three classes of 56 hyperovals.

    python tools/make_srg_fixtures.py [outdir]
"""

from __future__ import annotations

import sys
from itertools import combinations
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from gcomplex.graph import Graph, srg_check  # noqa: E402
from gcomplex.io import write_graph6  # noqa: E402

# GF(4) = {0, 1, w, w^2} as 0..3; addition is XOR
_MUL = [[0, 0, 0, 0], [0, 1, 2, 3], [0, 2, 3, 1], [0, 3, 1, 2]]


def _normalize(v):
    lead = next(x for x in v if x)
    inv = next(y for y in range(1, 4) if _MUL[lead][y] == 1)
    return tuple(_MUL[inv][x] for x in v)


def projective_plane():
    points = sorted({_normalize((a, b, c)) for a in range(4) for b in range(4) for c in range(4) if (a, b, c) != (0, 0, 0)})
    index = {p: i for i, p in enumerate(points)}
    lines = []
    for u in points:  # the line of points orthogonal to u
        lines.append(frozenset(
            index[p] for p in points
            if _MUL[u[0]][p[0]] ^ _MUL[u[1]][p[1]] ^ _MUL[u[2]][p[2]] == 0
        ))
    return len(points), lines


def hyperoval_class(npoints, lines):
    collinear = {frozenset(t) for ln in lines for t in combinations(sorted(ln), 3)}
    ovals = [frozenset(s) for s in combinations(range(npoints), 6)
             if not any(frozenset(t) in collinear for t in combinations(s, 3))]
    first = ovals[0]
    return [h for h in ovals if len(h & first) % 2 == 0]


def steiner_blocks():
    npoints, lines = projective_plane()
    extra = npoints
    blocks = [ln | {extra} for ln in lines] + hyperoval_class(npoints, lines)
    return npoints + 1, blocks


def disjointness_graph(blocks) -> Graph:
    n = len(blocks)
    return Graph.from_edges(n, ((i, j) for i, j in combinations(range(n), 2) if not blocks[i] & blocks[j]))


def higman_sims(npoints, blocks) -> Graph:
    hub = 0
    pt = lambda p: 1 + p  # noqa: E731
    bl = lambda b: 1 + npoints + b  # noqa: E731
    edges = [(hub, pt(p)) for p in range(npoints)]
    edges += [(pt(p), bl(b)) for b, blk in enumerate(blocks) for p in blk]
    edges += [(bl(i), bl(j)) for i, j in combinations(range(len(blocks)), 2) if not blocks[i] & blocks[j]]
    return Graph.from_edges(1 + npoints + len(blocks), edges)


def main(outdir: str = "tests/fixtures") -> None:
    npoints, blocks = steiner_blocks()
    extra = npoints - 1
    graphs = {
        "gewirtz": (disjointness_graph([b for b in blocks if extra not in b]), (56, 10, 0, 2)),
        "m22": (disjointness_graph(blocks), (77, 16, 0, 4)),
        "higman_sims": (higman_sims(npoints, blocks), (100, 22, 0, 6)),
    }
    out = Path(outdir)
    out.mkdir(parents=True, exist_ok=True)
    for name, (g, want) in graphs.items():
        got = srg_check(g)
        if got != want:
            raise SystemExit(f"{name}: got {got}, expected {want}")
        (out / f"{name}.g6").write_bytes(write_graph6(g) + b"\n")
        print(f"{name}: SRG{tuple(got)} -> {out / (name + '.g6')}")


if __name__ == "__main__":
    main(*sys.argv[1:])
