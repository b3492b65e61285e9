"""Spanning-tree growth rates along graph families (tree-expander sequences)."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

from gcomplex.errors import InsufficientPoints
from gcomplex.families import FamilySpec
from gcomplex.spectral import eigenvalues, tree_count_exact


def log_int(n: int) -> float:
    """Natural log of a positive big integer, accurate to double precision."""
    if n <= 0:
        raise ValueError("log of a nonpositive integer")
    shift = max(n.bit_length() - 64, 0)
    return math.log(n >> shift) + shift * math.log(2)


@dataclass(frozen=True)
class SeriesPoint:
    index: int
    order: int
    size: int
    tree_count: int
    root: float  # tree_count ** (1 / (order - 1))
    x1: float  # smallest nonzero Laplacian eigenvalue
    closed_form: int | None

    def to_dict(self) -> dict:
        return {
            "index": self.index,
            "order": self.order,
            "size": self.size,
            "tree_count": str(self.tree_count),
            "root": self.root,
            "x1": self.x1,
            "closed_form": None if self.closed_form is None else str(self.closed_form),
        }


@dataclass(frozen=True)
class ExpanderSeries:
    family: FamilySpec
    points: tuple[SeriesPoint, ...]

    def to_dict(self) -> dict:
        return {"family": self.family.label(), "points": [p.to_dict() for p in self.points]}

    def table(self) -> str:
        lines = ["index order size root x1 tree_count"]
        lines += [f"{p.index} {p.order} {p.size} {p.root:.12f} {p.x1:.12f} {p.tree_count}" for p in self.points]
        return "\n".join(lines)


def series(family: FamilySpec, indices: Iterable[int]) -> ExpanderSeries:
    """Exact tree counts and their (order-1)-th roots along ``family``.

    Where the family has a closed form it is checked against the
    determinant and a mismatch raises AssertionError.
    """
    pts = []
    for idx in indices:
        spec = family.with_index(idx)
        g = spec.build()
        t = tree_count_exact(g)
        closed = spec.closed_form_tree_count()
        if closed is not None and closed != t:
            raise AssertionError(f"closed form {closed} != determinant {t} for {spec.label()}")
        root = math.exp(log_int(t) / (g.order - 1)) if t > 0 and g.order > 1 else 0.0
        vals = eigenvalues(g).values
        x1 = vals[1] if len(vals) > 1 else 0.0
        pts.append(SeriesPoint(idx, g.order, g.size, t, root, x1, closed))
    pts.sort(key=lambda p: (p.order, p.index))
    return ExpanderSeries(family, tuple(pts))


def cd_estimate(s: ExpanderSeries, tail_count: int) -> float:
    """Minimum root over the last ``tail_count`` points: a finite stand-in for
    the liminf, so only an estimate."""
    if tail_count < 1 or len(s.points) < tail_count:
        raise InsufficientPoints(f"need {tail_count} points, series has {len(s.points)}")
    return min(p.root for p in s.points[-tail_count:])
