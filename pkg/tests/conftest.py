from __future__ import annotations

from pathlib import Path

import numpy as np
import pytest
from hypothesis import strategies as st

from gcomplex.graph import Graph
from gcomplex.io import parse_edge_list

FIXTURES = Path(__file__).parent / "fixtures"

# (criterion, check, passed, detail) rows filled in by test_acceptance.py
ACCEPTANCE_RESULTS: list[tuple[int, str, bool, str]] = []


def fixture_path(name: str) -> Path:
    return FIXTURES / name


def random_graph(rng: np.random.Generator, order: int, p: float) -> Graph:
    edges = [(i, j) for i in range(order) for j in range(i + 1, order) if rng.random() < p]
    return Graph.from_edges(order, edges)


def random_corpus(count: int, max_order: int, seed: int, min_order: int = 1) -> list[Graph]:
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        n = int(rng.integers(min_order, max_order + 1))
        out.append(random_graph(rng, n, float(rng.uniform(0.15, 0.9))))
    return out


@st.composite
def graphs(draw, min_order: int = 1, max_order: int = 10):
    n = draw(st.integers(min_order, max_order))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, (e for e, keep in zip(pairs, mask) if keep))


@pytest.fixture(scope="session")
def graph_g() -> Graph:
    return parse_edge_list(fixture_path("g9_18.txt").read_text())


@pytest.fixture(scope="session")
def lattice_h() -> Graph:
    from gcomplex.families import rook_graph

    return rook_graph(3, 3)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for crit in sorted({row[0] for row in ACCEPTANCE_RESULTS}):
        rows = [row for row in ACCEPTANCE_RESULTS if row[0] == crit]
        status = "PASS" if all(row[2] for row in rows) else "FAIL"
        terminalreporter.write_line(f"criterion {crit:2d}: {status}")
        for _, check, ok, detail in rows:
            terminalreporter.write_line(f"    [{'pass' if ok else 'FAIL'}] {check}: {detail}")
