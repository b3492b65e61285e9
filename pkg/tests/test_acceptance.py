"""Acceptance criteria, one test per check at the stated tolerance.

Each check records a row that the terminal summary prints as one pass/fail
line per criterion (see conftest.py).  Checks of claims that cannot be
fully reproduced at desk scale are labelled OBSERVATIONAL in their detail.
"""

import math
import time
from fractions import Fraction
from math import comb

import numpy as np
import pytest

from gcomplex.expanders import cd_estimate, series
from gcomplex.extremal import (
    FiltrationConfig,
    complement_duality_check,
    log_slope_g,
    multiplicity_curves,
    MultiplicityCurves,
    run_filtration,
    verify_conjecture,
)
from gcomplex.families import (
    FamilySpec,
    clebsch,
    complete_multipartite,
    cycle,
    hoffman_singleton,
    k44_plus,
    moebius_ladder,
    moebius_tree_count,
    petersen,
    rook_graph,
    verify_triangle_free_srg,
)
from gcomplex.graph import canonical_form, complement, is_connected, srg_check, triangle_count, complete_graph_triangle_identity
from gcomplex.io import read_graph_file
from gcomplex.spectral import (
    complement_spectrum,
    detect_two_eigenvalue,
    eigenvalues,
    tree_count_exact,
    tree_count_from_spectrum,
    two_eigenvalue_roots,
)
from gcomplex.synchrony import SeedConfig, evolve, measures_exhaustive, measures_monte_carlo
from conftest import ACCEPTANCE_RESULTS, fixture_path, random_corpus

SQRT_2_PLUS_SQRT_3 = math.sqrt(2 + math.sqrt(3))


def check(criterion: int, name: str, ok: bool, detail: str = ""):
    ACCEPTANCE_RESULTS.append((criterion, name, bool(ok), detail))
    print(f"criterion {criterion} [{name}]: {'PASS' if ok else 'FAIL'} {detail}")
    assert ok, detail


# -- 1 -----------------------------------------------------------------------

def _timed(fn):
    t0 = time.perf_counter()
    value = fn()
    return value, time.perf_counter() - t0


def test_c1_lattice_and_nine_vertex_graph(graph_g, lattice_h):
    (th, dh), s1 = _timed(lambda: (tree_count_exact(lattice_h), triangle_count(lattice_h)))
    (tg, dg), s2 = _timed(lambda: (tree_count_exact(graph_g), triangle_count(graph_g)))
    ok = th == 11664 and tg == 12480 and dg == 2 and dh == 6 and max(s1, s2) < 1
    check(1, "t(H)=11664, t(G)=12480, triangles 2 and 6", ok, f"t(H)={th} t(G)={tg} tri(G)={dg} tri(H)={dh} max {max(s1, s2):.3f}s")


def test_c1_cospectral_pair():
    def work():
        a, b = k44_plus(((0, 1), (2, 3))), k44_plus(((0, 1), (4, 5)))
        sa, sb = eigenvalues(a), eigenvalues(b)
        return (tree_count_exact(a), tree_count_exact(b), sa.nonzero_clusters(), sb.nonzero_clusters(),
                all(sa.snapped), canonical_form(a) != canonical_form(b))

    (ta, tb, ca, cb, snapped, distinct), secs = _timed(work)
    want = ((4.0, 4), (6.0, 2), (8.0, 1))
    ok = ta == tb == 9216 and ca == cb == want and snapped and distinct and secs < 1
    check(1, "K44 pair: t=9216, spectrum {8,6^2,4^4}, nonisomorphic", ok, f"t={ta},{tb} clusters={ca} {secs:.3f}s")


# -- 2 -----------------------------------------------------------------------

def test_c2_kirchhoff_cross_oracle():
    t0 = time.perf_counter()
    checked = 0
    worst = 0.0
    ok = True
    for g in random_corpus(1000, 9, seed=2024, min_order=2):
        if not is_connected(g):
            continue
        exact = tree_count_exact(g)
        approx = tree_count_from_spectrum(eigenvalues(g))
        rel = abs(approx - exact) / exact
        worst = max(worst, rel)
        ok = ok and rel <= 1e-6 and round(approx) == exact
        checked += 1
    secs = time.perf_counter() - t0
    check(2, "exact vs eigenvalue product", ok and secs < 60 and checked > 0,
          f"{checked} connected graphs, worst rel err {worst:.2e}, {secs:.1f}s")


# -- 3 -----------------------------------------------------------------------

def test_c3_conjecture_up_to_seven():
    t0 = time.perf_counter()
    failures = []
    cases = 0
    for order in range(2, 8):
        for size in range(order - 1, comb(order, 2) + 1):
            cases += 1
            if not verify_conjecture(FiltrationConfig(order, size)).holds:
                failures.append((order, size))
    secs = time.perf_counter() - t0
    check(3, "filtration ends on maximal-complexity graphs, order <= 7",
          not failures and secs < 600,
          f"{cases} (order, size) classes, failures={failures}, {secs:.1f}s; "
          "OBSERVATIONAL: desk-scale sub-range of the order <= 9 claim")


def test_c3_nine_vertices_regular():
    rep = verify_conjecture(FiltrationConfig(9, 18, regular_only=True))
    check(3, "(9, 18, regular-only) champion", rep.holds and rep.oracle_max == 12480
          and rep.filtration.max_tree_count == 12480, f"holds={rep.holds} champion t={rep.oracle_max}")


# -- 4 -----------------------------------------------------------------------

def test_c4_level_characterizations():
    bad2, bad3, classes = [], [], 0
    for order in range(2, 9):
        for size in range(order - 1, comb(order, 2) + 1):
            rep = run_filtration(FiltrationConfig(order, size, max_r=3))
            classes += 1
            every = rep.level(1).survivors
            l2 = {r.code for r in rep.level(2).survivors}
            if l2 != {r.code for r in every if r.max_deg - r.min_deg <= 1}:
                bad2.append((order, size))
            fewest = min(r.triangles for r in rep.level(2).survivors)
            l3 = {r.code for r in rep.level(3).survivors}
            if l3 != {r.code for r in rep.level(2).survivors if r.triangles == fewest}:
                bad3.append((order, size))
    check(4, "level 2 = nearly regular, level 3 = fewest triangles", not bad2 and not bad3,
          f"{classes} classes up to order 8, level-2 mismatches={bad2}, level-3 mismatches={bad3}")


# -- 5 -----------------------------------------------------------------------

def _curve_triples():
    out = []
    for n in range(4, 12):
        for frac in (0.1, 0.5, 0.9):
            r = 2.5 * n
            lo, hi = r * r / n, r * r / (n - 1)
            out.append((n, r, lo + frac * (hi - lo)))
    return out


def test_c5_multiplicity_curves():
    t0 = time.perf_counter()
    triples = _curve_triples()
    decreasing = fd_ok = True
    worst = 0.0
    h = 1e-4
    for n, r, s in triples:
        pts = multiplicity_curves(n, r, s, 1000)
        decreasing &= all(p.f_prime < 0 and p.c_prime < 0 for p in pts)
        mc = MultiplicityCurves(n, r, s)
        xs = np.array([p.x for p in pts])
        xs = xs[(xs - h > 1) & (xs + h < n - 1)]
        for fn, dfn in ((mc.f, mc.f_prime), (mc.c, mc.c_prime)):
            exact = dfn(xs)
            err = np.abs((fn(xs + h) - fn(xs - h)) / (2 * h) - exact) / np.maximum(1.0, np.abs(exact))
            worst = max(worst, float(err.max()))
            fd_ok &= bool(np.all(err <= 1e-5))
    ts = np.linspace(0, 100, 100001)[1:]
    g_neg = bool(np.all(log_slope_g(ts) < 0))
    secs = time.perf_counter() - t0
    check(5, "f' < 0, c' < 0, finite differences, g(t) < 0",
          len(triples) >= 20 and decreasing and fd_ok and g_neg and secs < 5,
          f"{len(triples)} triples x 1000 points, worst scaled FD error {worst:.1e}, {secs:.2f}s")


# -- 6 -----------------------------------------------------------------------

def _round_trip(g, want):
    m = detect_two_eigenvalue(eigenvalues(g))
    if m is None:
        return False, "not two-eigenvalue"
    x1, x2 = two_eigenvalue_roots(m.n, m.r, m.s, m.n1)
    ok = (m.n1 == want[2] and math.isclose(x1, want[0], rel_tol=1e-9)
          and math.isclose(x2, want[1], rel_tol=1e-9))
    return ok, f"x1={x1!r} x2={x2!r} n1={m.n1}"


def test_c6_lattice_and_petersen():
    ok1, d1 = _round_trip(rook_graph(3, 3), (6, 3, 4))
    ok2, d2 = _round_trip(petersen(), (5, 2, 4))
    check(6, "lattice -> (6,3,4), Petersen -> (5,2,4)", ok1 and ok2, f"lattice {d1}; Petersen {d2}")


def _multipartite_cases():
    return [(p, q) for p in range(2, 5) for q in range(1, 5)]


def test_c6_multipartite_stated_multiplicities():
    mismatches = []
    for p, q in _multipartite_cases():
        stated = {float(p * q): p * (q - 1), float(p * q - q): p - 1}
        stated = {v: m for v, m in stated.items() if m}
        got = dict(eigenvalues(complete_multipartite(p, q)).nonzero_clusters())
        if got != stated:
            mismatches.append((p, q))
    check(6, "K_{q..q}: pq with mult p(q-1), pq-q with mult p-1 (as stated)", not mismatches,
          f"{len(mismatches)}/{len(_multipartite_cases())} disagree, e.g. K_3,3 has 3^4 6^1; see decisions ledger")


def test_c6_multipartite_corrected_multiplicities():
    bad = []
    for p, q in _multipartite_cases():
        want = {float(p * q): p - 1}
        if q > 1:
            want[float(p * q - q)] = p * (q - 1)
        got = dict(eigenvalues(complete_multipartite(p, q)).nonzero_clusters())
        if got != want:
            bad.append((p, q))
            continue
        if q > 1:
            ok, _ = _round_trip(complete_multipartite(p, q), (p * q, p * q - q, p - 1))
            if not ok:
                bad.append((p, q))
    check(6, "K_{q..q}: pq with mult p-1, pq-q with mult p(q-1) (corrected)", not bad, f"mismatches={bad}")


# -- 7 -----------------------------------------------------------------------

def test_c7_complement_facts():
    done = 0
    worst = 0.0
    ok = True
    for g in random_corpus(1000, 10, seed=7007, min_order=4):
        if not (is_connected(g) and is_connected(complement(g))):
            continue
        rep = complement_duality_check(g)
        worst = max(worst, rep.spectrum_gap)
        ok = ok and rep.passed
        done += 1
        if done == 200:
            break
    tri = triangle_count(complement(petersen()))
    ident = complete_graph_triangle_identity(petersen())
    check(7, "spectrum duality, triangle identity, Petersen complement", ok and done == 200 and tri == 30 == ident,
          f"{done} graphs, worst spectrum gap {worst:.1e}, complement(Petersen) triangles={tri}")


# -- 8 -----------------------------------------------------------------------

def test_c8_synchrony():
    t0 = time.perf_counter()
    ex = measures_exhaustive(cycle(4), 2, 2)
    mc = measures_monte_carlo(cycle(4), 2, 2, 60000, 0)
    within = abs(float(mc.p_k) - 1 / 3) <= 3 * mc.sigma
    rng = np.random.default_rng(8)
    mono = True
    cases = 0
    for g in random_corpus(500, 10, seed=808, min_order=2):
        seed = [v for v in range(g.order) if rng.random() < 0.4]
        bigger = seed + [v for v in range(g.order) if v not in seed and rng.random() < 0.3]
        t = int(rng.integers(1, 4))
        a = evolve(g, SeedConfig(t, seed))
        mono &= all(x <= y for x, y in zip(a.trajectory, a.trajectory[1:]))
        mono &= evolve(g, SeedConfig(t + 1, seed)).i_star >= a.i_star
        b = evolve(g, SeedConfig(t, bigger))
        mono &= all(s <= b.trajectory[min(i, len(b.trajectory) - 1)] for i, s in enumerate(a.trajectory))
        mono &= (not a.synchronized) or a.i_star <= g.order
        cases += 1
    secs = time.perf_counter() - t0
    ok = ex.p_k == ex.e_k == Fraction(1, 3)
    check(8, "C4 exact 1/3, Monte Carlo within 3 sigma, monotonicity", ok and within and mono and cases == 500 and secs < 30,
          f"pK={ex.p_k} eK={ex.e_k} MC={float(mc.p_k):.5f} sigma={mc.sigma:.5f}, {cases} cases, {secs:.1f}s")


# -- 9 -----------------------------------------------------------------------

def test_c9_cycle_root_at_thirty():
    s = series(FamilySpec("cycle", {"n": 3}), range(3, 51))
    root30 = next(p.root for p in s.points if p.order == 30)
    first = next(p.order for p in s.points if p.root - 1 <= 0.1)
    check(9, "cycle root within 0.1 of 1 at n=30", abs(root30 - 1) <= 0.1,
          f"30^(1/29) = {root30:.5f}; first n within 0.1 is {first}; see decisions ledger")


def test_c9_moebius_root_at_forty():
    s = series(FamilySpec("moebius_ladder", {"two_n": 6}), range(6, 42, 2))
    root = s.points[-1].root
    est = cd_estimate(s, 3)
    check(9, "Moebius root within 1e-3 of sqrt(2+sqrt3) at twoN=40", abs(root - SQRT_2_PLUS_SQRT_3) <= 1e-3,
          f"t(M_40)^(1/39) = {root:.5f} vs {SQRT_2_PLUS_SQRT_3:.5f} (tail estimate {est:.5f}); see decisions ledger")


def test_c9_exact_counts_and_closed_form():
    ok = tree_count_exact(moebius_ladder(6)) == 81 and tree_count_exact(moebius_ladder(8)) == 392
    mism = [n for n in range(6, 32, 2) if moebius_tree_count(n) != tree_count_exact(moebius_ladder(n))]
    check(9, "t(M6)=81, t(M8)=392, closed form = determinant for twoN <= 30", ok and not mism, f"mismatches={mism}")


# -- 10 ----------------------------------------------------------------------

def test_c10_constructed_srgs():
    got = [srg_check(petersen()), srg_check(clebsch()), srg_check(hoffman_singleton())]
    tris = [triangle_count(g) for g in (petersen(), clebsch(), hoffman_singleton())]
    t = tree_count_exact(petersen())
    ok = got == [(10, 3, 0, 1), (16, 5, 0, 2), (50, 7, 0, 1)] and tris == [0, 0, 0] and t == 2000
    check(10, "Petersen, Clebsch, Hoffman-Singleton", ok, f"srg={[tuple(p) for p in got]} triangles={tris} t(Petersen)={t}")


def test_c10_higman_sims_fixture():
    path = fixture_path("higman_sims.g6")
    if not path.exists():
        ACCEPTANCE_RESULTS.append((10, "Higman-Sims fixture", True, "SKIPPED: fixture absent"))
        pytest.skip("Higman-Sims fixture absent")
    t0 = time.perf_counter()
    rep = verify_triangle_free_srg(read_graph_file(path), (100, 22, 0, 6))
    secs = time.perf_counter() - t0
    closed = 20 ** 77 * 30 ** 22 // 100
    check(10, "Higman-Sims SRG(100,22,0,6) and t = 20^77 30^22 / 100",
          rep.passed and rep.tree_count == closed and 20 ** 77 * 30 ** 22 % 100 == 0 and secs < 120,
          f"mismatches={rep.mismatches}, {secs:.2f}s")


# -- 11 ----------------------------------------------------------------------

def test_c11_unreproducible_claims_are_labelled():
    rep = verify_conjecture(FiltrationConfig(6, 9))
    doc = rep.to_dict()
    base = FamilySpec("moebius_ladder", {"two_n": 6})
    a = series(base, range(6, 26, 2))
    b = series(FamilySpec("doubled", {"base": base}), range(6, 26, 2))
    above = all(q.root > p.root for p, q in zip(a.points, b.points))
    labelled = doc["scope"] == "general" and doc["levels_used"] == 6 and any("read as" in n for n in doc["notes"])
    check(11, "desk-scale observations reported as such", labelled and above,
          "OBSERVATIONAL: conjecture certified only for order <= 7 (criterion 3); "
          f"doubled Moebius roots above Moebius roots pointwise for twoN 6..24: {above}; "
          "uniqueness theorems and c_(d+1) > c_d not re-proved")
