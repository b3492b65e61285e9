"""Reference implementations of the hot kernels.

Graphs are passed as adjacency rows: ``rows[i]`` is an int whose bit ``j`` is
set iff ``ij`` is an edge.  Every function here has a twin in
``_ckernels.pyx`` with the same signature and the same results; the compiled
versions only handle orders up to 64 and defer to these otherwise.
"""

from __future__ import annotations

from itertools import combinations

INFINITE = -1


def _bits(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def triangle_count(rows):
    total = 0
    for i, ri in enumerate(rows):
        for j in _bits(ri >> (i + 1)):
            j += i + 1
            total += ((ri & rows[j]) >> (j + 1)).bit_count()
    return total


def is_connected(rows):
    n = len(rows)
    if n <= 1:
        return True
    seen = 1
    frontier = 1
    while frontier:
        nxt = 0
        for v in _bits(frontier):
            nxt |= rows[v]
        frontier = nxt & ~seen
        seen |= frontier
    return seen == (1 << n) - 1


def bareiss_det(matrix):
    """Exact determinant of a square integer matrix (fraction-free)."""
    a = [list(r) for r in matrix]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for p in range(k + 1, n):
                if a[p][k] != 0:
                    a[k], a[p] = a[p], a[k]
                    sign = -sign
                    break
            else:
                return 0
        rk = a[k]
        akk = rk[k]
        for i in range(k + 1, n):
            ri = a[i]
            aik = ri[k]
            if aik == 0:
                if akk != prev:
                    for j in range(k + 1, n):
                        ri[j] = ri[j] * akk // prev
                continue
            for j in range(k + 1, n):
                ri[j] = (ri[j] * akk - aik * rk[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]


# -- canonical labelling -----------------------------------------------------

def _refine(rows, cells):
    """Coarsest equitable refinement of an ordered partition.

    Split cells keep vertex-id order; pieces are ordered by neighbour count
    into the splitter, which makes the result label-invariant.
    """
    cells = [c for c in cells]
    while True:
        for w in cells:
            wmask = 0
            for v in w:
                wmask |= 1 << v
            out = []
            split = False
            for c in cells:
                if len(c) == 1:
                    out.append(c)
                    continue
                counts = [(rows[v] & wmask).bit_count() for v in c]
                lo, hi = min(counts), max(counts)
                if lo == hi:
                    out.append(c)
                    continue
                split = True
                for val in sorted(set(counts)):
                    out.append([v for v, cnt in zip(c, counts) if cnt == val])
            if split:
                cells = out
                break
        else:
            return cells


def _target_cell(cells):
    best = -1
    for idx, c in enumerate(cells):
        if len(c) > 1 and (best < 0 or len(c) < len(cells[best])):
            best = idx
    return best


def _code(rows, perm):
    pos = [0] * len(perm)
    for p, v in enumerate(perm):
        pos[v] = p
    code = []
    for v in perm:
        m = 0
        for u in _bits(rows[v]):
            m |= 1 << pos[u]
        code.append(m)
    return tuple(code)


def _find(parent, x):
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def canonical_labeling(rows):
    """Return ``(perm, code)``: ``perm[i]`` is the old vertex placed at new
    position ``i``; ``code`` is the relabelled row tuple, the lexicographic
    minimum over all leaves of the refinement search tree.
    """
    n = len(rows)
    if n == 0:
        return [], ()
    degs = [r.bit_count() for r in rows]
    cells = [[v for v in range(n) if degs[v] == d] for d in sorted(set(degs))]
    state = {"code": None, "perm": None}
    autos = []

    def search(cells, fixed):
        cells = _refine(rows, cells)
        t = _target_cell(cells)
        if t < 0:
            perm = [c[0] for c in cells]
            code = _code(rows, perm)
            best = state["code"]
            if best is None or code < best:
                state["code"] = code
                state["perm"] = perm
            elif code == best:
                bp = state["perm"]
                g = [0] * n
                for i in range(n):
                    g[perm[i]] = bp[i]
                autos.append(g)
            return
        cell = cells[t]
        explored = []
        for v in cell:
            if explored:
                skip = False
                for u in explored:
                    if (rows[u] & ~(1 << v)) == (rows[v] & ~(1 << u)):
                        skip = True
                        break
                if not skip and autos:
                    parent = list(range(n))
                    for g in autos:
                        if all(g[w] == w for w in fixed):
                            for x in range(n):
                                a, b = _find(parent, x), _find(parent, g[x])
                                if a != b:
                                    parent[a] = b
                    rv = _find(parent, v)
                    skip = any(_find(parent, u) == rv for u in explored)
                if skip:
                    continue
            explored.append(v)
            rest = [x for x in cell if x != v]
            search(cells[:t] + [[v], rest] + cells[t + 1:], fixed + [v])

    search(cells, [])
    return state["perm"], state["code"]


# -- orderly enumeration -----------------------------------------------------

def enumerate_rows(n, m, degree=-1, connected=True):
    """Yield row tuples of labelled graphs meeting every isomorphism class of
    graphs with ``n`` vertices and ``m`` edges (all degrees ``degree`` when
    ``degree >= 0``), possibly several times per class.

    Vertex 0 carries a maximum degree; rows are filled in order and inside
    each cell of interchangeable vertices only a prefix is chosen.
    """
    if n == 0:
        if m == 0:
            yield ()
        return
    if n == 1:
        if m == 0 and degree <= 0:
            yield (0,)
        return
    lo_all = degree if degree >= 0 else (1 if connected else 0)
    adj = [0] * n
    deg = [0] * n
    hi = [0] * n

    def feasible(i, edges):
        rem = m - edges
        k = n - i - 1
        if rem < 0 or rem > k * (k - 1) // 2:
            return False
        need = cap = 0
        for j in range(i + 1, n):
            nj = lo_all - deg[j]
            if nj > k - 1:
                return False
            if nj > 0:
                need += nj
            cap += hi[j] - deg[j]
        if not (need <= 2 * rem <= cap):
            return False
        if connected and i < n - 1:
            outside = 0
            for v in range(i + 1):
                outside |= adj[v]
            if outside >> (i + 1) == 0:
                return False
        return True

    def row(i, cells, edges):
        if i == n:
            if edges == m and (not connected or is_connected(adj)):
                yield tuple(adj)
            return
        lo_i = max(lo_all - deg[i], 0)
        hi_i = hi[i] - deg[i]
        if i == 0:
            lo_i = hi_i
        free = sum(e - s + 1 for s, e in cells if deg[s] < hi[s])
        if lo_i > free:
            return
        yield from choose(i, cells, 0, lo_i, min(hi_i, free, m - edges), [], edges)

    def choose(i, cells, k, lo_i, hi_i, counts, edges):
        if k == len(cells):
            total = sum(counts)
            if total < lo_i:
                return
            if not feasible(i, edges):
                return
            nxt = []
            for (s, e), c in zip(cells, counts):
                if c:
                    nxt.append((s, s + c - 1))
                if s + c <= e:
                    nxt.append((s + c, e))
            if nxt:
                s, e = nxt[0]
                nxt = nxt[1:] if s == e else [(s + 1, e)] + nxt[1:]
            yield from row(i + 1, nxt, edges)
            return
        s, e = cells[k]
        size = e - s + 1
        used = sum(counts)
        top = min(size, hi_i - used) if deg[s] < hi[s] else 0
        for c in range(top, -1, -1):
            for j in range(s, s + c):
                adj[i] |= 1 << j
                adj[j] |= 1 << i
                deg[j] += 1
            deg[i] += c
            counts.append(c)
            yield from choose(i, cells, k + 1, lo_i, hi_i, counts, edges + c)
            counts.pop()
            deg[i] -= c
            for j in range(s, s + c):
                adj[i] &= ~(1 << j)
                adj[j] &= ~(1 << i)
                deg[j] -= 1

    if degree >= 0:
        tops = [degree] if degree <= n - 1 else []
    else:
        tops = range(min(n - 1, m), (2 * m + n - 1) // n - 1, -1)
    for top in tops:
        for v in range(n):
            hi[v] = top
        if top < lo_all:
            continue
        yield from row(0, [(1, n - 1)], 0)


# -- bootstrap percolation ---------------------------------------------------

def istar(rows, t, seed):
    """Steps until every vertex is active, or INFINITE."""
    n = len(rows)
    full = (1 << n) - 1
    s = seed
    steps = 0
    while s != full:
        add = 0
        rest = full & ~s
        for v in _bits(rest):
            if (rows[v] & s).bit_count() >= t:
                add |= 1 << v
        if not add:
            return INFINITE
        s |= add
        steps += 1
    return steps


def istar_batch(rows, t, seeds):
    return [istar(rows, t, s) for s in seeds]


def sync_histogram(rows, t, k):
    """Counts of i* over all k-subsets; index n+1 holds the non-synchronising ones."""
    n = len(rows)
    hist = [0] * (n + 2)
    for combo in combinations(range(n), k):
        seed = 0
        for v in combo:
            seed |= 1 << v
        s = istar(rows, t, seed)
        hist[n + 1 if s == INFINITE else s] += 1
    return hist
