# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled twins of ``_pykernels``.

Orders above 64 (one machine word per adjacency row) and determinants whose
Hadamard bound does not fit 62 bits are handed back to the Python versions.
"""

from libc.stdint cimport uint64_t, int64_t
from libc.stdlib cimport malloc, free
from libc.string cimport memcpy
from libc.math cimport log2

from gcomplex import _pykernels as _py

cdef extern from *:
    ctypedef long long i128 "__int128"
    int popcount64 "__builtin_popcountll"(unsigned long long) nogil
    int ctz64 "__builtin_ctzll"(unsigned long long) nogil

INFINITE = -1
cdef enum:
    MAXN = 64
    MAXAUTO = 512


cdef inline uint64_t _shr(uint64_t x, int s) noexcept nogil:
    return 0 if s >= 64 else x >> s


cdef int _load(rows, uint64_t* r) except -1:
    cdef int n = len(rows)
    cdef int i
    for i in range(n):
        r[i] = <uint64_t>rows[i]
    return n


def triangle_count(rows):
    cdef int n = len(rows)
    if n > MAXN:
        return _py.triangle_count(rows)
    cdef uint64_t r[MAXN]
    cdef uint64_t hi, common
    cdef int i, j
    cdef long long total = 0
    _load(rows, r)
    for i in range(n):
        hi = _shr(r[i], i + 1)
        while hi:
            j = ctz64(hi) + i + 1
            hi &= hi - 1
            common = _shr(r[i] & r[j], j + 1)
            total += popcount64(common)
    return total


cdef bint _connected(const uint64_t* r, int n) noexcept nogil:
    cdef uint64_t full, seen, frontier, nxt, f
    cdef int v
    if n <= 1:
        return True
    full = 0xFFFFFFFFFFFFFFFF if n == 64 else ((<uint64_t>1 << n) - 1)
    seen = 1
    frontier = 1
    while frontier:
        nxt = 0
        f = frontier
        while f:
            v = ctz64(f)
            f &= f - 1
            nxt |= r[v]
        frontier = nxt & ~seen
        seen |= frontier
    return seen == full


def is_connected(rows):
    cdef int n = len(rows)
    if n > MAXN:
        return _py.is_connected(rows)
    cdef uint64_t r[MAXN]
    _load(rows, r)
    return _connected(r, n)


# -- Bareiss ------------------------------------------------------------------

def bareiss_det(matrix):
    cdef int n = len(matrix)
    if n == 0:
        return 1
    cdef double lb = 0.0
    cdef double sq
    for row in matrix:
        sq = 0.0
        for x in row:
            if x > 2147483647 or x < -2147483647:
                return _py.bareiss_det(matrix)
            sq += <double>x * <double>x
        if sq > 1.0:
            lb += 0.5 * log2(sq)
    if lb >= 61.0:
        return _py.bareiss_det(matrix)

    cdef int64_t* a = <int64_t*>malloc(n * n * sizeof(int64_t))
    cdef int64_t* tmp
    cdef int i, j, k, p
    cdef int64_t akk, aik, prev = 1, swap
    cdef int sign = 1
    cdef int64_t result
    try:
        for i in range(n):
            row = matrix[i]
            for j in range(n):
                a[i * n + j] = row[j]
        for k in range(n - 1):
            if a[k * n + k] == 0:
                p = k + 1
                while p < n and a[p * n + k] == 0:
                    p += 1
                if p == n:
                    return 0
                for j in range(n):
                    swap = a[k * n + j]
                    a[k * n + j] = a[p * n + j]
                    a[p * n + j] = swap
                sign = -sign
            akk = a[k * n + k]
            for i in range(k + 1, n):
                aik = a[i * n + k]
                for j in range(k + 1, n):
                    a[i * n + j] = <int64_t>((<i128>a[i * n + j] * akk - <i128>aik * a[k * n + j]) / prev)
            prev = akk
        result = a[(n - 1) * n + (n - 1)]
        return sign * result
    finally:
        free(a)


# -- canonical labelling ------------------------------------------------------

cdef struct CanonState:
    int n
    uint64_t rows[MAXN]
    uint64_t best[MAXN]
    int best_perm[MAXN]
    bint have_best
    int nauto
    int autos[MAXAUTO][MAXN]


cdef void _refine(const CanonState* st, int* lab, char* ptn) noexcept nogil:
    cdef int n = st.n
    cdef int tlab[MAXN]
    cdef char tptn[MAXN]
    cdef int cnt[MAXN]
    cdef int ws, we, cs, ce, p, q, cur, nxt, lo, hi
    cdef uint64_t wmask
    cdef bint split
    while True:
        split = False
        ws = 0
        while ws < n:
            we = ws
            while not ptn[we]:
                we += 1
            wmask = 0
            for p in range(ws, we + 1):
                wmask |= (<uint64_t>1) << lab[p]
            q = 0
            cs = 0
            while cs < n:
                ce = cs
                while not ptn[ce]:
                    ce += 1
                if ce == cs:
                    tlab[q] = lab[cs]
                    tptn[q] = 1
                    q += 1
                else:
                    lo = 65
                    hi = -1
                    for p in range(cs, ce + 1):
                        cnt[p] = popcount64(st.rows[lab[p]] & wmask)
                        if cnt[p] < lo:
                            lo = cnt[p]
                        if cnt[p] > hi:
                            hi = cnt[p]
                    if lo == hi:
                        for p in range(cs, ce + 1):
                            tlab[q] = lab[p]
                            tptn[q] = 0
                            q += 1
                        tptn[q - 1] = 1
                    else:
                        split = True
                        cur = lo
                        while True:
                            nxt = 65
                            for p in range(cs, ce + 1):
                                if cnt[p] == cur:
                                    tlab[q] = lab[p]
                                    tptn[q] = 0
                                    q += 1
                                elif cnt[p] > cur and cnt[p] < nxt:
                                    nxt = cnt[p]
                            tptn[q - 1] = 1
                            if nxt == 65:
                                break
                            cur = nxt
                cs = ce + 1
            if split:
                memcpy(lab, tlab, n * sizeof(int))
                memcpy(ptn, tptn, n * sizeof(char))
                break
            ws = we + 1
        if not split:
            return


cdef int _uf_find(int* parent, int x) noexcept nogil:
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


cdef void _leaf(CanonState* st, const int* lab) noexcept nogil:
    cdef int n = st.n
    cdef int pos[MAXN]
    cdef uint64_t code[MAXN]
    cdef uint64_t r, m
    cdef int i, u, cmp = 0
    for i in range(n):
        pos[lab[i]] = i
    for i in range(n):
        r = st.rows[lab[i]]
        m = 0
        while r:
            u = ctz64(r)
            r &= r - 1
            m |= (<uint64_t>1) << pos[u]
        code[i] = m
    if st.have_best:
        for i in range(n):
            if code[i] != st.best[i]:
                cmp = -1 if code[i] < st.best[i] else 1
                break
    if not st.have_best or cmp < 0:
        st.have_best = True
        for i in range(n):
            st.best[i] = code[i]
            st.best_perm[i] = lab[i]
    elif cmp == 0 and st.nauto < MAXAUTO:
        for i in range(n):
            st.autos[st.nauto][lab[i]] = st.best_perm[i]
        st.nauto += 1


cdef void _search(CanonState* st, const int* lab0, const char* ptn0, int* fixed, int nfixed) noexcept nogil:
    cdef int n = st.n
    cdef int lab[MAXN]
    cdef char ptn[MAXN]
    cdef int nlab[MAXN]
    cdef char nptn[MAXN]
    cdef int explored[MAXN]
    cdef int parent[MAXN]
    cdef int nexp = 0
    cdef int p, q, s, e, ts = -1, te = -1, best_len = MAXN + 1, v, u, x, g, a, b, rv
    cdef bint skip, fixes
    memcpy(lab, lab0, n * sizeof(int))
    memcpy(ptn, ptn0, n * sizeof(char))
    _refine(st, lab, ptn)
    s = 0
    while s < n:
        e = s
        while not ptn[e]:
            e += 1
        if e > s and e - s + 1 < best_len:
            best_len = e - s + 1
            ts = s
            te = e
        s = e + 1
    if ts < 0:
        _leaf(st, lab)
        return
    for p in range(ts, te + 1):
        v = lab[p]
        skip = False
        for q in range(nexp):
            u = explored[q]
            if (st.rows[u] & ~((<uint64_t>1) << v)) == (st.rows[v] & ~((<uint64_t>1) << u)):
                skip = True
                break
        if not skip and nexp > 0 and st.nauto > 0:
            for x in range(n):
                parent[x] = x
            for g in range(st.nauto):
                fixes = True
                for q in range(nfixed):
                    if st.autos[g][fixed[q]] != fixed[q]:
                        fixes = False
                        break
                if fixes:
                    for x in range(n):
                        a = _uf_find(parent, x)
                        b = _uf_find(parent, st.autos[g][x])
                        if a != b:
                            parent[a] = b
            rv = _uf_find(parent, v)
            for q in range(nexp):
                if _uf_find(parent, explored[q]) == rv:
                    skip = True
                    break
        if skip:
            continue
        explored[nexp] = v
        nexp += 1
        memcpy(nlab, lab, n * sizeof(int))
        memcpy(nptn, ptn, n * sizeof(char))
        nlab[ts] = v
        nptn[ts] = 1
        q = ts + 1
        for x in range(ts, te + 1):
            if lab[x] != v:
                nlab[q] = lab[x]
                nptn[q] = 0
                q += 1
        nptn[te] = 1
        fixed[nfixed] = v
        _search(st, nlab, nptn, fixed, nfixed + 1)


def canonical_labeling(rows):
    cdef int n = len(rows)
    if n > MAXN:
        return _py.canonical_labeling(rows)
    if n == 0:
        return [], ()
    cdef CanonState* st = <CanonState*>malloc(sizeof(CanonState))
    cdef int lab[MAXN]
    cdef char ptn[MAXN]
    cdef int fixed[MAXN]
    cdef int degs[MAXN]
    cdef int i, q = 0, d
    try:
        st.n = n
        st.have_best = False
        st.nauto = 0
        _load(rows, st.rows)
        for i in range(n):
            degs[i] = popcount64(st.rows[i])
        for d in range(n):
            for i in range(n):
                if degs[i] == d:
                    lab[q] = i
                    ptn[q] = 0
                    q += 1
            if q > 0 and not ptn[q - 1]:
                ptn[q - 1] = 1
        with nogil:
            _search(st, lab, ptn, fixed, 0)
        perm = [st.best_perm[i] for i in range(n)]
        code = tuple([st.best[i] for i in range(n)])
        return perm, code
    finally:
        free(st)


# -- orderly enumeration ------------------------------------------------------

cdef class _Enumerator:
    cdef int n, m, lo_all
    cdef bint connected
    cdef uint64_t adj[MAXN]
    cdef int deg[MAXN]
    cdef int hi[MAXN]
    cdef int cs[MAXN + 1][MAXN]
    cdef int ce[MAXN + 1][MAXN]
    cdef int nc[MAXN + 1]
    cdef int cnt[MAXN + 1][MAXN]
    cdef list out

    def __init__(self, int n, int m, int lo_all, bint connected):
        self.n = n
        self.m = m
        self.lo_all = lo_all
        self.connected = connected
        self.out = []
        for i in range(n):
            self.adj[i] = 0
            self.deg[i] = 0

    cdef bint feasible(self, int i, int edges):
        cdef int rem = self.m - edges
        cdef int k = self.n - i - 1
        cdef int need = 0, cap = 0, nj, j, v
        cdef uint64_t outside = 0
        if rem < 0 or rem > k * (k - 1) // 2:
            return False
        for j in range(i + 1, self.n):
            nj = self.lo_all - self.deg[j]
            if nj > k - 1:
                return False
            if nj > 0:
                need += nj
            cap += self.hi[j] - self.deg[j]
        if not (need <= 2 * rem and 2 * rem <= cap):
            return False
        if self.connected and i < self.n - 1:
            for v in range(i + 1):
                outside |= self.adj[v]
            if _shr(outside, i + 1) == 0:
                return False
        return True

    cdef int row(self, int i, int edges) except -1:
        cdef int lo_i, hi_i, free_, k, s
        if i == self.n:
            if edges == self.m and (not self.connected or _connected(self.adj, self.n)):
                self.out.append(tuple([self.adj[k] for k in range(self.n)]))
            return 0
        lo_i = self.lo_all - self.deg[i]
        if lo_i < 0:
            lo_i = 0
        hi_i = self.hi[i] - self.deg[i]
        if i == 0:
            lo_i = hi_i
        free_ = 0
        for k in range(self.nc[i]):
            s = self.cs[i][k]
            if self.deg[s] < self.hi[s]:
                free_ += self.ce[i][k] - s + 1
        if lo_i > free_:
            return 0
        if free_ < hi_i:
            hi_i = free_
        if self.m - edges < hi_i:
            hi_i = self.m - edges
        self.choose(i, 0, lo_i, hi_i, 0, edges)
        return 0

    cdef int choose(self, int i, int k, int lo_i, int hi_i, int used, int edges) except -1:
        cdef int s, e, size, top, c, j, kk, q, ns, ne
        if k == self.nc[i]:
            if used < lo_i:
                return 0
            if not self.feasible(i, edges):
                return 0
            q = 0
            for kk in range(self.nc[i]):
                s = self.cs[i][kk]
                e = self.ce[i][kk]
                c = self.cnt[i][kk]
                if c:
                    self.cs[i + 1][q] = s
                    self.ce[i + 1][q] = s + c - 1
                    q += 1
                if s + c <= e:
                    self.cs[i + 1][q] = s + c
                    self.ce[i + 1][q] = e
                    q += 1
            if q > 0:
                if self.cs[i + 1][0] == self.ce[i + 1][0]:
                    for kk in range(q - 1):
                        self.cs[i + 1][kk] = self.cs[i + 1][kk + 1]
                        self.ce[i + 1][kk] = self.ce[i + 1][kk + 1]
                    q -= 1
                else:
                    self.cs[i + 1][0] += 1
            self.nc[i + 1] = q
            self.row(i + 1, edges)
            return 0
        s = self.cs[i][k]
        e = self.ce[i][k]
        size = e - s + 1
        top = 0
        if self.deg[s] < self.hi[s]:
            top = size if size < hi_i - used else hi_i - used
        c = top
        while c >= 0:
            for j in range(s, s + c):
                self.adj[i] |= (<uint64_t>1) << j
                self.adj[j] |= (<uint64_t>1) << i
                self.deg[j] += 1
            self.deg[i] += c
            self.cnt[i][k] = c
            self.choose(i, k + 1, lo_i, hi_i, used + c, edges + c)
            self.deg[i] -= c
            for j in range(s, s + c):
                self.adj[i] &= ~((<uint64_t>1) << j)
                self.adj[j] &= ~((<uint64_t>1) << i)
                self.deg[j] -= 1
            c -= 1
        return 0

    cdef run(self, int top):
        cdef int v
        for v in range(self.n):
            self.hi[v] = top
        if top < self.lo_all:
            return
        self.nc[0] = 1
        self.cs[0][0] = 1
        self.ce[0][0] = self.n - 1
        self.row(0, 0)


def enumerate_rows(n, m, degree=-1, connected=True):
    if n > MAXN or n <= 1:
        return list(_py.enumerate_rows(n, m, degree, connected))
    lo_all = degree if degree >= 0 else (1 if connected else 0)
    en = _Enumerator(n, m, lo_all, connected)
    if degree >= 0:
        tops = [degree] if degree <= n - 1 else []
    else:
        tops = range(min(n - 1, m), (2 * m + n - 1) // n - 1, -1)
    for top in tops:
        en.run(top)
    return en.out


# -- bootstrap percolation ----------------------------------------------------

cdef int _istar(const uint64_t* r, int n, int t, uint64_t seed) noexcept nogil:
    cdef uint64_t full = 0xFFFFFFFFFFFFFFFF if n == 64 else ((<uint64_t>1 << n) - 1)
    cdef uint64_t s = seed, add, rest
    cdef int steps = 0, v
    while s != full:
        add = 0
        rest = full & ~s
        while rest:
            v = ctz64(rest)
            rest &= rest - 1
            if popcount64(r[v] & s) >= t:
                add |= (<uint64_t>1) << v
        if not add:
            return -1
        s |= add
        steps += 1
    return steps


def istar(rows, int t, seed):
    cdef int n = len(rows)
    if n > MAXN:
        return _py.istar(rows, t, seed)
    cdef uint64_t r[MAXN]
    _load(rows, r)
    return _istar(r, n, t, <uint64_t>seed)


def istar_batch(rows, int t, seeds):
    cdef int n = len(rows)
    if n > MAXN:
        return _py.istar_batch(rows, t, seeds)
    cdef uint64_t r[MAXN]
    _load(rows, r)
    return [_istar(r, n, t, <uint64_t>s) for s in seeds]


def sync_histogram(rows, int t, int k):
    cdef int n = len(rows)
    if n >= MAXN or k > n or k < 0:
        return _py.sync_histogram(rows, t, k)
    cdef uint64_t r[MAXN]
    cdef uint64_t comb, limit, c, rr
    cdef long long hist[MAXN + 2]
    cdef int i, s
    _load(rows, r)
    for i in range(n + 2):
        hist[i] = 0
    with nogil:
        if k == 0:
            s = _istar(r, n, t, 0)
            hist[n + 1 if s < 0 else s] += 1
        else:
            comb = ((<uint64_t>1) << k) - 1
            limit = (<uint64_t>1) << n
            while comb < limit:
                s = _istar(r, n, t, comb)
                hist[n + 1 if s < 0 else s] += 1
                c = comb & (~comb + 1)
                rr = comb + c
                comb = (((rr ^ comb) >> 2) // c) | rr
    return [hist[i] for i in range(n + 2)]
