# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled graph kernels; same interface as ``_kernels_py``."""

from libc.string cimport memset

BACKEND = "cython"
MAX_VERTICES = 10

cdef enum:
    MAXV = 10
    MAXSUB = 1024
    MAXH = 10


cdef extern from *:
    int __builtin_popcount(unsigned int) nogil
    int __builtin_ctz(unsigned int) nogil
    int __builtin_clzl(unsigned long) nogil
    int __builtin_ctzl(unsigned long) nogil


cdef inline int _pop(unsigned int x) nogil:
    return __builtin_popcount(x)


def popcount(x):
    return bin(x).count("1")


cdef int _components(const unsigned int* adj, int n, unsigned int* out) nogil:
    cdef unsigned int seen = 0, comp, frontier, nxt, f, low
    cdef int v, count = 0
    for v in range(n):
        if (seen >> v) & 1:
            continue
        comp = 1u << v
        frontier = comp
        while frontier:
            nxt = 0
            f = frontier
            while f:
                low = f & (~f + 1)
                nxt |= adj[__builtin_ctz(low)]
                f ^= low
            frontier = nxt & ~comp
            comp |= frontier
        seen |= comp
        out[count] = comp
        count += 1
    return count


def component_masks(adj):
    cdef unsigned int a[MAXV]
    cdef unsigned int out[MAXV]
    cdef int n = len(adj), i, c
    if n > MAXV:
        raise ValueError(f"host graph has more than {MAXV} vertices")
    for i in range(n):
        a[i] = adj[i]
    c = _components(a, n, out)
    return [out[i] for i in range(c)]


cdef bint _connected_within(const unsigned int* adj, unsigned int s) nogil:
    cdef unsigned int comp = s & (~s + 1), frontier, nxt, f, b
    frontier = comp
    while frontier:
        nxt = 0
        f = frontier
        while f:
            b = f & (~f + 1)
            nxt |= adj[__builtin_ctz(b)]
            f ^= b
        frontier = nxt & s & ~comp
        comp |= frontier
    return comp == s


cdef struct Search:
    int k
    int nsub
    unsigned int comp
    unsigned int sub[MAXSUB]
    unsigned int nb[MAXSUB]
    int nearlier[MAXH]
    int earlier[MAXH][MAXH]
    unsigned int branch[MAXH]


cdef bint _search(Search* st, int i, unsigned int used) nogil:
    cdef int t, j, q
    cdef unsigned int s, ns
    cdef bint ok
    if i == st.k:
        return True
    if _pop(st.comp & ~used) < st.k - i:
        return False
    for t in range(st.nsub):
        s = st.sub[t]
        if s & used:
            continue
        ns = st.nb[t]
        ok = True
        for q in range(st.nearlier[i]):
            j = st.earlier[i][q]
            if not (ns & st.branch[j]):
                ok = False
                break
        if not ok:
            continue
        st.branch[i] = s
        if _search(st, i + 1, used | s):
            return True
    return False


cdef void _fill_subsets(Search* st, const unsigned int* adj, unsigned int comp) nogil:
    # connected subsets ordered by size, then by mask
    cdef unsigned int s, nb, f, b
    cdef int size, count = 0, maxsize = _pop(comp)
    for size in range(1, maxsize + 1):
        s = comp
        while s:
            if _pop(s) == size and _connected_within(adj, s):
                nb = 0
                f = s
                while f:
                    b = f & (~f + 1)
                    nb |= adj[__builtin_ctz(b)]
                    f ^= b
                st.sub[count] = s
                st.nb[count] = nb & ~s
                count += 1
            s = (s - 1) & comp
    st.nsub = count


cdef int _prepare(Search* st, h) except -1:
    cdef int k = len(h), p, q
    order = [0]
    seen = 1
    i = 0
    while i < len(order):
        a = h[order[i]] & ~seen
        while a:
            b = a & -a
            order.append(b.bit_length() - 1)
            seen |= b
            a ^= b
        i += 1
    if len(order) != k:
        raise ValueError("minor patterns must be connected")
    pos = {v: p for p, v in enumerate(order)}
    st.k = k
    for p in range(k):
        v = order[p]
        nbrs = sorted(pos[w] for w in range(k) if (h[v] >> w) & 1 and pos[w] < p)
        st.nearlier[p] = len(nbrs)
        for q in range(len(nbrs)):
            st.earlier[p][q] = nbrs[q]
    return 0


cdef bint _has_minor(Search* st, const unsigned int* adj, int n, int h_edges, int h_cyc) nogil:
    cdef unsigned int comps[MAXV]
    cdef unsigned int comp, f, b
    cdef int c, ncomp, size, e
    ncomp = _components(adj, n, comps)
    for c in range(ncomp):
        comp = comps[c]
        size = _pop(comp)
        if size < st.k:
            continue
        e = 0
        f = comp
        while f:
            b = f & (~f + 1)
            e += _pop(adj[__builtin_ctz(b)] & comp)
            f ^= b
        e //= 2
        if e < h_edges or e - size + 1 < h_cyc:
            continue
        st.comp = comp
        _fill_subsets(st, adj, comp)
        if _search(st, 0, 0):
            return True
    return False


cdef class _Pattern:
    cdef Search st
    cdef int h_edges
    cdef int h_cyc

    def __init__(self, h):
        if len(h) > MAXH:
            raise ValueError(f"pattern has more than {MAXH} vertices")
        _prepare(&self.st, h)
        self.h_edges = sum(popcount(x) for x in h) // 2
        self.h_cyc = self.h_edges - len(h) + 1


def has_minor(g, h):
    """True iff the pattern ``h`` (connected) is a minor of ``g``."""
    cdef unsigned int a[MAXV]
    cdef int n = len(g), i
    cdef _Pattern pat
    if len(h) == 0:
        return True
    if n > MAXV:
        raise ValueError(f"host graph has more than {MAXV} vertices")
    for i in range(n):
        a[i] = g[i]
    pat = _Pattern(h)
    return bool(_has_minor(&pat.st, a, n, pat.h_edges, pat.h_cyc))


def minor_flags(int n, h):
    """``flags[mask] = 1`` iff the graph with edge bitmask ``mask`` on ``n`` vertices has ``h`` as a minor."""
    cdef int m = n * (n - 1) // 2, i, j, p
    cdef int pi[64]
    cdef int pj[64]
    cdef unsigned int a[MAXV]
    cdef unsigned long mask, total, mm, low
    cdef int top
    cdef _Pattern pat = _Pattern(h)
    if n > 8:
        raise ValueError("exhaustive enumeration is limited to 8 vertices")
    p = 0
    for i in range(n):
        for j in range(i + 1, n):
            pi[p] = i
            pj[p] = j
            p += 1
    total = 1ul << m
    flags = bytearray(total)
    cdef unsigned char[::1] fv = flags
    with nogil:
        for mask in range(1, total):
            top = 63 - __builtin_clzl(mask)
            if fv[mask ^ (1ul << top)]:
                fv[mask] = 1
                continue
            memset(a, 0, sizeof(a))
            mm = mask
            while mm:
                low = mm & (~mm + 1)
                p = __builtin_ctzl(low)
                a[pi[p]] |= 1u << pj[p]
                a[pj[p]] |= 1u << pi[p]
                mm ^= low
            if _has_minor(&pat.st, a, n, pat.h_edges, pat.h_cyc):
                fv[mask] = 1
    return flags


def component_size_profile(int n, mask):
    """Component sizes of the graph with the given edge bitmask."""
    cdef unsigned int a[MAXV]
    cdef unsigned int out[MAXV]
    cdef int i, j, p = 0, c
    memset(a, 0, sizeof(a))
    for i in range(n):
        for j in range(i + 1, n):
            if (mask >> p) & 1:
                a[i] |= 1u << j
                a[j] |= 1u << i
            p += 1
    c = _components(a, n, out)
    return [_pop(out[i]) for i in range(c)]
