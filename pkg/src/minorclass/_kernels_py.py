"""Pure-Python graph kernels (fallback for the compiled ``_kernels`` module).

Graphs are lists of neighbour bitmasks over vertices ``0..n-1``.
"""
from __future__ import annotations

from typing import Sequence

BACKEND = "python"
MAX_VERTICES = 10


def popcount(x: int) -> int:
    return bin(x).count("1")


def component_masks(adj: Sequence[int]) -> list[int]:
    n = len(adj)
    seen = 0
    comps = []
    for v in range(n):
        if seen >> v & 1:
            continue
        comp = frontier = 1 << v
        while frontier:
            nxt = 0
            f = frontier
            while f:
                low = f & -f
                nxt |= adj[low.bit_length() - 1]
                f ^= low
            frontier = nxt & ~comp
            comp |= frontier
        seen |= comp
        comps.append(comp)
    return comps


def _is_connected_within(adj: Sequence[int], s: int) -> bool:
    low = s & -s
    comp = frontier = low
    while frontier:
        nxt = 0
        f = frontier
        while f:
            b = f & -f
            nxt |= adj[b.bit_length() - 1]
            f ^= b
        frontier = nxt & s & ~comp
        comp |= frontier
    return comp == s


def _connected_subsets(adj: Sequence[int], comp: int) -> list[tuple[int, int]]:
    """All nonempty connected vertex subsets of ``comp`` with their open neighbourhoods."""
    out = []
    s = comp
    while s:
        if _is_connected_within(adj, s):
            nb = 0
            f = s
            while f:
                b = f & -f
                nb |= adj[b.bit_length() - 1]
                f ^= b
            out.append((s, nb & ~s))
        s = (s - 1) & comp
    out.sort(key=lambda p: (popcount(p[0]), p[0]))
    return out


def _prepare_pattern(h: Sequence[int]) -> list[list[int]]:
    """BFS-order the pattern; return for each vertex the earlier neighbours' indices."""
    k = len(h)
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
    earlier = []
    for p, v in enumerate(order):
        nbrs = [pos[w] for w in range(k) if h[v] >> w & 1 and pos[w] < p]
        nbrs.sort()
        earlier.append(nbrs)
    return earlier


def _edge_count(adj: Sequence[int], mask: int) -> int:
    total = 0
    f = mask
    while f:
        b = f & -f
        total += popcount(adj[b.bit_length() - 1] & mask)
        f ^= b
    return total // 2


def has_minor(g: Sequence[int], h: Sequence[int]) -> bool:
    """True iff the pattern ``h`` (connected) is a minor of ``g``."""
    k = len(h)
    if k == 0:
        return True
    if len(g) > MAX_VERTICES:
        raise ValueError(f"host graph has more than {MAX_VERTICES} vertices")
    earlier = _prepare_pattern(h)
    h_edges = sum(popcount(x) for x in h) // 2
    h_cyc = h_edges - k + 1
    for comp in component_masks(g):
        size = popcount(comp)
        if size < k:
            continue
        e = _edge_count(g, comp)
        if e < h_edges or e - size + 1 < h_cyc:
            continue
        subsets = _connected_subsets(g, comp)
        branch = [0] * k

        def search(i: int, used: int) -> bool:
            if i == k:
                return True
            if popcount(comp & ~used) < k - i:
                return False
            need = earlier[i]
            for s, ns in subsets:
                if s & used:
                    continue
                ok = True
                for j in need:
                    if not ns & branch[j]:
                        ok = False
                        break
                if not ok:
                    continue
                branch[i] = s
                if search(i + 1, used | s):
                    return True
            return False

        if search(0, 0):
            return True
    return False


def _pairs(n: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


def minor_flags(n: int, h: Sequence[int]) -> bytearray:
    """``flags[mask] = 1`` iff the graph with edge bitmask ``mask`` on ``n`` vertices has ``h`` as a minor.

    Masks are visited in increasing order; a graph whose subgraph obtained by
    dropping its highest edge already contains ``h`` is marked without a search.
    """
    pairs = _pairs(n)
    total = 1 << len(pairs)
    flags = bytearray(total)
    for mask in range(1, total):
        top = mask.bit_length() - 1
        if flags[mask ^ (1 << top)]:
            flags[mask] = 1
            continue
        adj = [0] * n
        m = mask
        while m:
            b = m & -m
            i, j = pairs[b.bit_length() - 1]
            adj[i] |= 1 << j
            adj[j] |= 1 << i
            m ^= b
        if has_minor(adj, h):
            flags[mask] = 1
    return flags


def component_size_profile(n: int, mask: int) -> list[int]:
    """Component sizes of the graph with the given edge bitmask."""
    pairs = _pairs(n)
    adj = [0] * n
    m = mask
    while m:
        b = m & -m
        i, j = pairs[b.bit_length() - 1]
        adj[i] |= 1 << j
        adj[j] |= 1 << i
        m ^= b
    return [popcount(c) for c in component_masks(adj)]
