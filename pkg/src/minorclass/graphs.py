"""Small labelled graphs stored as per-vertex neighbour bitmasks.

Vertices are ``1..n`` externally and ``0..n-1`` internally; bit ``j`` of
``adj[i]`` is set when ``{i, j}`` is an edge.  Also: graph6 and JSON
serialization, and the small pattern graphs used as excluded minors.
"""
from __future__ import annotations

import itertools
import json
from functools import lru_cache
from typing import Iterable, Sequence


@lru_cache(maxsize=None)
def pair_list(n: int) -> tuple[tuple[int, int], ...]:
    """Unordered pairs of ``0..n-1`` in the order used by edge bitmasks."""
    return tuple(itertools.combinations(range(n), 2))


class LabelledGraph:
    __slots__ = ("n", "adj")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        """Edges are given with 1-based labels."""
        if n < 0:
            raise ValueError("negative vertex count")
        adj = [0] * n
        for u, v in edges:
            if not (1 <= u <= n and 1 <= v <= n):
                raise ValueError(f"edge ({u}, {v}) outside vertex set 1..{n}")
            if u == v:
                raise ValueError("loops are not allowed")
            adj[u - 1] |= 1 << (v - 1)
            adj[v - 1] |= 1 << (u - 1)
        self.n = n
        self.adj = tuple(adj)

    @classmethod
    def from_adjacency(cls, adj: Sequence[int]) -> "LabelledGraph":
        g = cls.__new__(cls)
        g.n = len(adj)
        g.adj = tuple(adj)
        return g

    @classmethod
    def from_edge_mask(cls, n: int, mask: int) -> "LabelledGraph":
        adj = [0] * n
        for b, (i, j) in enumerate(pair_list(n)):
            if mask >> b & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
        return cls.from_adjacency(adj)

    def edge_mask(self) -> int:
        mask = 0
        for b, (i, j) in enumerate(pair_list(self.n)):
            if self.adj[i] >> j & 1:
                mask |= 1 << b
        return mask

    def edges(self) -> list[tuple[int, int]]:
        return [(i + 1, j + 1) for i, j in pair_list(self.n) if self.adj[i] >> j & 1]

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u - 1] >> (v - 1) & 1)

    @property
    def edge_count(self) -> int:
        return sum(bin(a).count("1") for a in self.adj) // 2

    def degree(self, v: int) -> int:
        return bin(self.adj[v - 1]).count("1")

    def degrees(self) -> list[int]:
        return [bin(a).count("1") for a in self.adj]

    def components(self) -> list[int]:
        """Vertex bitmasks (0-based bits) of the connected components."""
        return component_masks(self.adj)

    def component_sizes(self) -> list[int]:
        return [bin(c).count("1") for c in self.components()]

    def is_connected(self) -> bool:
        return self.n > 0 and len(self.components()) == 1

    def induced(self, mask: int) -> "LabelledGraph":
        """Subgraph induced on the vertex bitmask, relabelled in increasing order."""
        verts = [i for i in range(self.n) if mask >> i & 1]
        index = {v: k for k, v in enumerate(verts)}
        adj = []
        for v in verts:
            a = 0
            for w in verts:
                if self.adj[v] >> w & 1:
                    a |= 1 << index[w]
            adj.append(a)
        return LabelledGraph.from_adjacency(adj)

    def relabel(self, perm: Sequence[int]) -> "LabelledGraph":
        """Apply ``perm`` (a permutation of ``1..n``): vertex ``v`` becomes ``perm[v-1]``."""
        return LabelledGraph(self.n, [(perm[u - 1], perm[v - 1]) for u, v in self.edges()])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LabelledGraph):
            return NotImplemented
        return self.n == other.n and self.adj == other.adj

    def __hash__(self) -> int:
        return hash((self.n, self.adj))

    def __repr__(self) -> str:
        return f"LabelledGraph(n={self.n}, edges={self.edges()})"

    # -- serialization -----------------------------------------------------
    def to_dict(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.edges()]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> "LabelledGraph":
        return cls(data["n"], [tuple(e) for e in data["edges"]])

    @classmethod
    def from_json(cls, text: str) -> "LabelledGraph":
        return cls.from_dict(json.loads(text))

    def to_graph6(self) -> str:
        return graph6_encode(self)

    @classmethod
    def from_graph6(cls, text: str) -> "LabelledGraph":
        return graph6_decode(text)


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


# -- graph6 -----------------------------------------------------------------------

def _encode_n(n: int) -> str:
    if n < 63:
        return chr(n + 63)
    if n < 258048:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    if n < 1 << 36:
        return "~~" + "".join(chr(((n >> s) & 63) + 63) for s in (30, 24, 18, 12, 6, 0))
    raise ValueError("graph too large for graph6")


def graph6_encode(g: LabelledGraph) -> str:
    bits = []
    for j in range(1, g.n):
        for i in range(j):
            bits.append(g.adj[i] >> j & 1)
    bits.extend([0] * (-len(bits) % 6))
    body = "".join(
        chr(63 + int("".join(map(str, bits[k : k + 6])), 2)) for k in range(0, len(bits), 6)
    )
    return _encode_n(g.n) + body


def graph6_decode(text: str) -> LabelledGraph:
    text = text.strip()
    if text.startswith(">>graph6<<"):
        text = text[10:]
    vals = [ord(c) - 63 for c in text]
    if any(v < 0 or v > 63 for v in vals):
        raise ValueError("invalid graph6 character")
    if vals[0] == 63:
        if len(vals) > 1 and vals[1] == 63:
            n = 0
            for v in vals[2:8]:
                n = n << 6 | v
            body = vals[8:]
        else:
            n = 0
            for v in vals[1:4]:
                n = n << 6 | v
            body = vals[4:]
    else:
        n, body = vals[0], vals[1:]
    need = (n * (n - 1) // 2 + 5) // 6
    if len(body) != need:
        raise ValueError("graph6 body has the wrong length")
    bits = []
    for v in body:
        bits.extend((v >> s) & 1 for s in range(5, -1, -1))
    adj = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            k += 1
    return LabelledGraph.from_adjacency(adj)


# -- patterns -----------------------------------------------------------------------

def path_graph(m: int) -> LabelledGraph:
    """Path on ``m`` vertices."""
    return LabelledGraph(m, [(i, i + 1) for i in range(1, m)])


def cycle_graph(m: int) -> LabelledGraph:
    return LabelledGraph(m, [(i, i % m + 1) for i in range(1, m + 1)])


def complete_graph(m: int) -> LabelledGraph:
    return LabelledGraph(m, [(i + 1, j + 1) for i, j in pair_list(m)])


def star_graph(k: int) -> LabelledGraph:
    """``K_{1,k}``: a centre joined to ``k`` leaves."""
    return LabelledGraph(k + 1, [(1, i) for i in range(2, k + 2)])


def triangle() -> LabelledGraph:
    return complete_graph(3)


def diamond() -> LabelledGraph:
    return LabelledGraph(4, [(1, 2), (1, 3), (2, 3), (2, 4), (3, 4)])


def bowtie() -> LabelledGraph:
    return LabelledGraph(5, [(1, 2), (1, 3), (2, 3), (1, 4), (1, 5), (4, 5)])


def spoon(k: int) -> LabelledGraph:
    """Triangle with a handle of ``k`` edges."""
    if k < 1:
        raise ValueError("a spoon handle has at least one edge")
    edges = [(1, 2), (2, 3), (1, 3)]
    edges += [(i, i + 1) if i > 3 else (3, 4) for i in range(3, 3 + k)]
    return LabelledGraph(3 + k, edges)


def spider(legs: int = 3, length: int = 2) -> LabelledGraph:
    """A centre with ``legs`` paths of ``length`` edges each."""
    edges = []
    v = 2
    for _ in range(legs):
        prev = 1
        for _ in range(length):
            edges.append((prev, v))
            prev = v
            v += 1
    return LabelledGraph(v - 1, edges)


def h_tree() -> LabelledGraph:
    """Two adjacent vertices, each carrying two pendant leaves."""
    return LabelledGraph(6, [(1, 2), (1, 3), (1, 4), (2, 5), (2, 6)])


def _tree_code(adj: Sequence[int], root: int, parent: int) -> str:
    kids = []
    a = adj[root]
    while a:
        low = a & -a
        v = low.bit_length() - 1
        a ^= low
        if v != parent:
            kids.append(_tree_code(adj, v, root))
    return "(" + "".join(sorted(kids)) + ")"


def tree_canonical_form(g: LabelledGraph) -> str:
    """Isomorphism invariant of a tree, rooted at its centre(s)."""
    n = g.n
    if n <= 2:
        return str(n)
    deg = g.degrees()
    leaves = [v for v in range(n) if deg[v] == 1]
    remaining = n
    removed = [False] * n
    while remaining > 2:
        nxt = []
        for v in leaves:
            removed[v] = True
            remaining -= 1
            a = g.adj[v]
            while a:
                low = a & -a
                w = low.bit_length() - 1
                a ^= low
                if not removed[w]:
                    deg[w] -= 1
                    if deg[w] == 1:
                        nxt.append(w)
        leaves = nxt
    centres = [v for v in range(n) if not removed[v]]
    return min(_tree_code(g.adj, c, -1) for c in centres)


def tree_from_pruefer(seq: Sequence[int], n: int) -> LabelledGraph:
    """Labelled tree on ``1..n`` from a Prüfer sequence over ``1..n``."""
    degree = [1] * (n + 1)
    for x in seq:
        degree[x] += 1
    edges = []
    for x in seq:
        leaf = next(v for v in range(1, n + 1) if degree[v] == 1)
        edges.append((leaf, x))
        degree[leaf] -= 1
        degree[x] -= 1
    u, w = (v for v in range(1, n + 1) if degree[v] == 1)
    edges.append((u, w))
    return LabelledGraph(n, edges)


def labelled_trees(n: int) -> Iterable[LabelledGraph]:
    if n == 1:
        yield LabelledGraph(1)
        return
    if n == 2:
        yield LabelledGraph(2, [(1, 2)])
        return
    for seq in itertools.product(range(1, n + 1), repeat=n - 2):
        yield tree_from_pruefer(seq, n)


@lru_cache(maxsize=None)
def unlabelled_trees(n: int) -> tuple[LabelledGraph, ...]:
    """One representative of each isomorphism class of trees on ``n`` vertices."""
    reps: dict[str, LabelledGraph] = {}
    for t in labelled_trees(n):
        reps.setdefault(tree_canonical_form(t), t)
    return tuple(reps[k] for k in sorted(reps))
