"""Brute-force ground truth: exhaustive labelled graphs, minor tests, class counts and laws."""
from __future__ import annotations

import warnings
from collections import Counter
from fractions import Fraction
from functools import lru_cache
from typing import Iterator

from . import kernels
from .classes import ClassId, excluded_minors, structural_membership
from .dist import ExactDistribution
from .graphs import LabelledGraph

MAX_N = 8
DEFAULT_MAX_N = 6


def enumerate_graphs(n: int) -> Iterator[LabelledGraph]:
    """All ``2^(n(n-1)/2)`` labelled graphs on ``1..n``, in edge-bitmask order."""
    if not 1 <= n <= MAX_N:
        raise ValueError(f"n must be between 1 and {MAX_N}")
    for mask in range(1 << (n * (n - 1) // 2)):
        yield LabelledGraph.from_edge_mask(n, mask)


def has_minor(g: LabelledGraph, h: LabelledGraph) -> bool:
    """True iff ``h`` (connected, at most 7 vertices) is a minor of ``g`` (at most 10 vertices)."""
    if h.n > 7:
        raise ValueError("pattern has more than 7 vertices")
    if g.n > 10:
        raise ValueError("host graph has more than 10 vertices")
    return kernels.has_minor(list(g.adj), list(h.adj))


@lru_cache(maxsize=None)
def _pattern_flags(n: int, h: LabelledGraph) -> bytes:
    if h.n > n:
        return bytes(1 << (n * (n - 1) // 2))
    return bytes(kernels.minor_flags(n, list(h.adj)))


@lru_cache(maxsize=None)
def minor_free_mask_flags(cid: ClassId, n: int) -> bytes:
    """``flags[mask] = 1`` iff the graph with that edge bitmask avoids every excluded minor."""
    size = 1 << (n * (n - 1) // 2)
    contains = bytearray(size)
    for h in excluded_minors(cid):
        f = _pattern_flags(n, h)
        contains = bytearray(x | y for x, y in zip(contains, f))
    return bytes(1 - x for x in contains)


@lru_cache(maxsize=None)
def structural_mask_flags(cid: ClassId, n: int) -> bytes | None:
    probe = structural_membership(cid, LabelledGraph(1))
    if probe is None:
        return None
    return bytes(
        1 if structural_membership(cid, LabelledGraph.from_edge_mask(n, m)) else 0
        for m in range(1 << (n * (n - 1) // 2))
    )


def _check_n(n: int, allow_seven: bool) -> None:
    if n < 1:
        raise ValueError("n must be at least 1")
    if n == 7 and not allow_seven:
        raise ValueError("n = 7 needs allow_seven=True (about 2 million graphs)")
    if n > 7:
        raise ValueError("exhaustive counts are limited to n <= 7")
    if n == 7:
        warnings.warn("exhaustive enumeration at n = 7 takes a while", RuntimeWarning, stacklevel=3)


def member_masks(cid: ClassId, n: int, method: str = "minor", allow_seven: bool = False) -> list[int]:
    """Edge bitmasks of the members on ``n`` vertices.

    ``method`` is ``"minor"`` (excluded-minor filtering), ``"structural"``, or
    ``"both"`` (compute both and require agreement).
    """
    _check_n(n, allow_seven)
    if method not in ("minor", "structural", "both"):
        raise ValueError("method must be minor, structural or both")
    minor = minor_free_mask_flags(cid, n) if method in ("minor", "both") else None
    struct = structural_mask_flags(cid, n) if method in ("structural", "both") else None
    if method == "structural" and struct is None:
        minor = minor_free_mask_flags(cid, n)
    if minor is not None and struct is not None and minor != struct:
        bad = next(m for m in range(len(minor)) if minor[m] != struct[m])
        raise AssertionError(
            f"structural and minor membership disagree for {cid} on {LabelledGraph.from_edge_mask(n, bad)}"
        )
    flags = minor if minor is not None else struct
    return [m for m, f in enumerate(flags) if f]


def class_members(cid: ClassId, n: int, method: str = "minor") -> list[LabelledGraph]:
    return [LabelledGraph.from_edge_mask(n, m) for m in member_masks(cid, n, method)]


def count_class(cid: ClassId, n: int, method: str = "both", allow_seven: bool = False) -> tuple[int, int]:
    """``(a_n, c_n)``: members and connected members on ``n`` labelled vertices."""
    if n == 0:
        return (1, 0)
    masks = member_masks(cid, n, method, allow_seven)
    connected = sum(1 for m in masks if len(kernels.component_size_profile(n, m)) == 1)
    return (len(masks), connected)


def exhaustive_distributions(cid: ClassId, n: int, method: str = "minor") -> dict[str, ExactDistribution]:
    """Laws of N_n, S_n and L_n by inspecting every member graph."""
    if not 1 <= n <= 6:
        raise ValueError("exhaustive distributions are limited to 1 <= n <= 6")
    masks = member_masks(cid, n, method)
    n_count: Counter[int] = Counter()
    s_count: Counter[int] = Counter()
    l_count: Counter[int] = Counter()
    for m in masks:
        g = LabelledGraph.from_edge_mask(n, m)
        comps = kernels.component_masks(list(g.adj))
        sizes = [bin(c).count("1") for c in comps]
        n_count[len(comps)] += 1
        s_count[next(bin(c).count("1") for c in comps if c & 1)] += 1
        l_count[max(sizes)] += 1
    total = len(masks)

    def law(stat: str, counter: Counter[int]) -> ExactDistribution:
        return ExactDistribution(stat, 1, tuple(Fraction(counter[k], total) for k in range(1, n + 1)))

    return {"N": law("N", n_count), "S": law("S", s_count), "L": law("L", l_count)}
