"""Catalogue of the minor-closed graph classes: series, closed forms, singularities, membership."""
from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

import mpmath
from mpmath import mpf

from . import egf
from .egf import TruncatedEGF
from .graphs import (
    LabelledGraph,
    bowtie,
    component_masks,
    diamond,
    h_tree,
    spider,
    spoon,
    star_graph,
    triangle,
    unlabelled_trees,
)
from .jet import Jet
from . import kernels

DEFAULT_PREC = 256

# connected labelled graphs on i vertices, i = 0..6
CONNECTED_COUNTS = (0, 1, 1, 4, 38, 728, 26704)

TAGS = (
    "forests",
    "spoon-dbf",
    "two-spoon-free",
    "diamond-bowtie-free",
    "bounded",
    "path-forests",
    "caterpillar-forests",
    "max-degree-2",
    "bowtie-free",
    "star-ray",
)
_PARAMETRIC = {"spoon-dbf", "bounded", "star-ray"}
TREE_BASED = {"forests", "spoon-dbf", "two-spoon-free", "diamond-bowtie-free", "bowtie-free"}


class DomainError(ValueError):
    """Argument outside the domain of an analytic function."""


class UnsupportedClass(ValueError):
    """Operation not available for this class."""


@dataclass(frozen=True)
class ClassId:
    """A class tag with its parameter.

    ``k`` is the spoon handle length, the component-size bound, or the star-ray
    degree bound (``None`` meaning unbounded).  ``counts`` optionally supplies
    the connected counts ``c_0..c_k`` for bounded components beyond the built-in table.
    """

    tag: str
    k: Optional[int] = None
    counts: Optional[tuple[int, ...]] = None

    def __post_init__(self):
        if self.tag not in TAGS:
            raise ValueError(f"unknown class tag {self.tag!r}")
        if self.tag in ("spoon-dbf", "bounded"):
            if self.k is None or self.k < 1:
                raise ValueError(f"{self.tag} needs an integer parameter k >= 1")
        elif self.tag == "star-ray":
            if self.k is not None and self.k < 2:
                raise ValueError("star-ray needs k >= 2 or infinity")
        elif self.k is not None:
            raise ValueError(f"{self.tag} takes no parameter")
        if self.counts is not None:
            if self.tag != "bounded" or len(self.counts) != self.k + 1:
                raise ValueError("counts must list c_0..c_k for bounded components")

    def __str__(self) -> str:
        if self.tag in _PARAMETRIC:
            return f"{self.tag}:{'inf' if self.k is None else self.k}"
        return self.tag

    @property
    def tree_based(self) -> bool:
        return self.tag in TREE_BASED


def parse_class(token: str) -> ClassId:
    """Parse a CLI token such as ``forests``, ``bounded:3`` or ``star-ray:inf``."""
    tag, _, param = token.strip().partition(":")
    if tag not in TAGS:
        raise ValueError(f"unknown class {token!r}; expected one of {', '.join(TAGS)}")
    if tag in _PARAMETRIC:
        if not param:
            raise ValueError(f"class {tag} needs a parameter, e.g. {tag}:3")
        if tag == "star-ray" and param in ("inf", "infinity"):
            return ClassId(tag, None)
        try:
            k = int(param)
        except ValueError:
            raise ValueError(f"bad parameter {param!r} for {tag}") from None
        return ClassId(tag, k)
    if param:
        raise ValueError(f"class {tag} takes no parameter")
    return ClassId(tag)


FORESTS = ClassId("forests")
TWO_SPOON_FREE = ClassId("two-spoon-free")
DIAMOND_BOWTIE_FREE = ClassId("diamond-bowtie-free")
PATH_FORESTS = ClassId("path-forests")
CATERPILLAR_FORESTS = ClassId("caterpillar-forests")
MAX_DEGREE_TWO = ClassId("max-degree-2")
BOWTIE_FREE = ClassId("bowtie-free")


def spoon_dbf(k: int) -> ClassId:
    return ClassId("spoon-dbf", k)


def bounded(k: int, counts: Optional[tuple[int, ...]] = None) -> ClassId:
    return ClassId("bounded", k, counts)


def star_ray(k: Optional[int]) -> ClassId:
    return ClassId("star-ray", k)


def all_classes_for_tests() -> list[ClassId]:
    """One representative per tag, plus a few parameter values."""
    return [
        FORESTS,
        spoon_dbf(1),
        spoon_dbf(2),
        spoon_dbf(3),
        TWO_SPOON_FREE,
        DIAMOND_BOWTIE_FREE,
        bounded(1),
        bounded(2),
        bounded(3),
        PATH_FORESTS,
        CATERPILLAR_FORESTS,
        MAX_DEGREE_TWO,
        BOWTIE_FREE,
        star_ray(2),
        star_ray(3),
        star_ray(None),
    ]


# -- series builders ------------------------------------------------------------

def _half(f: TruncatedEGF) -> TruncatedEGF:
    return f.scale(Fraction(1, 2))


def _neg_log_one_minus(u: TruncatedEGF) -> TruncatedEGF:
    """``log 1/(1-u)`` for ``u`` with zero constant term."""
    return -egf.log(1 - u)


def cyc_of(u: TruncatedEGF) -> TruncatedEGF:
    """Undirected cycles on the atoms of ``u``: ``(log 1/(1-u) - u - u^2/2) / 2``."""
    return _half(_neg_log_one_minus(u) - u - _half(u * u))


def bowtie_core_series(order: int) -> TruncatedEGF:
    """Non-empty bowtie-free cores, as a series in their own vertices."""
    z = egf.z(order)
    ez = egf.exp_z(order)
    z2 = egf.monomial(2, order)
    z4 = egf.monomial(4, order, Fraction(1, 24))
    chain = egf.monomial(2, order) * egf.geometric(order)  # z^2/(1-z)
    half_z2 = _half(z2)
    e1 = ez - 1
    e1z = e1 - z
    e1zz = e1z - _half(z2)
    bt1 = cyc_of(z)
    bt2 = z4 + z4 * 6 * (z * egf.geometric(order))
    bt3 = half_z2 * e1z + half_z2 * e1 * chain
    bt4 = half_z2 * e1zz + half_z2 * e1z * chain
    return bt1 + bt2 + bt3 + bt4


def _two_spoon_d(order: int) -> TruncatedEGF:
    z = egf.z(order)
    ez = egf.exp_z(order)
    s = z * ez
    z2 = egf.monomial(2, order)
    e1zq = ez - 1 - z - z2.scale(Fraction(1, 4))
    return cyc_of(s) + egf.monomial(4, order, Fraction(1, 24)) + s * s * e1zq


def _star_ray_series(k: Optional[int], order: int) -> TruncatedEGF:
    z = egf.z(order)
    g = egf.geometric(order)  # 1/(1-z)
    if k is None:
        y = z * g
        return z * egf.exp(y) - _half(egf.monomial(2, order) * g * g)
    out = z + _half(egf.monomial(2, order) * g)
    y = z * g
    ypow = y * y
    for i in range(3, k + 1):
        ypow = ypow * y
        out = out + (z * ypow).scale(Fraction(1, math.factorial(i)))
    return out


def _bounded_counts(cid: ClassId) -> tuple[int, ...]:
    if cid.counts is not None:
        return cid.counts
    if cid.k >= len(CONNECTED_COUNTS):
        raise UnsupportedClass(
            f"bounded components with k > {len(CONNECTED_COUNTS) - 1} need caller-supplied connected counts"
        )
    return CONNECTED_COUNTS[: cid.k + 1]


def _build_connected(cid: ClassId, order: int) -> TruncatedEGF:
    tag = cid.tag
    if tag == "forests":
        u = egf.z(order)
        return egf.tree_substitute(u - _half(u * u))
    if tag == "spoon-dbf":
        u = egf.z(order)
        trees = egf.tree_substitute(u - _half(u * u))
        tk = egf.solve_bounded_tree(cid.k, order)
        return trees + cyc_of(tk)
    if tag == "two-spoon-free":
        u = egf.z(order)
        return egf.tree_substitute(u - _half(u * u)) + _two_spoon_d(order)
    if tag == "diamond-bowtie-free":
        u = egf.z(order)
        f = _half(u) - (u * u).scale(Fraction(3, 4)) + _half(_neg_log_one_minus(u))
        return egf.tree_substitute(f)
    if tag == "bounded":
        c = _bounded_counts(cid)
        return TruncatedEGF([c[i] if i <= cid.k else 0 for i in range(order + 1)])
    if tag == "path-forests":
        z = egf.z(order)
        return (z * (2 - z)).scale(Fraction(1, 2)) * egf.geometric(order)
    if tag == "caterpillar-forests":
        z = egf.z(order)
        ez = egf.exp_z(order)
        s = z * ez
        e1 = ez - 1
        z2 = egf.monomial(2, order)
        return _half(z2 * e1 * e1) / (1 - s) + s - _half(z2)
    if tag == "max-degree-2":
        z = egf.z(order)
        num = z * (2 - z + z * z)
        return num.scale(Fraction(1, 4)) * egf.geometric(order) + _half(_neg_log_one_minus(z))
    if tag == "bowtie-free":
        u = egf.z(order)
        return egf.tree_substitute(u - _half(u * u) + bowtie_core_series(order))
    if tag == "star-ray":
        return _star_ray_series(cid.k, order)
    raise ValueError(f"no builder for {cid}")


_cache: dict[ClassId, TruncatedEGF] = {}
_all_cache: dict[ClassId, TruncatedEGF] = {}
_lock = threading.Lock()


def connected_egf(cid: ClassId, order: int) -> TruncatedEGF:
    """Exact EGF ``C(z)`` of the connected members, truncated at ``order``."""
    if order < 0:
        raise ValueError("order must be non-negative")
    with _lock:
        hit = _cache.get(cid)
    if hit is not None and hit.order >= order:
        return hit.truncate(order)
    series = _build_connected(cid, order)
    with _lock:
        prev = _cache.get(cid)
        if prev is None or prev.order < order:
            _cache[cid] = series
    return series


def all_egf(cid: ClassId, order: int) -> TruncatedEGF:
    """``A(z) = exp(C(z))`` truncated at ``order``."""
    with _lock:
        hit = _all_cache.get(cid)
    if hit is not None and hit.order >= order:
        return hit.truncate(order)
    series = egf.exp(connected_egf(cid, order))
    with _lock:
        prev = _all_cache.get(cid)
        if prev is None or prev.order < order:
            _all_cache[cid] = series
    return series


# -- closed-form evaluation -------------------------------------------------------

def tree_value(r, prec: int = DEFAULT_PREC):
    """The real ``T`` in ``[0, 1]`` with ``T e^{-T} = r``, for ``0 <= r <= 1/e``.

    An ``r`` above ``1/e`` by less than ``2^-48`` relative is taken as ``1/e``.
    """
    with mpmath.workprec(prec + 32):
        r = mpf(r)
        e_inv = mpmath.exp(-1)
        if e_inv < r <= e_inv * (1 + mpf(2) ** -48):
            r = e_inv
        if r < 0 or r > e_inv:
            raise DomainError(f"tree_value needs 0 <= r <= 1/e, got {mpmath.nstr(r, 10)}")
        if r == 0:
            return mpf(0)
        if r == e_inv:
            return mpf(1)
        lo, hi = mpf(0), mpf(1)
        t = -mpmath.re(mpmath.lambertw(-r))
        if not lo < t < hi:
            t = (lo + hi) / 2
        tol = mpf(2) ** (-prec)
        for _ in range(4 * prec):
            f = t * mpmath.exp(-t) - r
            if abs(f) < tol:
                break
            # f is increasing on [0, 1]
            if f > 0:
                hi = t
            else:
                lo = t
            d = (1 - t) * mpmath.exp(-t)
            nt = t - f / d if d != 0 else (lo + hi) / 2
            if not lo < nt < hi:
                nt = (lo + hi) / 2
            t = nt
        return +t


def _tree_jet(z: Jet, prec: int) -> Jet:
    t0 = tree_value(z.value, prec)
    t = Jet.const(t0, z.order)
    for _ in range(z.order.bit_length() + 2):
        f = t - z * t.exp()
        df = 1 - z * t.exp()
        t = t - f / df
    t.c[0] = t0
    return t


def _bounded_tree_jet(z: Jet, k: int) -> Jet:
    t = z
    for _ in range(k - 1):
        t = z * t.exp()
    return t


def _cyc_jet(u: Jet) -> Jet:
    return ((1 - u).log() * -1 - u - u * u * mpf(0.5)) * mpf(0.5)


def _closed_form(cid: ClassId, z: Jet, prec: int, at_rho: bool = False) -> Jet:
    tag = cid.tag
    if tag in ("forests", "spoon-dbf", "two-spoon-free", "diamond-bowtie-free", "bowtie-free"):
        if at_rho:
            T = Jet.const(1, 0)
        else:
            T = _tree_jet(z, prec)
        trees = T - T * T * mpf(0.5)
        if tag == "forests":
            return trees
        if tag == "spoon-dbf":
            return trees + _cyc_jet(_bounded_tree_jet(z, cid.k))
        if tag == "two-spoon-free":
            s = z * z.exp()
            d = _cyc_jet(s) + z ** 4 / 24 + s * s * (z.exp() - 1 - z - z * z / 4)
            return trees + d
        if tag == "diamond-bowtie-free":
            return T / 2 - T * T * mpf(0.75) - (1 - T).log() / 2
        # bowtie-free
        one_m = 1 - T
        term1 = T * T * (1 - T + T * T) * T.exp() / one_m
        term2 = one_m.log() * mpf(-0.5)
        poly = 12 - 54 * T + 18 * T ** 2 - 5 * T ** 3 - T ** 4
        term3 = T * poly / (24 * one_m)
        return term1 + term2 + term3
    if tag == "bounded":
        c = _bounded_counts(cid)
        out = Jet.const(0, z.order)
        zp = Jet.const(1, z.order)
        for i in range(1, cid.k + 1):
            zp = zp * z
            out = out + zp * (mpf(c[i]) / math.factorial(i))
        return out
    if tag == "path-forests":
        return z * (2 - z) / (2 * (1 - z))
    if tag == "caterpillar-forests":
        ez = z.exp()
        e1 = ez - 1
        return z * z * e1 * e1 / (2 * (1 - z * ez)) + z * ez - z * z / 2
    if tag == "max-degree-2":
        return z * (2 - z + z * z) / (4 * (1 - z)) - (1 - z).log() / 2
    if tag == "star-ray":
        g = 1 / (1 - z)
        if cid.k is None:
            return z * (z * g).exp() - z * z * g * g / 2
        out = z + z * z * g / 2
        y = z * g
        ypow = y * y
        for i in range(3, cid.k + 1):
            ypow = ypow * y
            out = out + z * ypow / math.factorial(i)
        return out
    raise ValueError(f"no closed form for {cid}")


def eval_analytic(cid: ClassId, r, derivatives: int = 0, prec: int = DEFAULT_PREC) -> tuple:
    """``(C(r), C'(r), ..., C^(d)(r))`` from closed forms, ``d = derivatives`` (0..3).

    Valid for ``0 <= r < rho``; at ``r = rho`` only the value is available, and
    only for classes whose ``C`` converges there.  An ``r`` exceeding ``rho`` by
    less than ``2^-48`` relative (a rounded input of rho) is taken as ``rho``.
    """
    if not 0 <= derivatives <= 3:
        raise ValueError("derivatives must be between 0 and 3")
    sing = singularity_data(cid)
    with mpmath.workprec(prec + 32):
        r = mpf(r)
        rho = sing.rho
        at_rho = False
        if rho != mpmath.inf and rho < r <= rho * (1 + mpf(2) ** -48):
            r = +rho
        if r < 0 or (rho != mpmath.inf and r > rho):
            raise DomainError(f"r = {mpmath.nstr(r, 10)} outside [0, rho) for {cid}")
        if rho != mpmath.inf and r == rho:
            if sing.kind != "convergent" or derivatives > 0:
                raise DomainError(f"{cid}: C or its derivatives diverge at rho")
            at_rho = True
        z = Jet.variable(r, derivatives)
        jet = _closed_form(cid, z, prec, at_rho)
        with mpmath.workprec(prec):
            return tuple(+x for x in jet.derivatives())


# -- singularity data -----------------------------------------------------------------

KINDS = (
    "convergent",
    "logarithmic",
    "inverse-sqrt",
    "simple-pole",
    "pole-plus-log",
    "polynomial-entire",
    "higher-pole",
    "essential",
)


@dataclass(frozen=True)
class SingularityData:
    rho: object
    kind: str
    constants: dict = field(default_factory=dict)


_sing_cache: dict[ClassId, SingularityData] = {}


def _compute_singularity(cid: ClassId, prec: int) -> SingularityData:
    tag = cid.tag
    with mpmath.workprec(prec):
        e = mpmath.e
        if tag in ("forests", "spoon-dbf", "two-spoon-free"):
            rho = 1 / e
            jet = _closed_form(cid, Jet.const(rho, 0), prec, at_rho=True)
            c_rho = jet.value
            return SingularityData(rho, "convergent", {"C(rho)": c_rho, "A(rho)": mpmath.exp(c_rho)})
        if tag == "diamond-bowtie-free":
            return SingularityData(1 / e, "logarithmic", {"log_coefficient": mpf(1) / 4})
        if tag == "bowtie-free":
            return SingularityData(1 / e, "inverse-sqrt", {"c": (e - mpf(5) / 4) / mpmath.sqrt(2)})
        if tag == "bounded":
            c = _bounded_counts(cid)
            k = cid.k
            consts = {"degree": k}
            if k >= 1 and c[k]:
                consts["alpha"] = (mpf(math.factorial(k - 1)) / c[k]) ** (mpf(1) / k)
                consts["beta"] = -mpf(k - 1) * c[k - 1] / (k * mpf(c[k])) if k >= 2 else mpf(0)
            return SingularityData(mpmath.inf, "polynomial-entire", consts)
        if tag == "path-forests":
            return SingularityData(mpf(1), "simple-pole", {"alpha": mpf(1) / 2, "beta": mpf(0)})
        if tag == "caterpillar-forests":
            rho = mpmath.lambertw(1).real
            alpha = (1 - rho) ** 2 / (2 * (1 + rho))
            beta = rho * (10 + 3 * rho - 4 * rho ** 2 - rho ** 3) / (4 * (1 + rho) ** 2)
            return SingularityData(rho, "simple-pole", {"alpha": alpha, "beta": beta})
        if tag == "max-degree-2":
            return SingularityData(
                mpf(1), "pole-plus-log", {"alpha": mpf(1) / 2, "beta": mpf(-3) / 4, "log_coefficient": mpf(1) / 2}
            )
        if tag == "star-ray":
            if cid.k == 2:
                return SingularityData(mpf(1), "simple-pole", {"alpha": mpf(1) / 2, "beta": mpf(0)})
            if cid.k is None:
                return SingularityData(mpf(1), "essential", {})
            return SingularityData(mpf(1), "higher-pole", {"pole_order": cid.k})
    raise ValueError(f"no singularity data for {cid}")


def singularity_data(cid: ClassId, prec: int = DEFAULT_PREC) -> SingularityData:
    key = cid
    if prec == DEFAULT_PREC and key in _sing_cache:
        return _sing_cache[key]
    data = _compute_singularity(cid, prec)
    if prec == DEFAULT_PREC:
        _sing_cache[key] = data
    return data


# -- excluded minors and membership ---------------------------------------------

def excluded_minors(cid: ClassId) -> list[LabelledGraph]:
    tag = cid.tag
    if tag == "forests":
        return [triangle()]
    if tag == "spoon-dbf":
        return [diamond(), bowtie(), spoon(cid.k)]
    if tag == "two-spoon-free":
        return [spoon(2)]
    if tag == "diamond-bowtie-free":
        return [diamond(), bowtie()]
    if tag == "bounded":
        return list(unlabelled_trees(cid.k + 1))
    if tag == "path-forests":
        return [triangle(), star_graph(3)]
    if tag == "caterpillar-forests":
        return [triangle(), spider(3, 2)]
    if tag == "max-degree-2":
        return [star_graph(3)]
    if tag == "bowtie-free":
        return [bowtie()]
    if tag == "star-ray":
        pats = [triangle(), h_tree()]
        if cid.k is not None:
            pats.append(star_graph(cid.k + 1))
        return pats
    raise ValueError(f"no excluded minors for {cid}")


def minor_membership(cid: ClassId, g: LabelledGraph) -> bool:
    """Membership by excluded-minor testing (ground truth).

    Excluded minors are connected, so each component is tested on its own; a
    component above the kernel size limit raises ``ValueError``.
    """
    patterns = [list(h.adj) for h in excluded_minors(cid)]
    for comp in g.components():
        sub = list(g.induced(comp).adj)
        if any(kernels.has_minor(sub, h) for h in patterns):
            return False
    return True


def _popcount(x: int) -> int:
    return bin(x).count("1")


def _comp_edges(g: LabelledGraph, comp: int) -> int:
    return sum(_popcount(g.adj[v] & comp) for v in range(g.n) if comp >> v & 1) // 2


def _is_forest(g: LabelledGraph) -> bool:
    return g.edge_count == g.n - len(g.components())


def _two_core(adj: list[int]) -> list[int]:
    """Neighbour masks of the 2-core (vertices outside it get mask 0)."""
    adj = list(adj)
    alive = 0
    for v in range(len(adj)):
        alive |= 1 << v
    changed = True
    while changed:
        changed = False
        for v in range(len(adj)):
            if alive >> v & 1 and _popcount(adj[v] & alive) <= 1:
                alive &= ~(1 << v)
                changed = True
    return [adj[v] & alive if alive >> v & 1 else 0 for v in range(len(adj))], alive


def _bowtie_free_core_ok(adj: list[int], comp: int) -> bool:
    verts = [v for v in range(len(adj)) if comp >> v & 1]
    deg = {v: _popcount(adj[v]) for v in verts}
    heavy = [v for v in verts if deg[v] >= 3]
    if not heavy:
        return True  # a cycle
    light = comp & ~sum(1 << v for v in heavy)
    # maximal runs of degree-2 vertices, with the heavy vertices at their two ends
    runs = []
    seen = 0
    for v in verts:
        if not light >> v & 1 or seen >> v & 1:
            continue
        run = frontier = 1 << v
        while frontier:
            nxt = 0
            for w in range(len(adj)):
                if frontier >> w & 1:
                    nxt |= adj[w]
            frontier = nxt & light & ~run
            run |= frontier
        seen |= run
        ends = []
        for w in range(len(adj)):
            if run >> w & 1:
                for x in heavy:
                    if adj[w] >> x & 1:
                        ends.append(x)
        if len(ends) != 2:
            return False
        runs.append((_popcount(run), frozenset(ends), ends[0] == ends[1]))
    if any(loop for _, _, loop in runs):
        return False
    heavy_edges = [(u, w) for u in heavy for w in heavy if u < w and adj[u] >> w & 1]
    if len(heavy) == 4:
        if any(deg[v] != 3 for v in heavy):
            return False
        if len(heavy_edges) == 6 and not runs:
            return True
        if len(heavy_edges) == 5 and len(runs) == 1:
            missing = {frozenset(p) for p in ((a, b) for i, a in enumerate(heavy) for b in heavy[i + 1 :])}
            missing -= {frozenset(e) for e in heavy_edges}
            return runs[0][1] in missing
        return False
    if len(heavy) == 2:
        u, w = heavy
        pole = frozenset((u, w))
        if any(ends != pole for _, ends, _ in runs):
            return False
        chord = bool(adj[u] >> w & 1)
        middles = sum(1 for size, _, _ in runs if size == 1)
        chains = sum(1 for size, _, _ in runs if size >= 2)
        if chains > 1:
            return False
        if chord:
            return (chains == 0 and middles >= 2) or (chains == 1 and middles >= 1)
        return (chains == 0 and middles >= 3) or (chains == 1 and middles >= 2)
    return False


def _bowtie_free(g: LabelledGraph) -> bool:
    core, alive = _two_core(list(g.adj))
    for comp in component_masks(core):
        if not alive & comp:
            continue
        if not _bowtie_free_core_ok(core, comp):
            return False
    return True


def _spoon_ok(g: LabelledGraph, k: int) -> bool:
    for comp in g.components():
        size = _popcount(comp)
        e = _comp_edges(g, comp)
        if e > size:
            return False
        if e == size:
            core, alive = _two_core([a & comp if comp >> v & 1 else 0 for v, a in enumerate(g.adj)])
            reach = frontier = alive & comp
            for _ in range(k - 1):
                nxt = 0
                for v in range(g.n):
                    if frontier >> v & 1:
                        nxt |= g.adj[v]
                frontier = nxt & ~reach
                reach |= frontier
            if reach != comp:
                return False
    return True


def _caterpillar_ok(g: LabelledGraph) -> bool:
    if not _is_forest(g):
        return False
    deg = g.degrees()
    inner = [v for v in range(g.n) if deg[v] >= 2]
    inner_mask = sum(1 << v for v in inner)
    for v in inner:
        if _popcount(g.adj[v] & inner_mask) > 2:
            return False
    return True


def structural_membership(cid: ClassId, g: LabelledGraph) -> Optional[bool]:
    """Fast structural test, or ``None`` when the class has none."""
    tag = cid.tag
    if tag == "forests":
        return _is_forest(g)
    if tag == "spoon-dbf":
        return _spoon_ok(g, cid.k)
    if tag == "diamond-bowtie-free":
        return all(_comp_edges(g, c) <= _popcount(c) for c in g.components())
    if tag == "bounded":
        return all(s <= cid.k for s in g.component_sizes())
    if tag == "path-forests":
        return _is_forest(g) and max(g.degrees(), default=0) <= 2
    if tag == "caterpillar-forests":
        return _caterpillar_ok(g)
    if tag == "max-degree-2":
        return max(g.degrees(), default=0) <= 2
    if tag == "bowtie-free":
        return _bowtie_free(g)
    if tag == "star-ray":
        if not _is_forest(g):
            return False
        deg = g.degrees()
        if cid.k is not None and max(deg, default=0) > cid.k:
            return False
        for comp in g.components():
            if sum(1 for v in range(g.n) if comp >> v & 1 and deg[v] >= 3) > 1:
                return False
        return True
    return None


def membership(cid: ClassId, g: LabelledGraph) -> bool:
    """True iff ``g`` belongs to the class (structural test when available)."""
    fast = structural_membership(cid, g)
    if fast is not None:
        return fast
    return minor_membership(cid, g)


@dataclass(frozen=True)
class ClassSpec:
    id: ClassId
    excluded_minors: tuple
    connected_builder: Callable[[int], TruncatedEGF]
    singularity: SingularityData
    membership: Callable[[LabelledGraph], bool]


def class_spec(cid: ClassId) -> ClassSpec:
    return ClassSpec(
        id=cid,
        excluded_minors=tuple(excluded_minors(cid)),
        connected_builder=lambda order: connected_egf(cid, order),
        singularity=singularity_data(cid),
        membership=lambda g: membership(cid, g),
    )
