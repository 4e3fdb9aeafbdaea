"""Seedable Boltzmann samplers.

A Boltzmann sampler at parameter ``x`` returns a graph ``G`` of the class with
probability ``x^|G| / (|G|! A(x))``.  Every connected sampler builds an
unlabelled shape on distinguishable slots ``0..m-1`` whose law is proportional
to (number of labellings) * ``x^m/m!``; a uniform permutation of ``1..n``
applied to the whole graph then produces the labelled Boltzmann law.

Tree-based classes may be driven by ``t = T(x)`` in ``(0, 1]`` instead of ``x``;
trees hanging from core vertices are rooted Boltzmann trees at ``t`` (root plus
a Poisson(t) number of rooted subtrees).
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Callable, Iterator, Optional

import mpmath

from . import classes
from .classes import ClassId, UnsupportedClass
from .graphs import LabelledGraph

DEFAULT_RETRIES = 10_000
_WEIGHT_PREC = 256

UNSUPPORTED_TAGS = frozenset({"two-spoon-free"})


class SamplerError(RuntimeError):
    """The retry budget was exhausted."""


class _Overflow(Exception):
    """Internal: the shape under construction exceeded the size cap."""


# -- random primitives ------------------------------------------------------------------

def poisson(rng: random.Random, lam: float, lo: int = 0) -> int:
    """Poisson(lam) conditioned on being at least ``lo``, by sequential inversion."""
    if lam < 0:
        raise ValueError("negative Poisson mean")
    if lam == 0:
        if lo > 0:
            raise ValueError("Poisson(0) cannot be conditioned on a positive value")
        return 0
    # p_lo computed in log space so large ``lo`` or small ``lam`` cannot underflow early
    p_lo = math.exp(-lam + lo * math.log(lam) - math.lgamma(lo + 1))
    if lo == 0:
        tail = 1.0
    elif lo == 1:
        tail = -math.expm1(-lam)
    else:
        tail, p, k = 0.0, p_lo, lo
        while True:
            tail += p
            k += 1
            p *= lam / k
            if p < tail * 1e-18 and k > lam:
                break
    u = rng.random() * tail
    k, p = lo, p_lo
    while u > p:
        u -= p
        k += 1
        p *= lam / k
        if p == 0.0:  # rounding exhausted the mass: stay at the current value
            break
    return k


def geometric(rng: random.Random, q: float) -> int:
    """``Geom(q)`` with mass ``(1-q) q^k``, ``k >= 0``, as ``floor(log U / log q)``."""
    if not 0 <= q < 1:
        raise ValueError("geometric parameter must lie in [0, 1)")
    if q == 0:
        return 0
    u = 1.0 - rng.random()  # in (0, 1]
    return int(math.log(u) / math.log(q))


def _pick(rng: random.Random, weights: list[float]) -> int:
    total = math.fsum(weights)
    u = rng.random() * total
    for i, w in enumerate(weights):
        if u < w:
            return i
        u -= w
    return max(i for i, w in enumerate(weights) if w > 0)


# -- shape builder ------------------------------------------------------------------------

class _Shape:
    __slots__ = ("n", "edges", "cap")

    def __init__(self, cap: Optional[int]):
        self.n = 0
        self.edges: list[tuple[int, int]] = []
        self.cap = cap

    def vertex(self) -> int:
        if self.cap is not None and self.n >= self.cap:
            raise _Overflow
        self.n += 1
        return self.n - 1

    def edge(self, u: int, v: int) -> None:
        self.edges.append((u, v))

    def path(self, length: int) -> list[int]:
        vs = [self.vertex() for _ in range(length)]
        for a, b in zip(vs, vs[1:]):
            self.edge(a, b)
        return vs

    def to_graph(self, rng: random.Random) -> LabelledGraph:
        perm = list(range(1, self.n + 1))
        rng.shuffle(perm)
        return LabelledGraph(self.n, ((perm[u], perm[v]) for u, v in self.edges))


def _hang_trees(s: _Shape, rng: random.Random, roots, t: float) -> None:
    """Turn each vertex of ``roots`` into the root of a rooted Boltzmann tree at ``t``."""
    stack = list(roots)
    while stack:
        v = stack.pop()
        for _ in range(poisson(rng, t)):
            w = s.vertex()
            s.edge(v, w)
            stack.append(w)


def _bounded_tree(s: _Shape, rng: random.Random, levels: list[float], height: int) -> int:
    """Rooted tree of height below ``height``; ``levels[j] = T_j(x)`` with ``T_1 = x``."""
    root = s.vertex()
    stack = [(root, height)]
    while stack:
        v, h = stack.pop()
        if h <= 1:
            continue
        for _ in range(poisson(rng, levels[h - 1])):
            w = s.vertex()
            s.edge(v, w)
            stack.append((w, h - 1))
    return root


def _cycle_size(rng: random.Random, q: float, total: float) -> int:
    """Size ``m >= 3`` with mass ``q^m / m`` normalised by ``total``."""
    u = rng.random() * total
    m = 3
    p = q ** 3 / 3
    while u > p:
        u -= p
        m += 1
        p = q ** m / m
        if p == 0.0:
            break
    return m


def _cycle_on(s: _Shape, vs: list[int]) -> None:
    for a, b in zip(vs, vs[1:] + vs[:1]):
        s.edge(a, b)


# -- weights -------------------------------------------------------------------------------

def _mp(f: Callable, *args) -> float:
    with mpmath.workprec(_WEIGHT_PREC):
        return float(f(*[mpmath.mpf(a) for a in args]))


def _cyc_total(q: float) -> float:
    """``sum_{m>=3} q^m/m`` (twice the cycle series)."""
    return _mp(lambda u: -mpmath.log(1 - u) - u - u * u / 2, q)


def _tree_weight(t: float) -> float:
    return t - t * t / 2


def _path_weight(x: float) -> float:
    return x + x * x / (2 * (1 - x))


def tree_parameter(x: float) -> float:
    """``T(x)`` for ``0 < x <= 1/e``."""
    return float(classes.tree_value(mpmath.mpf(x), 64))


# -- component samplers on a shape ------------------------------------------------------------

def _rooted_tree(s: _Shape, rng: random.Random, t: float) -> int:
    root = s.vertex()
    _hang_trees(s, rng, [root], t)
    return root


def _unrooted_tree(s: _Shape, rng: random.Random, t: float) -> None:
    c = _tree_weight(t)
    u = rng.random()
    t_prime = 1 - math.sqrt(max(0.0, 1 - 2 * u * c))
    _rooted_tree(s, rng, t_prime)


def _path(s: _Shape, rng: random.Random, x: float) -> None:
    if rng.random() < x / _path_weight(x):
        s.vertex()
    else:
        s.path(2 + geometric(rng, x))


def _rooted_star(s: _Shape, rng: random.Random, x: float, min_leaves: int = 0) -> int:
    centre = s.vertex()
    for _ in range(poisson(rng, x, min_leaves)):
        s.edge(centre, s.vertex())
    return centre


def _unrooted_star(s: _Shape, rng: random.Random, x: float) -> None:
    while True:
        leaves = poisson(rng, x)
        if leaves != 1 or rng.random() < 0.5:
            break
    centre = s.vertex()
    for _ in range(leaves):
        s.edge(centre, s.vertex())


class _Connected:
    """Connected sampler for one class at one parameter: branch weights and branches."""

    def __init__(self, cid: ClassId, x: float, t: Optional[float]):
        self.cid = cid
        self.x = x
        self.t = t
        self.branches: list[tuple[str, float, Callable[[_Shape, random.Random], None]]] = []
        getattr(self, "_setup_" + cid.tag.replace("-", "_"))()
        self.weights = [w for _, w, _ in self.branches]
        self.total = math.fsum(self.weights)

    def sample(self, s: _Shape, rng: random.Random) -> None:
        self.branches[_pick(rng, self.weights)][2](s, rng)

    def _add(self, name: str, weight: float, fn) -> None:
        if weight > 0 and math.isfinite(weight):
            self.branches.append((name, weight, fn))
        elif not weight >= 0:
            raise ValueError(f"branch {name} has weight {weight} at this parameter")

    # tree-based ---------------------------------------------------------------
    def _trees(self) -> None:
        t = self.t
        self._add("tree", _tree_weight(t), lambda s, rng: _unrooted_tree(s, rng, t))

    def _setup_forests(self) -> None:
        self._trees()

    def _add_tree_cycle(self, q: float, hang) -> None:
        total = _cyc_total(q)

        def branch(s, rng):
            m = _cycle_size(rng, q, total)
            vs = [s.vertex() for _ in range(m)]
            _cycle_on(s, vs)
            hang(s, rng, vs)

        self._add("cycle", total / 2, branch)

    def _setup_diamond_bowtie_free(self) -> None:
        t = self.t
        self._trees()
        self._add_tree_cycle(t, lambda s, rng, vs: _hang_trees(s, rng, vs, t))

    def _setup_spoon_dbf(self) -> None:
        k = self.cid.k
        levels = [0.0, self.x]
        for _ in range(k - 1):
            levels.append(self.x * math.exp(levels[-1]))
        self._trees()

        def hang(s, rng, vs):
            for v in vs:
                # the cycle vertex is the root; grow its subtrees below it
                for _ in range(poisson(rng, levels[k - 1]) if k > 1 else 0):
                    w = _bounded_tree(s, rng, levels, k - 1)
                    s.edge(v, w)

        self._add_tree_cycle(levels[k], hang)

    def _setup_bowtie_free(self) -> None:
        t = self.t
        self._trees()
        self._add_tree_cycle(t, lambda s, rng, vs: _hang_trees(s, rng, vs, t))
        em1 = _mp(mpmath.expm1, t)
        em1z = _mp(lambda u: mpmath.expm1(u) - u, t)
        em1zz = _mp(lambda u: mpmath.expm1(u) - u - u * u / 2, t)
        chain = t * t / (1 - t)

        def finish(s, rng, vs):
            _hang_trees(s, rng, vs, t)

        def k4(s, rng):
            vs = [s.vertex() for _ in range(4)]
            for i in range(4):
                for j in range(i + 1, 4):
                    s.edge(vs[i], vs[j])
            finish(s, rng, vs)

        def k4_subdivided(s, rng):
            vs = [s.vertex() for _ in range(4)]
            pairs = [(i, j) for i in range(4) for j in range(i + 1, 4)]
            a, b = pairs[rng.randrange(6)]
            for i, j in pairs:
                if (i, j) != (a, b):
                    s.edge(vs[i], vs[j])
            inner = s.path(1 + geometric(rng, t))
            s.edge(vs[a], inner[0])
            s.edge(inner[-1], vs[b])
            finish(s, rng, vs + inner)

        def book(chord: bool, min_common: int, with_chain: bool):
            def branch(s, rng):
                a, b = s.vertex(), s.vertex()
                vs = [a, b]
                if chord:
                    s.edge(a, b)
                for _ in range(poisson(rng, t, min_common)):
                    w = s.vertex()
                    s.edge(a, w)
                    s.edge(w, b)
                    vs.append(w)
                if with_chain:
                    inner = s.path(2 + geometric(rng, t))
                    s.edge(a, inner[0])
                    s.edge(inner[-1], b)
                    vs += inner
                finish(s, rng, vs)

            return branch

        half_t2 = t * t / 2
        self._add("K4", t ** 4 / 24, k4)
        self._add("K4-subdivided", t ** 5 / (4 * (1 - t)), k4_subdivided)
        self._add("chord-4", half_t2 * em1z, book(True, 2, False))
        self._add("chord-long", half_t2 * em1 * chain, book(True, 1, True))
        self._add("chordless-4", half_t2 * em1zz, book(False, 3, False))
        self._add("chordless-long", half_t2 * em1z * chain, book(False, 2, True))

    # x-based ------------------------------------------------------------------
    def _setup_path_forests(self) -> None:
        x = self.x
        self._add("path", _path_weight(x), lambda s, rng: _path(s, rng, x))

    def _setup_max_degree_2(self) -> None:
        x = self.x
        self._add("path", _path_weight(x), lambda s, rng: _path(s, rng, x))
        total = _cyc_total(x)

        def cycle(s, rng):
            vs = [s.vertex() for _ in range(_cycle_size(rng, x, total))]
            _cycle_on(s, vs)

        self._add("cycle", total / 2, cycle)

    def _setup_caterpillar_forests(self) -> None:
        x = self.x
        ex = _mp(mpmath.exp, x)
        em1 = _mp(mpmath.expm1, x)
        spine = x * ex
        self._add("star", x * ex - x * x / 2, lambda s, rng: _unrooted_star(s, rng, x))

        def chain(s, rng):
            roots = [_rooted_star(s, rng, x, 1)]
            for _ in range(geometric(rng, spine)):
                roots.append(_rooted_star(s, rng, x))
            roots.append(_rooted_star(s, rng, x, 1))
            for a, b in zip(roots, roots[1:]):
                s.edge(a, b)

        self._add("chain", x * x * em1 * em1 / (2 * (1 - spine)), chain)

    def _setup_star_ray(self) -> None:
        x = self.x
        y = x / (1 - x)
        self._add("path", _path_weight(x), lambda s, rng: _path(s, rng, x))

        def spider(rays: Callable[[random.Random], int]):
            def branch(s, rng):
                centre = s.vertex()
                for _ in range(rays(rng)):
                    ray = s.path(1 + geometric(rng, x))
                    s.edge(centre, ray[0])

            return branch

        k = self.cid.k
        if k is None:
            w = x * _mp(lambda u: mpmath.expm1(u) - u - u * u / 2, y)
            self._add("spider", w, spider(lambda rng: poisson(rng, y, 3)))
        else:
            for i in range(3, k + 1):
                self._add(f"spider-{i}", x * y ** i / math.factorial(i), spider(lambda rng, i=i: i))

    def _setup_bounded(self) -> None:
        x = self.x
        counts = classes.CONNECTED_COUNTS
        for m in range(1, self.cid.k + 1):
            self._add(f"size-{m}", counts[m] * x ** m / math.factorial(m),
                      lambda s, rng, m=m: _uniform_connected(s, rng, m))


def _uniform_connected(s: _Shape, rng: random.Random, m: int) -> None:
    """Uniform connected labelled graph on ``m`` slots, by rejection from G(m, 1/2)."""
    pairs = [(i, j) for i in range(m) for j in range(i + 1, m)]
    while True:
        bits = rng.getrandbits(len(pairs)) if pairs else 0
        adj = [0] * m
        for b, (i, j) in enumerate(pairs):
            if bits >> b & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
        seen, frontier = 1, 1
        while frontier:
            nxt = 0
            for v in range(m):
                if frontier >> v & 1:
                    nxt |= adj[v]
            frontier = nxt & ~seen
            seen |= nxt
        if seen == (1 << m) - 1:
            break
    vs = [s.vertex() for _ in range(m)]
    for b, (i, j) in enumerate(pairs):
        if bits >> b & 1:
            s.edge(vs[i], vs[j])


# -- configuration ------------------------------------------------------------------------------

def _check_supported(cid: ClassId) -> None:
    if cid.tag in UNSUPPORTED_TAGS:
        raise UnsupportedClass(f"no sampler for {cid}: random members are almost always forests")
    if cid.tag == "bounded" and cid.counts is not None and tuple(cid.counts) != classes.CONNECTED_COUNTS[: cid.k + 1]:
        raise UnsupportedClass("the sampler only knows the class of all graphs with bounded components")
    if cid.tag == "bounded" and cid.k >= len(classes.CONNECTED_COUNTS):
        raise UnsupportedClass("bounded components sampler supports k <= 6")


def supported(cid: ClassId) -> bool:
    try:
        _check_supported(cid)
    except UnsupportedClass:
        return False
    return True


@dataclass(frozen=True)
class SamplerConfig:
    """Sampler parameters; give exactly one of ``x`` and ``t`` (``t`` for tree-based classes)."""

    cls: ClassId
    x: Optional[float] = None
    t: Optional[float] = None
    seed: int = 0
    max_size: Optional[int] = None
    size_window: Optional[tuple[int, int]] = None
    pointed: bool = False
    retries: int = DEFAULT_RETRIES

    def __post_init__(self):
        _check_supported(self.cls)
        if (self.x is None) == (self.t is None):
            raise ValueError("give exactly one of x and t")
        rho = float(classes.singularity_data(self.cls).rho)
        tree_based = self.cls.tree_based
        if self.t is not None:
            if not tree_based:
                raise ValueError(f"{self.cls} is not tree-based: use x")
            if not 0 < self.t <= 1:
                raise ValueError("t must lie in (0, 1]")
            if self.t == 1:
                if self.cls.tag not in ("forests", "spoon-dbf"):
                    raise ValueError(f"C diverges at t = 1 for {self.cls}")
                if self.max_size is None:
                    raise ValueError("t = 1 is critical: max_size is mandatory")
        else:
            if not self.x > 0:
                raise ValueError("x must be positive")
            if tree_based:
                if self.x > rho or (self.x == rho and self.cls.tag not in ("forests", "spoon-dbf")):
                    raise ValueError(f"x must lie in (0, {rho}) for {self.cls}")
                if self.x == rho and self.max_size is None:
                    raise ValueError("x = rho is critical: max_size is mandatory")
            elif not self.x < rho:
                raise ValueError(f"x must lie in (0, {rho}) for {self.cls}")
        if self.max_size is not None and self.max_size < 1:
            raise ValueError("max_size must be at least 1")
        if self.size_window is not None:
            lo, hi = self.size_window
            if not 0 <= lo <= hi:
                raise ValueError("size window must satisfy 0 <= lo <= hi")
        if self.pointed and self.cls.tag != "forests":
            raise ValueError("the pointed variant is only available for forests")
        if self.retries < 1:
            raise ValueError("retries must be positive")
        if not 0 <= self.seed < 2 ** 64:
            raise ValueError("seed must be a 64-bit unsigned integer")

    @property
    def parameters(self) -> tuple[float, Optional[float]]:
        """``(x, t)`` with ``t = T(x)`` for tree-based classes."""
        if self.t is not None:
            return self.t * math.exp(-self.t), self.t
        if self.cls.tree_based:
            return self.x, tree_parameter(self.x)
        return self.x, None


class BoltzmannSampler:
    """Owns one RNG stream; not to be shared between threads."""

    def __init__(self, config: SamplerConfig):
        self.config = config
        self.x, self.t = config.parameters
        self.rng = random.Random(config.seed)
        self.connected = _Connected(config.cls, self.x, self.t)
        self.mean_components = self.connected.total
        window = config.size_window
        caps = [c for c in (config.max_size, window[1] if window else None) if c is not None]
        self.cap = min(caps) if caps else None

    def _attempt(self) -> LabelledGraph:
        s = _Shape(self.cap)
        rng = self.rng
        if self.config.pointed:
            _rooted_tree(s, rng, self.t)
        for _ in range(poisson(rng, self.mean_components)):
            self.connected.sample(s, rng)
        return s.to_graph(rng)

    def sample(self) -> LabelledGraph:
        window = self.config.size_window
        for _ in range(self.config.retries):
            try:
                g = self._attempt()
            except _Overflow:
                continue
            if window is None or window[0] <= g.n <= window[1]:
                return g
        raise SamplerError(
            f"retry budget of {self.config.retries} exhausted for {self.config.cls} "
            f"(x={self.x}, cap={self.cap}, window={window})"
        )

    def samples(self, count: int) -> Iterator[LabelledGraph]:
        for _ in range(count):
            yield self.sample()


def sample_graphs(cid: ClassId, count: int, x: Optional[float] = None, t: Optional[float] = None,
                  seed: int = 0, **kwargs) -> list[LabelledGraph]:
    return list(BoltzmannSampler(SamplerConfig(cid, x=x, t=t, seed=seed, **kwargs)).samples(count))


# -- single-structure entry points ----------------------------------------------------------------

def _run(build, rng: random.Random, max_size: Optional[int] = None,
         retries: int = DEFAULT_RETRIES) -> LabelledGraph:
    for _ in range(retries):
        s = _Shape(max_size)
        try:
            build(s)
        except _Overflow:
            continue
        return s.to_graph(rng)
    raise SamplerError(f"retry budget of {retries} exhausted (max_size={max_size})")


def sample_rooted_tree(t: float, rng: random.Random, max_size: Optional[int] = None,
                       retries: int = DEFAULT_RETRIES) -> tuple[LabelledGraph, int]:
    """Rooted Boltzmann tree at ``t = T(x)``; returns ``(tree, root label)``."""
    if not 0 < t <= 1:
        raise ValueError("t must lie in (0, 1]")
    if t == 1 and max_size is None:
        raise ValueError("t = 1 is critical: max_size is mandatory")
    for _ in range(retries):
        s = _Shape(max_size)
        try:
            _rooted_tree(s, rng, t)
        except _Overflow:
            continue
        perm = list(range(1, s.n + 1))
        rng.shuffle(perm)
        return LabelledGraph(s.n, ((perm[u], perm[v]) for u, v in s.edges)), perm[0]
    raise SamplerError(f"retry budget of {retries} exhausted (max_size={max_size})")


def sample_unrooted_tree(x: float, rng: random.Random, max_size: Optional[int] = None) -> LabelledGraph:
    if not 0 < x <= math.exp(-1):
        raise ValueError("x must lie in (0, 1/e]")
    t = tree_parameter(x)
    return _run(lambda s: _unrooted_tree(s, rng, t), rng, max_size)


def sample_path(x: float, rng: random.Random) -> LabelledGraph:
    if not 0 < x < 1:
        raise ValueError("x must lie in (0, 1)")
    return _run(lambda s: _path(s, rng, x), rng)


def sample_cycle(x: float, rng: random.Random) -> LabelledGraph:
    if not 0 < x < 1:
        raise ValueError("x must lie in (0, 1)")
    total = _cyc_total(x)
    return _run(lambda s: _cycle_on(s, [s.vertex() for _ in range(_cycle_size(rng, x, total))]), rng)


def sample_rooted_star(x: float, rng: random.Random) -> tuple[LabelledGraph, int]:
    if not x > 0:
        raise ValueError("x must be positive")
    s = _Shape(None)
    _rooted_star(s, rng, x)
    perm = list(range(1, s.n + 1))
    rng.shuffle(perm)
    return LabelledGraph(s.n, ((perm[u], perm[v]) for u, v in s.edges)), perm[0]


def sample_star(x: float, rng: random.Random) -> LabelledGraph:
    if not x > 0:
        raise ValueError("x must be positive")
    return _run(lambda s: _unrooted_star(s, rng, x), rng)


def sample_class_connected(cid: ClassId, x: float, rng: random.Random,
                           max_size: Optional[int] = None) -> LabelledGraph:
    """One connected Boltzmann component of the class at ``x``."""
    cfg = SamplerConfig(cid, x=x, max_size=max_size)
    conn = _Connected(cid, *cfg.parameters)
    return _run(lambda s: conn.sample(s, rng), rng, max_size)


def sample_caterpillar(x: float, rng: random.Random) -> LabelledGraph:
    return sample_class_connected(classes.CATERPILLAR_FORESTS, x, rng)


def sample_bowtie_free_connected(x: float, rng: random.Random) -> LabelledGraph:
    return sample_class_connected(classes.BOWTIE_FREE, x, rng)


def sample_components(cid: ClassId, x: float, rng: random.Random,
                      max_size: Optional[int] = None) -> LabelledGraph:
    """Set construction: Poisson(C(x)) independent components, labels shuffled jointly."""
    cfg = SamplerConfig(cid, x=x, max_size=max_size)
    conn = _Connected(cid, *cfg.parameters)

    def build(s):
        for _ in range(poisson(rng, conn.total)):
            conn.sample(s, rng)

    return _run(build, rng, max_size)


def branch_weights(cid: ClassId, x: Optional[float] = None, t: Optional[float] = None) -> dict[str, float]:
    """Branch weights of the connected sampler; they sum to ``C(x)``."""
    cfg = SamplerConfig(cid, x=x, t=t, max_size=1 if t == 1 else None)
    return {name: w for name, w, _ in _Connected(cid, *cfg.parameters).branches}


# -- theory ---------------------------------------------------------------------------------------

def size_law(cid: ClassId, x: float, nmax: int, connected: bool = False) -> list[float]:
    """``P(|G| = n)`` for ``n = 0..nmax`` under the Boltzmann law at ``x``, from exact counts."""
    with mpmath.workprec(_WEIGHT_PREC):
        xm = mpmath.mpf(x)
        c_x = classes.eval_analytic(cid, xm)[0]
        series = classes.connected_egf(cid, nmax) if connected else classes.all_egf(cid, nmax)
        norm = c_x if connected else mpmath.exp(c_x)
        out = []
        for n in range(nmax + 1):
            coeff = series.coeff(n)
            out.append(float(mpmath.mpf(coeff.numerator) / coeff.denominator * xm ** n / norm))
        return out


def parameter_for_mean(cid: ClassId, mean: float = 8.0) -> dict:
    """Parameter giving expected size ``mean`` (``x C'(x) = mean``), as ``{"x": ...}`` or ``{"t": ...}``.

    Classes whose expected size stays below ``mean`` up to the singularity get
    ``t = 0.9`` (tree-based) instead.
    """
    rho = classes.singularity_data(cid).rho
    with mpmath.workprec(64):
        def mean_at(r):
            _, d1 = classes.eval_analytic(cid, r, 1, 64)
            return r * d1

        if cid.tag in ("forests", "spoon-dbf"):
            return {"t": 0.9}
        lo = mpmath.mpf(0)
        hi = mpmath.mpf(rho) if mpmath.isfinite(rho) else mpmath.mpf(1)
        if not mpmath.isfinite(rho):
            while mean_at(hi) < mean:
                hi *= 2
        for _ in range(80):
            mid = (lo + hi) / 2
            if mean_at(mid) < mean:
                lo = mid
            else:
                hi = mid
        return {"x": float(lo)}
