"""Truncated exponential generating functions.

A :class:`TruncatedEGF` holds ``a_0 .. a_N`` for a series ``sum a_n z^n / n!``.
Internally the counting coefficients are kept as integers over one shared
denominator, so products and exponentials run on binomial convolutions of
Python ints; no rounding ever happens.  :class:`FloatEGF` mirrors the few
operations needed for large-order work in fixed high-precision floating point.
"""
from __future__ import annotations

import json
import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Union

import mpmath

Number = Union[int, Fraction]

DEFAULT_PRECISION_BITS = 256


@lru_cache(maxsize=None)
def _binom_row(n: int) -> tuple[int, ...]:
    if n == 0:
        return (1,)
    prev = _binom_row(n - 1)
    return (1,) + tuple(prev[k - 1] + prev[k] for k in range(1, n)) + (1,)


def _gcd_all(den: int, nums: Iterable[int]) -> int:
    g = den
    for x in nums:
        if g == 1:
            return 1
        if x:
            g = math.gcd(g, x)
    return g


class TruncatedEGF:
    """Exact truncated EGF.  Immutable.

    ``coeffs[n]`` is the EGF coefficient ``a_n / n!``; ``counts[n]`` is ``a_n``.
    """

    __slots__ = ("_num", "_den")

    def __init__(self, counts: Sequence[Number]):
        if len(counts) == 0:
            raise ValueError("a truncated series needs at least one coefficient")
        den = 1
        for c in counts:
            if isinstance(c, Fraction):
                den = den * c.denominator // math.gcd(den, c.denominator)
        nums = []
        for c in counts:
            if isinstance(c, Fraction):
                nums.append(c.numerator * (den // c.denominator))
            else:
                nums.append(int(c) * den)
        self._set(nums, den)

    def _set(self, nums: list[int], den: int) -> None:
        if den < 0:
            den, nums = -den, [-x for x in nums]
        g = _gcd_all(den, nums)
        if g != 1:
            nums = [x // g for x in nums]
            den //= g
        self._num = tuple(nums)
        self._den = den

    @classmethod
    def _raw(cls, nums: list[int], den: int) -> "TruncatedEGF":
        obj = cls.__new__(cls)
        obj._set(nums, den)
        return obj

    @classmethod
    def from_coeffs(cls, coeffs: Sequence[Number]) -> "TruncatedEGF":
        """Build from EGF coefficients ``a_n/n!``."""
        return cls([Fraction(c) * math.factorial(n) for n, c in enumerate(coeffs)])

    @classmethod
    def from_ordinary(cls, coeffs: Sequence[Number], order: int) -> "TruncatedEGF":
        """Build from ordinary power-series coefficients, padded/truncated to ``order``."""
        out = [Fraction(0)] * (order + 1)
        for n, c in enumerate(coeffs[: order + 1]):
            out[n] = Fraction(c) * math.factorial(n)
        return cls(out)

    # -- accessors ---------------------------------------------------------
    @property
    def order(self) -> int:
        return len(self._num) - 1

    @property
    def counts(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(x, self._den) for x in self._num)

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(x, self._den * math.factorial(n)) for n, x in enumerate(self._num))

    def count(self, n: int) -> Fraction:
        """Counting coefficient ``a_n`` (zero beyond the order is an error)."""
        return Fraction(self._num[n], self._den)

    def coeff(self, n: int) -> Fraction:
        return Fraction(self._num[n], self._den * math.factorial(n))

    def integer_counts(self) -> list[int]:
        if self._den != 1:
            raise ValueError("series does not have integer counting coefficients")
        return list(self._num)

    def is_integral(self) -> bool:
        return self._den == 1

    def __repr__(self) -> str:
        shown = ", ".join(str(c) for c in self.counts[:8])
        more = ", ..." if self.order >= 8 else ""
        return f"TruncatedEGF(order={self.order}, counts=[{shown}{more}])"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TruncatedEGF):
            return NotImplemented
        return self._den == other._den and self._num == other._num

    def __hash__(self) -> int:
        return hash((self._num, self._den))

    # -- arithmetic --------------------------------------------------------
    def _aligned(self, other: "TruncatedEGF") -> tuple[list[int], list[int], int]:
        n = min(self.order, other.order)
        d = self._den * other._den // math.gcd(self._den, other._den)
        s, t = d // self._den, d // other._den
        return [x * s for x in self._num[: n + 1]], [x * t for x in other._num[: n + 1]], d

    def __add__(self, other: "TruncatedEGF | Number") -> "TruncatedEGF":
        if not isinstance(other, TruncatedEGF):
            other = constant(other, self.order)
        a, b, d = self._aligned(other)
        return TruncatedEGF._raw([x + y for x, y in zip(a, b)], d)

    __radd__ = __add__

    def __neg__(self) -> "TruncatedEGF":
        return TruncatedEGF._raw([-x for x in self._num], self._den)

    def __sub__(self, other: "TruncatedEGF | Number") -> "TruncatedEGF":
        return self + (-other)

    def __rsub__(self, other: Number) -> "TruncatedEGF":
        return (-self) + other

    def scale(self, c: Number) -> "TruncatedEGF":
        c = Fraction(c)
        return TruncatedEGF._raw([x * c.numerator for x in self._num], self._den * c.denominator)

    def __mul__(self, other: "TruncatedEGF | Number") -> "TruncatedEGF":
        if not isinstance(other, TruncatedEGF):
            return self.scale(other)
        return mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other: "TruncatedEGF | Number") -> "TruncatedEGF":
        if not isinstance(other, TruncatedEGF):
            return self.scale(1 / Fraction(other))
        return mul(self, inverse(other))

    def __pow__(self, k: int) -> "TruncatedEGF":
        if k < 0:
            raise ValueError("negative powers are not supported")
        result = constant(1, self.order)
        base = self
        while k:
            if k & 1:
                result = mul(result, base)
            k >>= 1
            if k:
                base = mul(base, base)
        return result

    def truncate(self, order: int) -> "TruncatedEGF":
        if order > self.order:
            raise ValueError(f"cannot extend order {self.order} to {order}")
        return TruncatedEGF._raw(list(self._num[: order + 1]), self._den)

    def exp(self) -> "TruncatedEGF":
        return exp(self)

    def log(self) -> "TruncatedEGF":
        return log(self)

    def evaluate(self, x: Number) -> Fraction:
        """Exact value of the truncated polynomial at rational ``x``."""
        x = Fraction(x)
        total = Fraction(0)
        for c in reversed(self.coeffs):
            total = total * x + c
        return total

    def evaluate_float(self, x, prec: int = DEFAULT_PRECISION_BITS):
        with mpmath.workprec(prec):
            x = mpmath.mpf(x)
            total = mpmath.mpf(0)
            for n in range(self.order, -1, -1):
                total = total * x + mpmath.mpf(self._num[n]) / (self._den * math.factorial(n))
            return total

    # -- serialization -----------------------------------------------------
    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    def to_dict(self) -> dict:
        return {"order": self.order, "counts": [str(c) for c in self.counts]}

    @classmethod
    def from_dict(cls, data: dict) -> "TruncatedEGF":
        counts = [Fraction(c) for c in data["counts"]]
        if len(counts) != data["order"] + 1:
            raise ValueError("counts length does not match order")
        return cls(counts)

    @classmethod
    def from_json(cls, text: str) -> "TruncatedEGF":
        return cls.from_dict(json.loads(text))


# -- constructors ---------------------------------------------------------------

def zero(order: int) -> TruncatedEGF:
    return TruncatedEGF._raw([0] * (order + 1), 1)


def constant(c: Number, order: int) -> TruncatedEGF:
    c = Fraction(c)
    return TruncatedEGF._raw([c.numerator] + [0] * order, c.denominator)


def one(order: int) -> TruncatedEGF:
    return constant(1, order)


def monomial(k: int, order: int, c: Number = 1) -> TruncatedEGF:
    """The series ``c * z^k`` (ordinary coefficient ``c``)."""
    nums = [0] * (order + 1)
    c = Fraction(c)
    if k <= order:
        nums[k] = c.numerator * math.factorial(k)
    return TruncatedEGF._raw(nums, c.denominator)


def z(order: int) -> TruncatedEGF:
    return monomial(1, order)


def exp_z(order: int) -> TruncatedEGF:
    """``e^z``: every counting coefficient is 1."""
    return TruncatedEGF._raw([1] * (order + 1), 1)


def geometric(order: int) -> TruncatedEGF:
    """``1/(1-z)``: counting coefficients ``n!``."""
    return TruncatedEGF._raw([math.factorial(n) for n in range(order + 1)], 1)


# -- core operations ------------------------------------------------------------

def add(f: TruncatedEGF, g: TruncatedEGF) -> TruncatedEGF:
    """Coefficientwise sum, truncated to the smaller order."""
    return f + g


def mul(f: TruncatedEGF, g: TruncatedEGF) -> TruncatedEGF:
    """Cauchy product of the EGFs, i.e. binomial convolution of the counts."""
    order = min(f.order, g.order)
    p, q = f._num, g._num
    p_nz = [k for k in range(order + 1) if p[k]]
    out = [0] * (order + 1)
    for n in range(order + 1):
        row = _binom_row(n)
        s = 0
        for k in p_nz:
            if k > n:
                break
            qk = q[n - k]
            if qk:
                s += row[k] * p[k] * qk
        out[n] = s
    return TruncatedEGF._raw(out, f._den * g._den)


def exp(f: TruncatedEGF) -> TruncatedEGF:
    """``exp(f)`` via the recurrence ``g' = f' g`` (exact)."""
    if f._num[0] != 0:
        raise ValueError("constant term must vanish")
    N, D = f.order, f._den
    p = f._num
    pd = [0] * (N + 1)
    dpow = 1
    for k in range(1, N + 1):
        pd[k] = p[k] * dpow
        dpow *= D
    nz = [k for k in range(1, N + 1) if pd[k]]
    G = [0] * (N + 1)
    G[0] = 1
    for n in range(1, N + 1):
        row = _binom_row(n - 1)
        s = 0
        for k in nz:
            if k > n:
                break
            s += row[k - 1] * pd[k] * G[n - k]
        G[n] = s
    if D == 1:
        return TruncatedEGF._raw(G, 1)
    powers = [1] * (N + 1)
    for i in range(1, N + 1):
        powers[i] = powers[i - 1] * D
    return TruncatedEGF._raw([G[n] * powers[N - n] for n in range(N + 1)], powers[N])


def log(g: TruncatedEGF) -> TruncatedEGF:
    """Inverse of :func:`exp`; requires constant term 1."""
    E = g._den
    q = g._num
    if q[0] != E:
        raise ValueError("constant term must equal 1")
    N = g.order
    Epow = [1] * (N + 1)
    for i in range(1, N + 1):
        Epow[i] = Epow[i - 1] * E
    q_nz = [j for j in range(1, N + 1) if q[j]]
    F = [0] * (N + 1)
    for n in range(1, N + 1):
        row = _binom_row(n - 1)
        s = q[n] * Epow[n - 1]
        for j in q_nz:  # j = n - k
            k = n - j
            if k < 1:
                break
            Fk = F[k]
            if Fk:
                s -= row[k - 1] * Fk * q[j] * Epow[j - 1]
        F[n] = s
    return TruncatedEGF._raw([F[n] * Epow[N - n] for n in range(N + 1)], Epow[N])


def inverse(g: TruncatedEGF) -> TruncatedEGF:
    """Multiplicative inverse ``1/g``; requires a nonzero constant term."""
    q, E = g._num, g._den
    q0 = q[0]
    if q0 == 0:
        raise ZeroDivisionError("series with zero constant term is not invertible")
    N = g.order
    q0pow = [1] * (N + 2)
    for i in range(1, N + 2):
        q0pow[i] = q0pow[i - 1] * q0
    q_nz = [k for k in range(1, N + 1) if q[k]]
    H = [0] * (N + 1)
    H[0] = 1
    for n in range(1, N + 1):
        row = _binom_row(n)
        s = 0
        for k in q_nz:
            if k > n:
                break
            s += row[k] * q[k] * q0pow[k - 1] * H[n - k]
        H[n] = -s
    # h_n = H_n * E / q0^(n+1)
    top = q0pow[N + 1]
    return TruncatedEGF._raw([H[n] * E * q0pow[N - n] for n in range(N + 1)], top)


def compose(f: TruncatedEGF, g: TruncatedEGF) -> TruncatedEGF:
    """``f(g(z))`` by Horner's rule over series; ``g`` must have zero constant term."""
    if g._num[0] != 0:
        raise ValueError("inner series must have zero constant term")
    order = min(f.order, g.order)
    g = g.truncate(order)
    coeffs = f.coeffs[: order + 1]
    result = constant(coeffs[-1], order)
    for c in reversed(coeffs[:-1]):
        result = mul(result, g) + c
    return result


def derivative(f: TruncatedEGF, i: int = 1) -> TruncatedEGF:
    """Formal ``i``-th derivative; the order drops by ``i``."""
    if i < 0:
        raise ValueError("derivative order must be non-negative")
    if i > f.order:
        raise ValueError(f"cannot differentiate {i} times a series of order {f.order}")
    return TruncatedEGF._raw(list(f._num[i:]), f._den)


def truncate_below(f: TruncatedEGF, k: int) -> TruncatedEGF:
    """Keep the terms of degree ``< k`` (the generating function of sizes below ``k``)."""
    if k < 1:
        raise ValueError("k must be positive")
    nums = [x if n < k else 0 for n, x in enumerate(f._num)]
    return TruncatedEGF._raw(nums, f._den)


def shift_up(f: TruncatedEGF, order: int | None = None) -> TruncatedEGF:
    """``z * f(z)`` truncated to ``order`` (default: that of ``f``)."""
    order = f.order if order is None else order
    nums = [0] * (order + 1)
    for n in range(1, order + 1):
        if n - 1 <= f.order:
            nums[n] = n * f._num[n - 1]
    return TruncatedEGF._raw(nums, f._den)


def solve_tree(order: int) -> TruncatedEGF:
    """Rooted labelled trees: the power-series solution of ``T = z exp(T)``.

    Coefficients are produced one at a time: ``t_n = n [z^{n-1}] exp(T)`` only
    involves ``t_1 .. t_{n-1}``, which is the fixed point of the iteration
    ``T <- z exp(T)`` reached after ``n`` rounds.
    """
    if order < 0:
        raise ValueError("order must be non-negative")
    t = [0] * (order + 1)
    E = [0] * (order + 1)
    E[0] = 1
    for n in range(1, order + 1):
        t[n] = n * E[n - 1]
        row = _binom_row(n - 1)
        E[n] = sum(row[k - 1] * t[k] * E[n - k] for k in range(1, n + 1))
    return TruncatedEGF._raw(t, 1)


def solve_bounded_tree(k: int, order: int) -> TruncatedEGF:
    """Rooted trees of height less than ``k``: ``T_1 = z``, ``T_{j+1} = z exp(T_j)``."""
    if k < 1:
        raise ValueError("k must be at least 1")
    t = z(order)
    for _ in range(k - 1):
        if t == (nxt := shift_up(exp(t))):
            break
        t = nxt
    return t


def tree_substitute(f: TruncatedEGF) -> TruncatedEGF:
    """``f(T(z))`` with ``T`` the rooted-tree series, by Lagrange inversion.

    ``n! [z^n] f(T) = sum_{m=1}^n binom(n-1, m-1) n^(n-m) f_m`` where ``f_m``
    are counting coefficients of ``f``.
    """
    N = f.order
    p = f._num
    out = [0] * (N + 1)
    out[0] = p[0]
    nz = [m for m in range(1, N + 1) if p[m]]
    for n in range(1, N + 1):
        row = _binom_row(n - 1)
        s = 0
        for m in nz:
            if m > n:
                break
            s += row[m - 1] * n ** (n - m) * p[m]
        out[n] = s
    return TruncatedEGF._raw(out, f._den)


# -- floating backend -----------------------------------------------------------

class FloatEGF:
    """Truncated EGF with fixed-precision floating coefficients ``a_n/n!``."""

    __slots__ = ("coeffs", "prec")

    def __init__(self, coeffs: Sequence, prec: int = DEFAULT_PRECISION_BITS):
        with mpmath.workprec(prec):
            self.coeffs = tuple(mpmath.mpf(c) for c in coeffs)
        self.prec = prec

    @classmethod
    def from_exact(cls, f: TruncatedEGF, prec: int = DEFAULT_PRECISION_BITS) -> "FloatEGF":
        with mpmath.workprec(prec):
            fact = mpmath.mpf(1)
            out = []
            for n, x in enumerate(f._num):
                if n:
                    fact *= n
                out.append(mpmath.mpf(x) / (f._den * fact))
        return cls(out, prec)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, n: int):
        return self.coeffs[n]

    def __add__(self, other: "FloatEGF") -> "FloatEGF":
        with mpmath.workprec(self.prec):
            return FloatEGF([a + b for a, b in zip(self.coeffs, other.coeffs)], self.prec)

    def __mul__(self, other: "FloatEGF") -> "FloatEGF":
        n = min(self.order, other.order)
        a, b = self.coeffs, other.coeffs
        with mpmath.workprec(self.prec):
            out = [mpmath.fdot(a[: k + 1], b[k::-1]) for k in range(n + 1)]
        return FloatEGF(out, self.prec)

    def exp(self) -> "FloatEGF":
        if self.coeffs[0] != 0:
            raise ValueError("constant term must vanish")
        N = self.order
        with mpmath.workprec(self.prec + 16):
            kf = [k * c for k, c in enumerate(self.coeffs)]
            g = [mpmath.mpf(1)] + [mpmath.mpf(0)] * N
            for n in range(1, N + 1):
                g[n] = mpmath.fdot(kf[1 : n + 1], g[n - 1 :: -1]) / n
        return FloatEGF(g, self.prec)

    def truncate_below(self, k: int) -> "FloatEGF":
        return FloatEGF([c if n < k else 0 for n, c in enumerate(self.coeffs)], self.prec)
