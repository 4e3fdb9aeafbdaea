"""Exact finite-n laws of the component count N_n, root component size S_n and largest component L_n."""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import mpmath

from . import egf
from .classes import ClassId, MAX_DEGREE_TWO, all_egf, connected_egf, cyc_of
from .egf import FloatEGF

EXACT_L_THRESHOLD = 150


class ResourceRefusal(RuntimeError):
    """Exact computation refused because it would be too expensive."""


class InvariantFailure(AssertionError):
    """An internal consistency check failed (indicates a series bug)."""


@dataclass(frozen=True)
class ExactDistribution:
    """Probabilities ``probs[j] = P(X = lo + j)``.

    Exact rationals normally; high-precision floats when ``exact`` is false.
    """

    statistic: str
    lo: int
    probs: tuple
    exact: bool = True

    @property
    def hi(self) -> int:
        return self.lo + len(self.probs) - 1

    @property
    def support(self) -> tuple[int, int]:
        return (self.lo, self.hi)

    def prob(self, k: int):
        if self.lo <= k <= self.hi:
            return self.probs[k - self.lo]
        return Fraction(0) if self.exact else mpmath.mpf(0)

    def total(self):
        return sum(self.probs, Fraction(0)) if self.exact else mpmath.fsum(self.probs)

    def items(self):
        return [(self.lo + j, p) for j, p in enumerate(self.probs)]

    def expectation(self, f) -> Fraction:
        return sum((p * f(k) for k, p in self.items()), Fraction(0) if self.exact else mpmath.mpf(0))

    def mean(self):
        return self.expectation(lambda k: k)

    def factorial_moment(self, i: int, shift: int = 0):
        """``E[(X-shift)(X-shift-1)...(X-shift-i+1)]``."""
        return self.expectation(lambda k: _falling(k - shift, i))

    def to_dict(self, class_name: str = "", n: int | None = None) -> dict:
        if self.exact:
            probs = [f"{p.numerator}/{p.denominator}" for p in self.probs]
            decimals = [_decimal(p) for p in self.probs]
        else:
            probs = [mpmath.nstr(p, 30) for p in self.probs]
            decimals = [mpmath.nstr(p, 15) for p in self.probs]
        return {
            "class": class_name,
            "n": n,
            "statistic": self.statistic,
            "support": [self.lo, self.hi],
            "probs": probs,
            "decimals": decimals,
        }

    def to_json(self, class_name: str = "", n: int | None = None) -> str:
        return json.dumps(self.to_dict(class_name, n))

    @classmethod
    def from_dict(cls, data: dict) -> "ExactDistribution":
        lo, hi = data["support"]
        probs = tuple(Fraction(p) for p in data["probs"])
        if len(probs) != hi - lo + 1:
            raise ValueError("support does not match the number of probabilities")
        return cls(data["statistic"], lo, probs)

    def to_csv(self) -> str:
        lines = ["k,prob"]
        for k, p in self.items():
            lines.append(f"{k},{p}" if self.exact else f"{k},{mpmath.nstr(p, 30)}")
        return "\n".join(lines) + "\n"


def _decimal(p: Fraction) -> str:
    if p == 0:
        return "0"
    return mpmath.nstr(mpmath.mpf(p.numerator) / p.denominator, 15)


def _falling(x: int, i: int) -> int:
    out = 1
    for j in range(i):
        out *= x - j
    return out


def _a_n(cid: ClassId, n: int) -> Fraction:
    a = all_egf(cid, n).count(n)
    if a == 0:
        raise ZeroDivisionError(f"{cid} has no graph of size {n}")
    return a


def _check_n(n: int) -> None:
    if n < 1:
        raise ValueError("n must be at least 1")


def _normalized(stat: str, lo: int, probs: Sequence[Fraction]) -> ExactDistribution:
    d = ExactDistribution(stat, lo, tuple(probs))
    if d.total() != 1 or any(p < 0 for p in probs):
        raise InvariantFailure(f"{stat} distribution is not a probability vector")
    return d


# -- N_n ---------------------------------------------------------------------------

def components_dist(cid: ClassId, n: int) -> ExactDistribution:
    """``P(N_n = i) = n![z^n] C^i / (i! a_n)`` for ``i = 1..n``."""
    _check_n(n)
    C = connected_egf(cid, n)
    a = _a_n(cid, n)
    probs = []
    power = C
    for i in range(1, n + 1):
        probs.append(power.count(n) / (math.factorial(i) * a))
        if i < n:
            power = power * C
    return _normalized("N", 1, probs)


def components_moments(cid: ClassId, n: int, i: int) -> Fraction:
    """Factorial moment ``E[N_n (N_n-1) ... (N_n-i+1)] = [z^n] C^i A / [z^n] A``."""
    _check_n(n)
    if not 1 <= i <= n:
        raise ValueError("need 1 <= i <= n")
    C = connected_egf(cid, n)
    A = all_egf(cid, n)
    return (C ** i * A).count(n) / _a_n(cid, n)


def expected_components(cid: ClassId, n: int) -> Fraction:
    return components_moments(cid, n, 1)


# -- S_n ---------------------------------------------------------------------------

def root_component_prob(cid: ClassId, n: int, k: int) -> Fraction:
    """``P(S_n = k) = binom(n-1, k-1) c_k a_{n-k} / a_n``."""
    _check_n(n)
    if not 1 <= k <= n:
        return Fraction(0)
    C = connected_egf(cid, n)
    A = all_egf(cid, n)
    return math.comb(n - 1, k - 1) * C.count(k) * A.count(n - k) / A.count(n)


def root_component_dist(cid: ClassId, n: int) -> ExactDistribution:
    _check_n(n)
    C = connected_egf(cid, n)
    A = all_egf(cid, n)
    a = _a_n(cid, n)
    probs = [math.comb(n - 1, k - 1) * C.count(k) * A.count(n - k) / a for k in range(1, n + 1)]
    return _normalized("S", 1, probs)


def root_component_factorial_moment_series(cid: ClassId, n: int, i: int) -> Fraction:
    """``E[(S_n-1)...(S_n-i)] = [z^{n-i-1}] C^{(i+1)} A / (n [z^n] A)``."""
    _check_n(n)
    if not 0 <= i <= n - 1:
        raise ValueError("need 0 <= i <= n-1")
    m = n - i - 1
    C = connected_egf(cid, n)
    A = all_egf(cid, n)
    prod = egf.derivative(C, i + 1).truncate(m) * A.truncate(m)
    return prod.coeff(m) / (n * A.coeff(n))


def root_component_factorial_moment(cid: ClassId, n: int, i: int) -> Fraction:
    """Series-formula factorial moment, cross-checked against the distribution."""
    value = root_component_factorial_moment_series(cid, n, i)
    direct = root_component_dist(cid, n).factorial_moment(i, shift=1)
    if value != direct:
        raise InvariantFailure(f"root-component moment mismatch for {cid}, n={n}, i={i}")
    return value


# -- L_n ---------------------------------------------------------------------------

def largest_component_cdf(
    cid: ClassId,
    n: int,
    k: int,
    backend: str = "exact",
    prec: int = egf.DEFAULT_PRECISION_BITS,
    threshold: int = EXACT_L_THRESHOLD,
):
    """``P(L_n < k) = [z^n] exp(C^{[k]}) / [z^n] A``.

    ``backend="exact"`` returns a Fraction and is refused above ``threshold``;
    ``backend="float"`` returns an mpmath real at ``prec`` bits.
    """
    _check_n(n)
    if not 1 <= k <= n + 1:
        raise ValueError("need 1 <= k <= n+1")
    if backend not in ("exact", "float"):
        raise ValueError("backend must be 'exact' or 'float'")
    if backend == "exact" and n > threshold:
        raise ResourceRefusal(
            f"exact largest-component law refused for n={n} > {threshold}; use the float backend"
        )
    C = connected_egf(cid, n)
    a = _a_n(cid, n)
    if backend == "exact":
        if k == n + 1:
            return Fraction(1)
        return egf.exp(egf.truncate_below(C, k)).count(n) / a
    with mpmath.workprec(prec):
        if k == n + 1:
            return mpmath.mpf(1)
        f = FloatEGF.from_exact(C, prec).truncate_below(k).exp()
        a_coeff = mpmath.mpf(a.numerator) / (a.denominator * mpmath.factorial(n))
        return f.coeff(n) / a_coeff


def largest_component_dist(
    cid: ClassId,
    n: int,
    backend: str = "exact",
    prec: int = egf.DEFAULT_PRECISION_BITS,
    threshold: int = EXACT_L_THRESHOLD,
) -> ExactDistribution:
    """``P(L_n = k) = P(L_n < k+1) - P(L_n < k)`` for ``k = 1..n``."""
    cdf = [largest_component_cdf(cid, n, k, backend, prec, threshold) for k in range(1, n + 2)]
    probs = [cdf[j + 1] - cdf[j] for j in range(n)]
    if backend == "exact":
        if any(p < 0 for p in probs):
            raise InvariantFailure("negative largest-component probability")
        return _normalized("L", 1, probs)
    tol = mpmath.mpf(2) ** (-prec // 2)
    if any(p < -tol for p in probs):
        raise InvariantFailure("negative largest-component probability")
    return ExactDistribution("L", 1, tuple(probs), exact=False)


# -- max degree two ------------------------------------------------------------------

def expected_cycle_count_maxdeg2(n: int) -> Fraction:
    """Expected number of cycles in a random graph of maximum degree 2 on n vertices."""
    _check_n(n)
    A = all_egf(MAX_DEGREE_TWO, n)
    cyc = cyc_of(egf.z(n))
    return (cyc * A).count(n) / A.count(n)
