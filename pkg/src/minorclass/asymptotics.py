"""Saddle-point estimates, closed-form asymptotics, limit laws and admissibility diagnostics."""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import mpmath
import numpy as np
from mpmath import mpf

from .classes import (
    DEFAULT_PREC,
    PATH_FORESTS,
    ClassId,
    DomainError,
    UnsupportedClass,
    eval_analytic,
    singularity_data,
)


@dataclass(frozen=True)
class SaddleEstimate:
    n: int
    zeta: object
    b_at_zeta: object
    a_of_zeta: object  # log A(zeta) = C(zeta)
    estimate_log: object
    precision_bits: int

    @property
    def estimate(self):
        with mpmath.workprec(self.precision_bits):
            return mpmath.exp(self.estimate_log)


def _g(cid: ClassId, r, prec: int):
    c, c1, c2 = eval_analytic(cid, r, 2, prec)
    return c, r * c1, r * c1 + r * r * c2


def saddle_point(cid: ClassId, n: int, precision_bits: int = DEFAULT_PREC) -> SaddleEstimate:
    """Solve ``zeta C'(zeta) = n`` and assemble the saddle-point coefficient estimate."""
    if n < 1:
        raise ValueError("n must be at least 1")
    sing = singularity_data(cid)
    if sing.kind == "convergent":
        raise UnsupportedClass(f"{cid}: C converges at its singularity, so zeta C'(zeta) = n has no root for large n")
    prec = precision_bits
    with mpmath.workprec(prec + 32):
        lo = mpf(0)
        if sing.rho == mpmath.inf:
            hi = mpf(1)
            while _g(cid, hi, prec)[1] < n:
                lo, hi = hi, hi * 2
        else:
            hi = mpf(sing.rho)
        # bisection to about ten correct bits
        while (hi - lo) > hi * mpf(2) ** -10:
            mid = (lo + hi) / 2
            if _g(cid, mid, prec)[1] < n:
                lo = mid
            else:
                hi = mid
        r = (lo + hi) / 2
        tol = mpf(2) ** (-(prec // 2) - 8)
        for _ in range(200):
            _, a, b = _g(cid, r, prec)
            resid = a - n
            if abs(resid) < tol * n:
                break
            if resid < 0:
                lo = r
            else:
                hi = r
            step = resid * r / b  # d(rC')/dr = b / r
            nr = r - step
            if not lo < nr < hi:
                nr = (lo + hi) / 2
            r = nr
        else:
            raise ArithmeticError(f"saddle point iteration did not converge for {cid}, n={n}")
        c, a, b = _g(cid, r, prec)
        est = c - n * mpmath.log(r) - mpmath.log(2 * mpmath.pi * b) / 2
    with mpmath.workprec(prec):
        return SaddleEstimate(n, +r, +b, +c, +est, prec)


def hayman_estimate(cid: ClassId, n: int, precision_bits: int = DEFAULT_PREC):
    """Saddle-point estimate of ``a_n / n!``."""
    return saddle_point(cid, n, precision_bits).estimate


def closed_form_asymptotic(cid: ClassId, n: int, connected: bool = False, prec: int = DEFAULT_PREC):
    """Leading-order prediction of ``a_n/n!`` (or ``c_n/n!`` with ``connected=True``)."""
    if n < 1:
        raise ValueError("n must be at least 1")
    sing = singularity_data(cid)
    tag = cid.tag
    with mpmath.workprec(prec):
        n_ = mpf(n)
        e = mpmath.e
        pi = mpmath.pi
        if sing.kind == "convergent":
            c_n = mpmath.exp(n_) / (mpmath.sqrt(2 * pi) * n_ ** mpf(2.5))
            return c_n if connected else sing.constants["A(rho)"] * c_n
        if tag == "diamond-bowtie-free":
            if connected:
                return mpmath.exp(n_) / (4 * n_)
            return mpmath.exp(n_) / ((2 * e) ** mpf(0.25) * mpmath.gamma(mpf(0.25)) * n_ ** mpf(0.75))
        if tag == "bowtie-free":
            k = e - mpf(5) / 4
            if connected:
                return k / mpmath.sqrt(2 * pi) * mpmath.exp(n_) / mpmath.sqrt(n_)
            pre = k ** (mpf(1) / 6) * mpmath.exp(mpf(19) / 8 - 11 * e / 3) / mpmath.sqrt(6 * pi)
            return pre * mpmath.exp(n_) / n_ ** (mpf(2) / 3) * mpmath.exp(mpf(1.5) * k ** (mpf(2) / 3) * n_ ** (mpf(1) / 3))
        if sing.kind == "polynomial-entire":
            if connected:
                raise UnsupportedClass("connected counts of bounded components vanish beyond k")
            s = saddle_point(cid, n, prec)
            k = cid.k
            return mpmath.exp(s.a_of_zeta) / (s.zeta ** n * mpmath.sqrt(2 * pi * k * n_))
        if sing.kind == "simple-pole":
            alpha, beta, rho = sing.constants["alpha"], sing.constants["beta"], sing.rho
            if connected:
                return alpha * rho ** (-n_)
            return (
                alpha ** mpf(0.25)
                * mpmath.exp(alpha / 2 + beta)
                / (2 * mpmath.sqrt(pi) * n_ ** mpf(0.75))
                * rho ** (-n_)
                * mpmath.exp(2 * mpmath.sqrt(alpha * n_))
            )
        if tag == "max-degree-2":
            if connected:
                return mpf(1) / 2 + 1 / (2 * n_)
            return mpmath.exp(mpmath.sqrt(2 * n_)) / (2 * mpmath.sqrt(e * pi) * mpmath.sqrt(n_))
    raise UnsupportedClass(f"no closed-form asymptotic formula for {cid}")


def connectivity_limit(cid: ClassId):
    """Limit of the probability that a random member is connected.

    A number for classes where ``C`` converges at its singularity, otherwise
    ``("zero", speed)`` with a description of the decay.
    """
    sing = singularity_data(cid)
    if sing.kind == "convergent":
        return 1 / sing.constants["A(rho)"]
    speeds = {
        "logarithmic": "n^(-1/4)",
        "inverse-sqrt": "exp(-(3/2)(e-5/4)^(2/3) n^(1/3)) up to polynomial factors",
        "simple-pole": "exp(-2 sqrt(alpha n)) up to polynomial factors",
        "pole-plus-log": "exp(-sqrt(2n)) up to polynomial factors",
        "polynomial-entire": "eventually exactly 0 (no connected member beyond size k)",
        "higher-pole": "stretched-exponential, exp(-Theta(n^(k/(k+1))))",
        "essential": "faster than any stretched exponential of exponent below 1",
    }
    return ("zero", speeds[sing.kind])


def component_count_asymptotics(cid: ClassId, n: int, prec: int = DEFAULT_PREC):
    """Predicted ``(mean, variance)`` of the number of components ``N_n``."""
    sing = singularity_data(cid)
    with mpmath.workprec(prec):
        if sing.kind == "convergent":
            c = sing.constants["C(rho)"]
            return (1 + c, c)
        if sing.kind == "logarithmic":
            m = mpmath.log(n) / 4
            return (m, m)
        s = saddle_point(cid, n, prec)
        c = s.a_of_zeta
        return (c, c - mpf(n) ** 2 / s.b_at_zeta)


# -- limit laws ---------------------------------------------------------------------

LAWS = ("beta(1,1/4)", "gamma(2,1)", "gamma(3/2,1)")


def limit_density(law: str, x: float) -> float:
    if law == "beta(1,1/4)":
        if not 0 <= x < 1:
            raise DomainError("beta(1,1/4) density is defined on [0, 1)")
        return (1 - x) ** -0.75 / 4
    if law == "gamma(2,1)":
        if x < 0:
            raise DomainError("gamma density is defined on [0, inf)")
        return x * math.exp(-x)
    if law == "gamma(3/2,1)":
        if x < 0:
            raise DomainError("gamma density is defined on [0, inf)")
        return 2 * math.sqrt(x / math.pi) * math.exp(-x)
    raise ValueError(f"unknown law {law!r}; expected one of {LAWS}")


def gumbel_largest_cdf(x: float) -> float:
    """Limit of ``P(L_n < sqrt(n/2)(log n + x))`` for path forests."""
    return math.exp(-math.exp(-x / 2) / math.sqrt(2))


def gumbel_k(n: int, x: float) -> int:
    return math.floor(math.sqrt(n / 2) * (math.log(n) + x))


def gumbel_comparison(n: int, x: float, prec: int = DEFAULT_PREC) -> tuple[int, float, float]:
    """``(k, P(L_n < k), limit)`` for path forests, computed with the float backend."""
    from .dist import largest_component_cdf

    k = gumbel_k(n, x)
    k = max(1, min(k, n + 1))
    p = largest_component_cdf(PATH_FORESTS, n, k, backend="float", prec=prec)
    return k, float(p), gumbel_largest_cdf(x)


def pd_rho(x: float, step: float = 1e-3) -> float:
    """Solution of ``x^(1/4) rho'(x) + (1/4)(x-1)^(-3/4) rho(x-1) = 0`` with ``rho = 1`` on ``[0, 1]``.

    Method of steps: on ``[m, m+1]`` write ``s = m + u^4``, which removes the
    singular factor at ``s = 1`` and puts ``rho(s-1)`` on the same ``u`` grid as
    the previous interval.  Trapezoid rule in ``u`` with mesh ``step``.
    """
    if step <= 0:
        raise ValueError("step must be positive")
    if x < 0:
        raise DomainError("pd_rho is defined for x >= 0")
    if x <= 1:
        return 1.0
    npts = max(2, int(math.ceil(1 / step)))
    u = np.linspace(0.0, 1.0, npts + 1)
    u4 = u ** 4
    prev = np.ones_like(u)  # rho on [m-1, m] at s = m-1 + u^4
    start = 1.0  # rho(m)
    m = 1
    while True:
        if m == 1:
            f = (1 + u4) ** -0.25 * prev
        else:
            f = u ** 3 * (m - 1 + u4) ** -0.75 * (m + u4) ** -0.25 * prev
        cum = np.concatenate(([0.0], np.cumsum((f[1:] + f[:-1]) * (u[1] - u[0]) / 2)))
        values = start - cum
        if x <= m + 1:
            v = (x - m) ** 0.25
            return float(np.interp(v, u, values))
        prev = values
        start = float(values[-1])
        m += 1


# -- admissibility diagnostics -------------------------------------------------------------

@dataclass
class AdmissibilityReport:
    class_name: str
    r: list = field(default_factory=list)
    a: list = field(default_factory=list)
    b: list = field(default_factory=list)
    V: list = field(default_factory=list)
    C_over_V32: list = field(default_factory=list)
    b_pow: list = field(default_factory=list)
    verdicts: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        s = lambda xs: [mpmath.nstr(x, 17) for x in xs]  # noqa: E731
        return {
            "class": self.class_name,
            "r": s(self.r),
            "a": s(self.a),
            "b": s(self.b),
            "V": s(self.V),
            "C_over_V^(3/2)": s(self.C_over_V32),
            "b^(1/sqrt(V))": s(self.b_pow),
            "verdicts": self.verdicts,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def trend(values) -> str:
    """Crude verdict on the tail of a sequence: diverges, vanishes or bounded."""
    tail = [float(v) for v in values[len(values) // 2 :]]
    if len(tail) < 2:
        return "bounded"
    increasing = all(b >= a for a, b in zip(tail, tail[1:]))
    decreasing = all(b <= a for a, b in zip(tail, tail[1:]))
    first, last = abs(float(values[0])), abs(tail[-1])
    if increasing and last > 10 * max(first, 1e-300) and last > 10:
        return "diverges"
    if decreasing and last < first / 10:
        return "vanishes"
    return "bounded"


def admissibility_diagnostics(cid: ClassId, grid_size: int = 20, prec: int = DEFAULT_PREC) -> AdmissibilityReport:
    """Tabulate a, b, V, C/V^(3/2), b^(1/sqrt V) on ``r = rho (1 - 2^-j)``."""
    sing = singularity_data(cid)
    if sing.kind == "convergent":
        raise UnsupportedClass(f"{cid}: C converges at rho; the conditions concern divergent C")
    if sing.rho == mpmath.inf:
        raise UnsupportedClass(f"{cid}: polynomial C (rho = infinity) is covered by the polynomial-class analysis")
    rep = AdmissibilityReport(str(cid))
    with mpmath.workprec(prec):
        for j in range(1, grid_size + 1):
            r = sing.rho * (1 - mpf(2) ** -j)
            c, a, b = _g(cid, r, prec)
            v = c - a * a / b
            rep.r.append(r)
            rep.a.append(a)
            rep.b.append(b)
            rep.V.append(v)
            rep.C_over_V32.append(c / v ** mpf(1.5) if v > 0 else mpmath.inf)
            rep.b_pow.append(b ** (1 / mpmath.sqrt(v)) if v > 0 else mpmath.inf)
    rep.verdicts = {
        "V": trend(rep.V),
        "C_over_V^(3/2)": trend(rep.C_over_V32),
        "b^(1/sqrt(V))": trend(rep.b_pow),
    }
    return rep
