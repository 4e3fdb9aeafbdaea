"""Truncated Taylor expansions ("jets") over mpmath reals.

A jet of order ``d`` at a point ``r`` stores ``f(r), f'(r)/1!, ..., f^(d)(r)/d!``.
Arithmetic on jets propagates derivatives exactly up to rounding, which lets
closed-form class functions deliver C, C', C'', C''' in one evaluation.
"""
from __future__ import annotations

import math
from typing import Sequence

import mpmath
from mpmath import mpf


class Jet:
    __slots__ = ("c",)

    def __init__(self, coeffs: Sequence):
        self.c = [mpf(x) for x in coeffs]

    @classmethod
    def variable(cls, r, order: int) -> "Jet":
        return cls([r, 1] + [0] * (order - 1)) if order >= 1 else cls([r])

    @classmethod
    def const(cls, v, order: int) -> "Jet":
        return cls([v] + [0] * order)

    @property
    def order(self) -> int:
        return len(self.c) - 1

    @property
    def value(self):
        return self.c[0]

    def derivatives(self) -> tuple:
        return tuple(x * math.factorial(i) for i, x in enumerate(self.c))

    def _lift(self, other) -> "Jet":
        return other if isinstance(other, Jet) else Jet.const(other, self.order)

    def __add__(self, other):
        o = self._lift(other)
        return Jet([a + b for a, b in zip(self.c, o.c)])

    __radd__ = __add__

    def __neg__(self):
        return Jet([-a for a in self.c])

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, Jet):
            o = mpf(other)
            return Jet([a * o for a in self.c])
        d = min(self.order, other.order)
        return Jet([mpmath.fsum(self.c[i] * other.c[k - i] for i in range(k + 1)) for k in range(d + 1)])

    __rmul__ = __mul__

    def reciprocal(self) -> "Jet":
        a = self.c
        if a[0] == 0:
            raise ZeroDivisionError("jet with zero value is not invertible")
        out = [1 / a[0]]
        for k in range(1, len(a)):
            out.append(-mpmath.fsum(a[i] * out[k - i] for i in range(1, k + 1)) / a[0])
        return Jet(out)

    def __truediv__(self, other):
        if not isinstance(other, Jet):
            return self * (1 / mpf(other))
        return self * other.reciprocal()

    def __rtruediv__(self, other):
        return self._lift(other) * self.reciprocal()

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only non-negative integer powers")
        out = Jet.const(1, self.order)
        for _ in range(k):
            out = out * self
        return out

    def exp(self) -> "Jet":
        a = self.c
        out = [mpmath.exp(a[0])]
        for k in range(1, len(a)):
            out.append(mpmath.fsum(i * a[i] * out[k - i] for i in range(1, k + 1)) / k)
        return Jet(out)

    def log(self) -> "Jet":
        a = self.c
        if a[0] <= 0:
            raise ValueError("log of a non-positive value")
        out = [mpmath.log(a[0])]
        for k in range(1, len(a)):
            s = k * a[k] - mpmath.fsum(i * out[i] * a[k - i] for i in range(1, k))
            out.append(s / (k * a[0]))
        return Jet(out)

    def sqrt(self) -> "Jet":
        return (self.log() * mpf(0.5)).exp()


def exp(j: Jet) -> Jet:
    return j.exp()


def log(j: Jet) -> Jet:
    return j.log()
