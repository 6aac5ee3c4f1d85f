"""The 4-dimensional algebra R + R e1 + R e2 + R e1e2 with e1^2 = e2^2 = 0.

Evaluating ``f`` at ``x + e1 + e2`` puts f'(x) on both e1 and e2 and f''(x)
on e1e2. Elementary functions lift through their second-order Taylor data,
f(x0 + u) = f(x0) + f'(x0) u + f''(x0) u^2 / 2, since u^3 = 0 here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import AlgebraError, NotInvertibleError
from .expr import Expr, evaluate
from .lift import RECIP, ElementaryFn, taylor_coeffs


@dataclass(frozen=True)
class BiDual:
    c0: float
    c1: float = 0.0
    c2: float = 0.0
    c12: float = 0.0

    def __post_init__(self) -> None:
        for name in ("c0", "c1", "c2", "c12"):
            v = getattr(self, name)
            if not math.isfinite(v):
                raise AlgebraError(f"non-finite bidual component {name}: {v!r}")

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.c0, self.c1, self.c2, self.c12)

    @staticmethod
    def _coerce(other):
        if isinstance(other, BiDual):
            return other
        if isinstance(other, (int, float)):
            return BiDual(float(other))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return BiDual(self.c0 + other.c0, self.c1 + other.c1, self.c2 + other.c2, self.c12 + other.c12)

    __radd__ = __add__

    def __neg__(self) -> "BiDual":
        return BiDual(-self.c0, -self.c1, -self.c2, -self.c12)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return bidual_mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return bidual_div(self, other)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return bidual_div(other, self)

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return bidual_apply(RECIP, self) ** (-k)
        result, base = BiDual(1.0), self
        while k:
            if k & 1:
                result = bidual_mul(result, base)
            k >>= 1
            if k:
                base = bidual_mul(base, base)
        return result


def bidual_mul(x: BiDual, y: BiDual) -> BiDual:
    return BiDual(
        x.c0 * y.c0,
        x.c0 * y.c1 + x.c1 * y.c0,
        x.c0 * y.c2 + x.c2 * y.c0,
        x.c0 * y.c12 + x.c12 * y.c0 + x.c1 * y.c2 + x.c2 * y.c1,
    )


def bidual_div(x: BiDual, y: BiDual) -> BiDual:
    """x / y solved component by component, so c0 is the plain real quotient."""
    if y.c0 == 0.0:
        raise NotInvertibleError()
    q0 = x.c0 / y.c0
    q1 = (x.c1 - q0 * y.c1) / y.c0
    q2 = (x.c2 - q0 * y.c2) / y.c0
    q12 = (x.c12 - q0 * y.c12 - q1 * y.c2 - q2 * y.c1) / y.c0
    return BiDual(q0, q1, q2, q12)


def bidual_apply(f: ElementaryFn, b: BiDual) -> BiDual:
    """Lift an elementary function to the bidual algebra."""
    if f.kind == "recip" and b.c0 == 0.0:
        raise NotInvertibleError()
    d0, d1, d2 = taylor_coeffs(f, b.c0, 2).derivs
    # u = c1 e1 + c2 e2 + c12 e1e2, u^2 = 2 c1 c2 e1e2
    return BiDual(d0, d1 * b.c1, d1 * b.c2, d1 * b.c12 + d2 * b.c1 * b.c2)


def bidual_eval(f: Expr, b: BiDual) -> BiDual:
    return evaluate(f, b, BiDual, bidual_apply)


def bidual_second_derivative(f: Expr, x: float) -> float:
    """f''(x) read off the e1e2 coefficient of f(x + e1 + e2)."""
    return bidual_eval(f, BiDual(float(x), 1.0, 1.0, 0.0)).c12
