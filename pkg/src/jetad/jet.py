"""Truncated polynomial algebra R[e]/(e^(n+1)).

A :class:`Jet` of order ``n`` stores ``n + 1`` float coefficients
``a0 + a1 e + ... + an e^n``; products drop every power above ``n``.
Values are immutable, so jets can be shared freely between threads.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

from .errors import AlgebraError, NotInvertibleError

Scalar = Union[int, float]


class ZeroDivisorClass(enum.Enum):
    INVERTIBLE = "invertible"
    ZERO_DIVISOR = "zero-divisor"


def _check_finite(coeffs: Sequence[float]) -> None:
    for i, c in enumerate(coeffs):
        if not math.isfinite(c):
            raise AlgebraError(f"non-finite coefficient at index {i}: {c!r}")


@dataclass(frozen=True)
class Jet:
    """Element of R^(n+1); ``coeffs[i]`` is the coefficient of e^i."""

    coeffs: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.coeffs) == 0:
            raise AlgebraError("a jet needs at least one coefficient")
        object.__setattr__(self, "coeffs", tuple(float(c) for c in self.coeffs))
        _check_finite(self.coeffs)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @property
    def value(self) -> float:
        return self.coeffs[0]

    def __getitem__(self, i: int) -> float:
        return self.coeffs[i]

    def __len__(self) -> int:
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    @classmethod
    def constant(cls, c: Scalar, order: int) -> "Jet":
        return cls((float(c),) + (0.0,) * order)

    @classmethod
    def eps_power(cls, k: int, order: int) -> "Jet":
        """The monomial e^k (zero when k > order)."""
        coeffs = [0.0] * (order + 1)
        if k <= order:
            coeffs[k] = 1.0
        return cls(tuple(coeffs))

    def _coerce(self, other: object) -> "Jet":
        if isinstance(other, Jet):
            return other
        if isinstance(other, (int, float)):
            return Jet.constant(other, self.order)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return add(self, other)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return add(self, -other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return add(other, -self)

    def __neg__(self) -> "Jet":
        return Jet(tuple(-c for c in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, (int, float)):
            return self.scale(other)
        if not isinstance(other, Jet):
            return NotImplemented
        return mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, float)):
            if other == 0:
                raise NotInvertibleError("division by zero scalar")
            return Jet(tuple(c / other for c in self.coeffs))
        if not isinstance(other, Jet):
            return NotImplemented
        return div(self, other)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return div(other, self)

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        return power(self, k)

    def scale(self, r: Scalar) -> "Jet":
        return Jet(tuple(r * c for c in self.coeffs))

    def nilpotent_part(self) -> "Jet":
        return Jet((0.0,) + self.coeffs[1:])

    def truncate(self, order: int) -> "Jet":
        """Project onto R^(order+1) by dropping the higher coefficients."""
        if order > self.order:
            raise AlgebraError(f"cannot truncate order {self.order} jet to order {order}")
        return Jet(self.coeffs[: order + 1])

    def __str__(self) -> str:
        terms = []
        for i, c in enumerate(self.coeffs):
            if i == 0:
                terms.append(f"{c:g}")
            elif c != 0.0:
                sign = "-" if c < 0 else "+"
                mono = "e" if i == 1 else f"e^{i}"
                terms.append(f"{sign} {abs(c):g}{mono}")
        return " ".join(terms)


def jet_new(order: int, coeffs: Iterable[Scalar]) -> Jet:
    """Build a jet of the given order, checking the coefficient count."""
    if not isinstance(order, int) or order < 0:
        raise AlgebraError(f"order must be a non-negative integer, got {order!r}")
    coeffs = tuple(coeffs)
    if len(coeffs) != order + 1:
        raise AlgebraError(
            f"length mismatch: order {order} needs {order + 1} coefficients, got {len(coeffs)}"
        )
    for i, c in enumerate(coeffs):
        if not isinstance(c, (int, float)) or not math.isfinite(c):
            raise AlgebraError(f"non-finite coefficient at index {i}: {c!r}")
    return Jet(coeffs)


def _same_order(x: Jet, y: Jet) -> int:
    if x.order != y.order:
        raise AlgebraError(f"order mismatch: {x.order} vs {y.order}")
    return x.order


def add(x: Jet, y: Jet) -> Jet:
    _same_order(x, y)
    return Jet(tuple(a + b for a, b in zip(x.coeffs, y.coeffs)))


def mul(x: Jet, y: Jet) -> Jet:
    """Truncated product: c_k = sum_{i+j=k} a_i b_j for k <= n."""
    n = _same_order(x, y)
    a, b = x.coeffs, y.coeffs
    out = [0.0] * (n + 1)
    for i in range(n + 1):
        ai = a[i]
        if ai == 0.0:
            continue
        for j in range(n + 1 - i):
            out[i + j] += ai * b[j]
    return Jet(tuple(out))


def classify(x: Jet) -> ZeroDivisorClass:
    # exact test on purpose: a tiny a0 is invertible, just badly conditioned
    if x.coeffs[0] == 0.0:
        return ZeroDivisorClass.ZERO_DIVISOR
    return ZeroDivisorClass.INVERTIBLE


def invert(x: Jet) -> Jet:
    """Multiplicative inverse by forward substitution on the Toeplitz system."""
    a = x.coeffs
    a0 = a[0]
    if a0 == 0.0:
        raise NotInvertibleError()
    inv = [1.0 / a0]
    for k in range(1, len(a)):
        s = 0.0
        for i in range(1, k + 1):
            s += a[i] * inv[k - i]
        inv.append(-s / a0)
    return Jet(tuple(inv))


def div(x: Jet, y: Jet) -> Jet:
    """Quotient x / y by forward substitution; q0 = a0 / b0 exactly as in real arithmetic."""
    n = _same_order(x, y)
    a, b = x.coeffs, y.coeffs
    b0 = b[0]
    if b0 == 0.0:
        raise NotInvertibleError()
    q = [a[0] / b0]
    for k in range(1, n + 1):
        s = a[k]
        for i in range(1, k + 1):
            s -= b[i] * q[k - i]
        q.append(s / b0)
    return Jet(tuple(q))


def power(x: Jet, k: int) -> Jet:
    """Integer power by binary exponentiation; negative k goes through invert."""
    if k < 0:
        return power(invert(x), -k)
    result = Jet.constant(1.0, x.order)
    base = x
    while k:
        if k & 1:
            result = mul(result, base)
        k >>= 1
        if k:
            base = mul(base, base)
    return result
