"""Lifting real functions to jets.

Given ``[f(x), f'(x), ..., f^(n)(x)]`` the extension of ``f`` to jets whose
constant term is ``x`` is the truncated Taylor polynomial

    f(x + u) = sum_k f^(k)(x) / k! * u^k,     u nilpotent,

which at order 3 is exactly the familiar formula

    f(x) + a1 f' e + (a2 f' + a1^2 f''/2) e^2 + (a3 f' + a1 a2 f'' + a1^3 f'''/6) e^3.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import AlgebraError, DomainError
from .jet import Jet, invert, mul

MAX_ORDER = 170  # 171! overflows a double

_FACT = [1.0]
for _k in range(1, MAX_ORDER + 1):
    _FACT.append(_FACT[-1] * _k)


def factorial(k: int) -> float:
    return _FACT[k]


@dataclass(frozen=True)
class ElementaryFn:
    """One of the built-in elementary functions.

    ``kind`` is one of ``recip, exp, sin, cos, ln, arctan, powint, powreal``;
    ``exponent`` is only used by the two power kinds.
    """

    kind: str
    exponent: float | int | None = None

    def __post_init__(self) -> None:
        if self.kind not in _KINDS:
            raise ValueError(f"unknown elementary function {self.kind!r}")
        if self.kind == "powint" and not isinstance(self.exponent, int):
            raise ValueError("powint needs an integer exponent")
        if self.kind == "powreal" and not isinstance(self.exponent, (int, float)):
            raise ValueError("powreal needs a real exponent")

    @property
    def name(self) -> str:
        if self.kind in ("powint", "powreal"):
            return f"x^{self.exponent}"
        return self.kind

    def __call__(self, x: float) -> float:
        """Plain real evaluation with domain checks."""
        _check_domain(self, x)
        k = self.kind
        if k == "recip":
            return 1.0 / x
        if k == "exp":
            return math.exp(x)
        if k == "sin":
            return math.sin(x)
        if k == "cos":
            return math.cos(x)
        if k == "ln":
            return math.log(x)
        if k == "arctan":
            return math.atan(x)
        if k == "powint":
            return float(x) ** self.exponent
        return x ** float(self.exponent)


_KINDS = ("recip", "exp", "sin", "cos", "ln", "arctan", "powint", "powreal")

RECIP = ElementaryFn("recip")
EXP = ElementaryFn("exp")
SIN = ElementaryFn("sin")
COS = ElementaryFn("cos")
LN = ElementaryFn("ln")
ARCTAN = ElementaryFn("arctan")


def pow_int(k: int) -> ElementaryFn:
    return ElementaryFn("powint", int(k))


def pow_real(p: float) -> ElementaryFn:
    return ElementaryFn("powreal", float(p))


@dataclass(frozen=True)
class DerivSeq:
    """Derivative data ``[f(x), f'(x), ..., f^(n)(x)]`` at ``base``."""

    base: float
    derivs: tuple[float, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "derivs", tuple(float(d) for d in self.derivs))
        if not self.derivs:
            raise AlgebraError("derivative sequence is empty")
        for i, d in enumerate(self.derivs):
            if not math.isfinite(d):
                raise AlgebraError(f"non-finite derivative of order {i}: {d!r}")

    @property
    def order(self) -> int:
        return len(self.derivs) - 1

    def scale(self, r: float) -> "DerivSeq":
        return DerivSeq(self.base, tuple(r * d for d in self.derivs))

    def __add__(self, other: "DerivSeq") -> "DerivSeq":
        if other.base != self.base or other.order != self.order:
            raise AlgebraError("derivative sequences differ in base point or order")
        return DerivSeq(self.base, tuple(a + b for a, b in zip(self.derivs, other.derivs)))


def _check_domain(f: ElementaryFn, x: float) -> None:
    k = f.kind
    if k == "recip" and x == 0.0:
        raise DomainError(f"recip undefined at {x!r}")
    if k == "ln" and x <= 0.0:
        raise DomainError(f"ln undefined at non-positive {x!r}")
    if k == "powreal" and x <= 0.0:
        raise DomainError(f"{f.name} undefined at non-positive {x!r}")
    if k == "powint" and f.exponent < 0 and x == 0.0:
        raise DomainError(f"{f.name} undefined at 0")


def _falling(p: float, m: int) -> float:
    r = 1.0
    for i in range(m):
        r *= p - i
    return r


def taylor_coeffs(f: ElementaryFn, x: float, order: int) -> DerivSeq:
    """Exact derivatives ``f^(0..order)(x)`` from closed forms."""
    if order < 0 or order > MAX_ORDER:
        raise AlgebraError(f"order must lie in 0..{MAX_ORDER}, got {order}")
    _check_domain(f, x)
    k = f.kind
    ks = range(order + 1)
    if k == "exp":
        e = math.exp(x)
        d = [e] * (order + 1)
    elif k in ("sin", "cos"):
        s, c = math.sin(x), math.cos(x)
        cycle = [s, c, -s, -c] if k == "sin" else [c, -s, -c, s]
        d = [cycle[m % 4] for m in ks]
    elif k == "ln":
        d = [math.log(x)] + [(-1) ** (m - 1) * _FACT[m - 1] / x**m for m in ks if m > 0]
    elif k == "recip":
        d = [(-1) ** m * _FACT[m] / x ** (m + 1) for m in ks]
    elif k == "arctan":
        # d^m/dx^m atan(x) = (-1)^(m-1) (m-1)! sin(m t) / (1+x^2)^(m/2), t = acot(x)
        t = math.atan2(1.0, x)
        r = math.sqrt(1.0 + x * x)
        d = [math.atan(x)] + [
            (-1) ** (m - 1) * _FACT[m - 1] * math.sin(m * t) / r**m for m in ks if m > 0
        ]
    elif k == "powint":
        p = f.exponent
        d = []
        for m in ks:
            if p >= 0 and m > p:
                d.append(0.0)
            else:
                d.append(_falling(p, m) * float(x) ** (p - m))
    else:
        p = float(f.exponent)
        d = [_falling(p, m) * x ** (p - m) for m in ks]
    return DerivSeq(x, tuple(d))


def lift(d: DerivSeq, j: Jet) -> Jet:
    """Evaluate the jet extension of ``f`` (given by its derivatives) at ``j``."""
    if j.order != d.order:
        raise AlgebraError(f"order mismatch: jet {j.order} vs derivative data {d.order}")
    if j.coeffs[0] != d.base:
        raise AlgebraError(
            f"jet constant term {j.coeffs[0]!r} differs from expansion point {d.base!r}"
        )
    u = j.nilpotent_part()
    n = d.order
    acc = Jet.constant(d.derivs[n] / _FACT[n], n)
    for k in range(n - 1, -1, -1):
        acc = mul(acc, u) + d.derivs[k] / _FACT[k]
    return acc


def apply_elementary(f: ElementaryFn, j: Jet) -> Jet:
    """Extension of an elementary function evaluated at a jet."""
    x = j.coeffs[0]
    _check_domain(f, x)
    if f.kind == "recip":
        return invert(j)
    return lift(taylor_coeffs(f, x, j.order), j)

