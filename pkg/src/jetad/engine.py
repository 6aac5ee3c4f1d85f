"""Higher-order forward mode: seeding, coefficient extraction, the driver.

Evaluating the jet extension of ``f`` at the seed ``c + t1 e + ... + tn e^n``
yields coefficients ``y_k = sum_m T[k][m] f^(m)(c)`` where ``T[k][m]`` is the
e^k coefficient of ``(t1 e + ... + tn e^n)^m / m!``. ``T`` is lower triangular
with diagonal ``t1^k / k!``, so any ``t1 != 0`` gives an invertible map and
the rows of ``G = T^-1`` recover the derivatives.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from typing import Callable, NamedTuple, Sequence, Union

import numpy as np

from .errors import SeedError
from .expr import Expr, eval_jet, parse
from .jet import Jet, mul
from .lift import MAX_ORDER, factorial


@dataclass(frozen=True)
class SeedVector:
    """Nilpotent seed coefficients (t1, ..., tn); t1 must be nonzero."""

    thetas: tuple[float, ...]

    def __post_init__(self) -> None:
        thetas = tuple(float(t) for t in self.thetas)
        object.__setattr__(self, "thetas", thetas)
        if not thetas:
            raise SeedError("seed needs at least one coefficient")
        if len(thetas) > MAX_ORDER:
            raise SeedError(f"seed order {len(thetas)} exceeds {MAX_ORDER}")
        if not all(math.isfinite(t) for t in thetas):
            raise SeedError("seed coefficients must be finite")
        if thetas[0] == 0.0:
            raise SeedError("degenerate seed: first coefficient must be nonzero")

    @property
    def order(self) -> int:
        return len(self.thetas)

    @classmethod
    def default(cls, order: int) -> "SeedVector":
        return cls((1.0,) + (0.0,) * (order - 1))


def _as_seed(theta: Union[SeedVector, Sequence[float]]) -> SeedVector:
    return theta if isinstance(theta, SeedVector) else SeedVector(tuple(theta))


def seed(x: float, theta: Union[SeedVector, Sequence[float]]) -> Jet:
    theta = _as_seed(theta)
    return Jet((float(x),) + theta.thetas)


@functools.lru_cache(maxsize=256)
def _transfer(thetas: tuple[float, ...]) -> np.ndarray:
    n = len(thetas)
    p = Jet((0.0,) + thetas)
    t = np.zeros((n, n))
    power = p
    for m in range(1, n + 1):
        t[:, m - 1] = np.asarray(power.coeffs[1:]) / factorial(m)
        if m < n:
            power = mul(power, p)
    t.setflags(write=False)
    return t


@functools.lru_cache(maxsize=256)
def _extraction(thetas: tuple[float, ...]) -> np.ndarray:
    t = _transfer(thetas)
    n = len(thetas)
    g = np.zeros((n, n))
    # forward substitution for T G = I, one column at a time
    for col in range(n):
        for row in range(col, n):
            s = 1.0 if row == col else 0.0
            for m in range(col, row):
                s -= t[row, m] * g[m, col]
            g[row, col] = s / t[row, row]
    g.setflags(write=False)
    return g


def transfer_matrix(theta: Union[SeedVector, Sequence[float]]) -> np.ndarray:
    """Lower-triangular map from (f', ..., f^(n)) to jet coefficients (y1, ..., yn).

    The returned array is read-only and may be shared between callers.
    """
    return _transfer(_as_seed(theta).thetas)


def extraction_matrix(theta: Union[SeedVector, Sequence[float]]) -> np.ndarray:
    """Inverse of :func:`transfer_matrix`; row i-1 is the functional giving f^(i)."""
    return _extraction(_as_seed(theta).thetas)


def extract(y: Jet, theta: Union[SeedVector, Sequence[float]]) -> tuple[float, ...]:
    """Apply the derivative maps to the nilpotent coefficients of ``y``."""
    theta = _as_seed(theta)
    if y.order != theta.order:
        raise SeedError(f"jet order {y.order} does not match seed order {theta.order}")
    g = extraction_matrix(theta).tolist()
    ys = y.coeffs[1:]
    return tuple(math.fsum(g[i][k] * ys[k] for k in range(i + 1)) for i in range(theta.order))


class Derivatives(NamedTuple):
    value: float
    derivs: tuple[float, ...]


def differentiate(
    f: Union[Expr, str, Callable[[Jet], Jet]],
    c: float,
    order: int,
    theta: Union[SeedVector, Sequence[float], None] = None,
) -> Derivatives:
    """Return ``f(c)`` and ``f'(c), ..., f^(order)(c)`` from one jet evaluation.

    ``f`` may be an expression, its source text, or any callable mapping jets
    to jets.
    """
    if not isinstance(order, int) or order < 1 or order > MAX_ORDER:
        raise SeedError(f"order must lie in 1..{MAX_ORDER}, got {order!r}")
    theta = SeedVector.default(order) if theta is None else _as_seed(theta)
    if theta.order != order:
        raise SeedError(f"seed has {theta.order} coefficients but order is {order}")
    if isinstance(f, str):
        f = parse(f)
    j = seed(c, theta)
    y = f(j) if callable(f) else eval_jet(f, j)
    return Derivatives(y.coeffs[0], extract(y, theta))
