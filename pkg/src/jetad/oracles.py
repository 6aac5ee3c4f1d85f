"""Slow, independent reference implementations used to check the fast paths.

Nothing in here goes through the jet arithmetic of :mod:`jetad.jet`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

from .errors import AlgebraError, NotInvertibleError
from .expr import Expr, eval_real
from .jet import Jet
from .lift import DerivSeq


def invert_cramer(x: Jet) -> Jet:
    """Inverse via Cramer's rule on the lower-triangular Toeplitz system M z = e_0.

    z_i = det(M_i) / a0^(n+1), with M_i = M whose i-th column is replaced by e_0.
    Determinants come from LU with partial pivoting (LAPACK getrf).
    """
    a = x.coeffs
    if a[0] == 0.0:
        raise NotInvertibleError()
    n1 = len(a)
    m = np.zeros((n1, n1))
    for i in range(n1):
        for j in range(i + 1):
            m[i, j] = a[i - j]
    denom = a[0] ** n1
    e0 = np.zeros(n1)
    e0[0] = 1.0
    out = []
    for i in range(n1):
        mi = m.copy()
        mi[:, i] = e0
        out.append(np.linalg.det(mi) / denom)
    return Jet(tuple(out))


def poly_mul_oracle(x: Jet, y: Jet) -> Jet:
    """Full degree-2n product, then truncation to degree n."""
    if x.order != y.order:
        raise AlgebraError(f"order mismatch: {x.order} vs {y.order}")
    full = np.convolve(np.asarray(x.coeffs), np.asarray(y.coeffs))
    return Jet(tuple(full[: x.order + 1]))


def leibniz_derivs(f: DerivSeq, g: DerivSeq) -> DerivSeq:
    """Derivatives of f*g by the general Leibniz rule."""
    if f.base != g.base or f.order != g.order:
        raise AlgebraError("Leibniz rule needs matching base points and orders")
    n = f.order
    out = [
        math.fsum(math.comb(k, i) * f.derivs[i] * g.derivs[k - i] for i in range(k + 1))
        for k in range(n + 1)
    ]
    return DerivSeq(f.base, tuple(out))


def _bell_table(xs: list[float], n: int) -> list[list[float]]:
    """Partial Bell polynomials B[m][k](x1, x2, ...) for 0 <= k <= m <= n."""
    b = [[0.0] * (n + 1) for _ in range(n + 1)]
    b[0][0] = 1.0
    for m in range(1, n + 1):
        for k in range(1, m + 1):
            b[m][k] = math.fsum(
                math.comb(m - 1, i - 1) * xs[i - 1] * b[m - i][k - 1]
                for i in range(1, m - k + 2)
            )
    return b


def faa_di_bruno_derivs(f_at_g: DerivSeq, g: DerivSeq) -> DerivSeq:
    """Derivatives of f(g(x)) given f's derivatives at g(x) and g's at x."""
    if f_at_g.order != g.order:
        raise AlgebraError("composition needs matching orders")
    if f_at_g.base != g.derivs[0]:
        raise AlgebraError("f's data must be taken at g(x)")
    n = g.order
    b = _bell_table(list(g.derivs[1:]), n)
    out = [f_at_g.derivs[0]]
    for m in range(1, n + 1):
        out.append(math.fsum(f_at_g.derivs[k] * b[m][k] for k in range(1, m + 1)))
    return DerivSeq(g.base, tuple(out))


@dataclass(frozen=True)
class FDConfig:
    """Finite-difference settings.

    ``h`` is the finest step (multiplied by max(1, |x|) when ``relative``);
    Richardson extrapolation uses the steps h, 2h, ..., 2^(levels-1) h.
    """

    h: float = 1e-3
    levels: int = 3
    relative: bool = True

    def __post_init__(self) -> None:
        if not self.h > 0.0:
            raise ValueError(f"step must be positive, got {self.h!r}")
        if self.levels < 1:
            raise ValueError(f"levels must be >= 1, got {self.levels!r}")


# second-order central stencils: offsets (in units of h) and weights, scaled by 1/h^i
_STENCILS = {
    1: ((-1, 1), (-0.5, 0.5)),
    2: ((-1, 0, 1), (1.0, -2.0, 1.0)),
    3: ((-2, -1, 1, 2), (-0.5, 1.0, -1.0, 0.5)),
    4: ((-2, -1, 0, 1, 2), (1.0, -4.0, 6.0, -4.0, 1.0)),
}


def central_difference(fn: Callable[[float], float], x: float, i: int, h: float) -> float:
    offsets, weights = _STENCILS[i]
    return math.fsum(w * fn(x + o * h) for o, w in zip(offsets, weights)) / h**i


def finite_difference(
    f: Union[Expr, Callable[[float], float]],
    x: float,
    i: int,
    cfg: FDConfig = FDConfig(),
) -> float:
    """Estimate f^(i)(x), 1 <= i <= 4, by Richardson-extrapolated central differences."""
    if i not in _STENCILS:
        raise ValueError(f"derivative order must be 1..4, got {i}")
    fn = f if callable(f) else (lambda t: eval_real(f, t))
    h = cfg.h * (max(1.0, abs(x)) if cfg.relative else 1.0)
    # row k uses step 2^(levels-1-k) h, coarsest first; error expands in even powers of h
    row = [central_difference(fn, x, i, h * 2 ** (cfg.levels - 1 - k)) for k in range(cfg.levels)]
    for lvl in range(1, cfg.levels):
        factor = 4.0**lvl
        row = [(factor * row[k + 1] - row[k]) / (factor - 1.0) for k in range(len(row) - 1)]
    return row[0]


def relative_deviation(a: float, b: float) -> float:
    """|a - b| / max(1, |a|, |b|): relative for large values, absolute near zero."""
    return abs(a - b) / max(1.0, abs(a), abs(b))
