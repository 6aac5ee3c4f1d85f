"""Norms on R^(n+1).

* ``norm_l1``       sum of homogeneous norms; submultiplicative.
* ``norm_l2_star``  Euclidean combination; a norm, but (1+e)^2 already breaks
  submultiplicativity.
* ``norm_beta``     weighted Euclidean norm with weights (n+1-i) beta^i, which is
  submultiplicative. It equals the Frobenius norm of ``phi_embed(x, sqrt(beta))``.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .jet import Jet

HomogeneousRule = Callable[[int, float], float]


def _default_rule(degree: int, x: float) -> float:
    return abs(x)


@dataclass(frozen=True)
class HomogeneousNormSpec:
    """A norm on homogeneous elements ``x e^i``, given as ``rule(i, x)``.

    Custom rules are spot-checked against the four homogeneous-norm axioms
    (definiteness, absolute homogeneity, triangle inequality on one degree,
    submultiplicativity across degrees) for every degree up to ``max_degree``.
    """

    rule: HomogeneousRule = _default_rule
    max_degree: int = 16
    name: str = "abs"
    trials: int = field(default=64, repr=False)

    def __post_init__(self) -> None:
        if self.rule is not _default_rule:
            _validate_rule(self.rule, self.max_degree, self.trials)

    def __call__(self, degree: int, x: float) -> float:
        return self.rule(degree, x)


def _validate_rule(rule: HomogeneousRule, max_degree: int, trials: int) -> None:
    rng = random.Random(0x5EED)
    tol = 1e-12
    for i in range(max_degree + 1):
        if rule(i, 0.0) != 0.0:
            raise ValueError(f"homogeneous norm of 0 e^{i} is not zero")
        for _ in range(trials):
            x, y, r = (rng.uniform(-10, 10) for _ in range(3))
            nx, ny = rule(i, x), rule(i, y)
            if nx <= 0.0 and x != 0.0:
                raise ValueError(f"homogeneous norm not positive at degree {i}")
            if not math.isclose(rule(i, r * x), abs(r) * nx, rel_tol=tol, abs_tol=tol):
                raise ValueError(f"homogeneous norm not absolutely homogeneous at degree {i}")
            if rule(i, x + y) > (nx + ny) * (1 + tol):
                raise ValueError(f"triangle inequality fails at degree {i}")
            for j in range(max_degree + 1 - i):
                if rule(i + j, x * y) > nx * rule(j, y) * (1 + tol) + tol:
                    raise ValueError(f"product inequality fails for degrees {i}, {j}")


DEFAULT_NORM = HomogeneousNormSpec()


def beta_weights(order: int, beta: float) -> list[float]:
    """Weights (n+1-i) beta^i, i = 0..n."""
    _check_beta(beta)
    return [(order + 1 - i) * beta**i for i in range(order + 1)]


def weighted_norm_spec(order: int, beta: float) -> HomogeneousNormSpec:
    """The homogeneous norm sqrt(alpha_i) |x| behind ``norm_beta``."""
    w = [math.sqrt(a) for a in beta_weights(order, beta)]

    def rule(degree: int, x: float) -> float:
        return w[degree] * abs(x) if degree <= order else 0.0

    return HomogeneousNormSpec(rule, max_degree=order, name=f"beta={beta!r}")


def norm_l1(x: Jet, h: HomogeneousNormSpec = DEFAULT_NORM) -> float:
    return math.fsum(h(i, c) for i, c in enumerate(x.coeffs))


def norm_l2_star(x: Jet, h: HomogeneousNormSpec = DEFAULT_NORM) -> float:
    return math.sqrt(math.fsum(h(i, c) ** 2 for i, c in enumerate(x.coeffs)))


def _check_beta(beta: float) -> None:
    if not (beta > 0.0 and math.isfinite(beta)):
        raise ValueError(f"beta must be a positive real, got {beta!r}")


def norm_beta(x: Jet, beta: float) -> float:
    w = beta_weights(x.order, beta)
    return math.sqrt(math.fsum(wi * c * c for wi, c in zip(w, x.coeffs)))


def phi_embed(x: Jet, scale: float = 1.0) -> np.ndarray:
    """Lower-triangular Toeplitz matrix with (i, j) entry x_{i-j} scale^{i-j}.

    ``phi_embed(x*y) == phi_embed(x) @ phi_embed(y)`` for any positive scale.
    """
    if not (scale > 0.0 and math.isfinite(scale)):
        raise ValueError(f"scale must be a positive real, got {scale!r}")
    n1 = x.order + 1
    m = np.zeros((n1, n1))
    for k, c in enumerate(x.coeffs):
        v = c * scale**k
        idx = np.arange(n1 - k)
        m[idx + k, idx] = v
    return m
