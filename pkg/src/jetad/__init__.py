"""Higher-order forward-mode differentiation over truncated polynomial algebras."""

__version__ = "0.1.0"

from .bidual import BiDual, bidual_mul, bidual_second_derivative
from .engine import (
    Derivatives,
    SeedVector,
    differentiate,
    extract,
    extraction_matrix,
    seed,
    transfer_matrix,
)
from .errors import (
    AlgebraError,
    DomainError,
    EvaluationError,
    ExprSyntaxError,
    NotInvertibleError,
    SeedError,
)
from .expr import eval_jet, eval_real, format_expr, parse
from .jet import Jet, ZeroDivisorClass, add, classify, div, invert, jet_new, mul
from .lift import (
    ARCTAN,
    COS,
    EXP,
    LN,
    RECIP,
    SIN,
    DerivSeq,
    ElementaryFn,
    apply_elementary,
    lift,
    pow_int,
    pow_real,
    taylor_coeffs,
)
from .norms import (
    HomogeneousNormSpec,
    beta_weights,
    norm_beta,
    norm_l1,
    norm_l2_star,
    phi_embed,
)

__all__ = [
    "add",
    "AlgebraError",
    "apply_elementary",
    "ARCTAN",
    "beta_weights",
    "BiDual",
    "bidual_mul",
    "bidual_second_derivative",
    "classify",
    "COS",
    "Derivatives",
    "DerivSeq",
    "differentiate",
    "div",
    "DomainError",
    "ElementaryFn",
    "eval_jet",
    "eval_real",
    "EvaluationError",
    "EXP",
    "ExprSyntaxError",
    "extract",
    "extraction_matrix",
    "format_expr",
    "HomogeneousNormSpec",
    "invert",
    "Jet",
    "jet_new",
    "lift",
    "LN",
    "mul",
    "norm_beta",
    "norm_l1",
    "norm_l2_star",
    "NotInvertibleError",
    "parse",
    "phi_embed",
    "pow_int",
    "pow_real",
    "RECIP",
    "seed",
    "SeedError",
    "SeedVector",
    "SIN",
    "taylor_coeffs",
    "transfer_matrix",
    "ZeroDivisorClass",
]
