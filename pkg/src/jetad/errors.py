"""Exception types shared across the package."""

from __future__ import annotations


class AlgebraError(ValueError):
    """Malformed jet or mismatched orders."""


class NotInvertibleError(ArithmeticError):
    """Raised when inverting an element with zero constant term."""

    def __init__(self, msg: str = "not invertible: zero constant term"):
        super().__init__(msg)


class DomainError(ValueError):
    """An elementary function was applied outside its domain."""


class SeedError(ValueError):
    """Degenerate or malformed seed vector."""


class ExprError(ValueError):
    """Base for parse and evaluation errors; carries a source span."""

    def __init__(self, msg: str, span: tuple[int, int] | None = None):
        super().__init__(msg)
        self.msg = msg
        self.span = span

    def __str__(self) -> str:
        if self.span is None:
            return self.msg
        return f"{self.msg} (at {self.span[0]}..{self.span[1]})"


class ExprSyntaxError(ExprError):
    pass


class EvaluationError(ExprError):
    pass
