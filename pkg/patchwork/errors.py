from __future__ import annotations

from typing import Any, Collection


class PatchworkError(ValueError):
    """Root of every error raised deliberately by this package. Carries a stable machine-readable code and an optional list of violations."""

    code = "patchwork_error"

    def __init__(self, message: str, violations: Collection[str] = None) -> None:
        super().__init__(message)
        self.message, self.violations = message, list(violations or [])

    def __repr__(self) -> str:
        return f"{type(self).__name__}(message={repr(self.message)}, violations={self.violations})"

    def to_json(self) -> dict[str, Any]:
        return {"code": self.code, "message": self.message, "violations": self.violations}


class InvalidInputError(PatchworkError):
    code = "invalid_input"


class SignRuleError(PatchworkError):
    code = "sign_rule_violated"

    def __init__(self, message: str = "sign rule violated", violations: Collection[str] = None) -> None:
        super().__init__(message, violations)


class SingularCurveError(PatchworkError):
    code = "singular_curve"


class ChartError(PatchworkError):
    code = "chart_error"


class IncompatiblePartsError(PatchworkError):
    code = "incompatible_parts"

    def __init__(self, message: str = "incompatible parts", violations: Collection[str] = None) -> None:
        super().__init__(message, violations)


class NotConvexError(PatchworkError):
    code = "not_convex"
