"""Exception hierarchy.

Every error carries a short machine-readable ``code`` used by the CLI when it
reports failures as JSON on stderr.
"""
from __future__ import annotations


class FramedModuliError(Exception):
    code = "error"

    def to_json(self) -> dict:
        return {"error": self.code, "message": str(self)}


class FieldMismatchError(FramedModuliError):
    code = "FieldMismatch"


class ShapeMismatch(FramedModuliError):
    code = "ShapeMismatch"


class SingularMatrixError(FramedModuliError):
    code = "Singular"


class SubsetSizeMismatch(FramedModuliError):
    code = "SubsetSizeMismatch"


class NotComposable(FramedModuliError):
    code = "NotComposable"


class PathSyntaxError(FramedModuliError):
    code = "SyntaxError"


class UnknownArrow(FramedModuliError):
    code = "UnknownArrow"


class SlotOutOfRange(FramedModuliError):
    code = "SlotOutOfRange"


class NotStable(FramedModuliError):
    code = "NotStable"

    def __init__(self, message: str = "representation is not stable", which: str | None = None):
        super().__init__(message)
        self.which = which

    def to_json(self) -> dict:
        out = super().to_json()
        if self.which is not None:
            out["which"] = self.which
        return out


class NotInChart(FramedModuliError):
    code = "NotInChart"


class IndexMismatch(FramedModuliError):
    code = "IndexMismatch"


class MissingRow(FramedModuliError):
    code = "MissingRow"


class UnknownVariable(FramedModuliError):
    code = "UnknownVariable"


class BudgetExceeded(FramedModuliError):
    code = "BudgetExceeded"


class GaveUp(FramedModuliError):
    code = "GaveUp"


class SchemaError(FramedModuliError):
    code = "SchemaError"
