"""Structured errors shared across the toolchain.

Every user-facing failure is a subclass of QbridgeError so callers (CLI,
service) can render a stage-tagged report instead of a traceback. Parse-stage
errors carry a 1-based line/column and, when available, the offending source
line.
"""
from __future__ import annotations


class QbridgeError(Exception):
    """Base class for all structured toolchain errors."""

    #: pipeline stage that produced the error ("parse", "emit", ...); set by
    #: the stage that raises or by tag_stage().
    stage: str | None = None

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message


class PositionedError(QbridgeError):
    """Error anchored to a position in a source text."""

    def __init__(
        self,
        message: str,
        *,
        line: int | None = None,
        column: int | None = None,
        snippet: str = "",
        dialect: str | None = None,
    ):
        super().__init__(message)
        self.line = line
        self.column = column
        self.snippet = snippet
        self.dialect = dialect


class ParseError(PositionedError):
    """Syntax error while reading a source dialect."""

    stage = "parse"


class UnsupportedConstruct(PositionedError):
    """Source uses a feature outside the supported subset of its dialect."""

    stage = "parse"

    def __init__(self, construct: str, message: str | None = None, **kw):
        super().__init__(message or f"unsupported construct: {construct}", **kw)
        self.construct = construct


class SemanticError(PositionedError):
    """Well-formed source with invalid meaning (undeclared register, arity...)."""

    stage = "parse"


class UnknownDialect(QbridgeError):
    stage = "detect"


class UnknownGate(QbridgeError):
    def __init__(self, name: str):
        super().__init__(f"unknown gate: {name!r}")
        self.gate = name


class RecursionLimit(QbridgeError):
    def __init__(self, limit: int):
        super().__init__(f"gate macro nesting exceeds limit of {limit}")
        self.limit = limit


class UnsupportedForTarget(QbridgeError):
    """No emission or decomposition rule closes the gap for this target."""

    stage = "emit"

    def __init__(self, construct: str, target: str):
        super().__init__(f"{construct!r} cannot be expressed in target {target!r}")
        self.construct = construct
        self.target = target


class TooManyQubits(QbridgeError):
    stage = "simulate"

    def __init__(self, num_qubits: int, limit: int):
        super().__init__(f"circuit has {num_qubits} qubits, limit is {limit}")
        self.num_qubits = num_qubits
        self.limit = limit


class ShotsRequired(QbridgeError):
    stage = "simulate"

    def __init__(self):
        super().__init__(
            "circuit needs per-shot collapse (mid-circuit measurement, reset of a "
            "disturbed qubit, or conditional); pass shots > 0"
        )


class TemplateNotFound(QbridgeError):
    stage = "scaffold"

    def __init__(self, name: str):
        super().__init__(f"template not found: {name!r}")
        self.template = name


class DestinationNotEmpty(QbridgeError):
    stage = "scaffold"


class MissingVariable(QbridgeError):
    stage = "scaffold"

    def __init__(self, name: str):
        super().__init__(f"template variable {name!r} has no value and no default")
        self.variable = name


class NameCollision(QbridgeError):
    stage = "scaffold"


class EmptySource(QbridgeError):
    stage = "scaffold"


def tag_stage(err: QbridgeError, stage: str) -> QbridgeError:
    """Record the pipeline stage an error escaped from.

    Class-level stage attributes are only fallbacks for errors raised outside
    a pipeline; the first pipeline tag wins over them.
    """
    if "stage" not in err.__dict__:
        err.stage = stage
    return err


def format_error(err: QbridgeError) -> str:
    """Render a stage-tagged, position-annotated report for diagnostics."""
    stage = err.stage or "error"
    head = f"{stage} error"
    line = getattr(err, "line", None)
    column = getattr(err, "column", None)
    if line is not None:
        head += f" at line {line}"
        if column is not None:
            head += f", column {column}"
    out = f"{head}: {err.message}"
    snippet = getattr(err, "snippet", "")
    if snippet:
        out += f"\n  {snippet}"
        if column is not None:
            out += "\n  " + " " * (column - 1) + "^"
    return out
