"""Shared helpers for the JSON wire dialects."""
from __future__ import annotations

import json

from ..errors import ParseError, SemanticError


def load_json_object(source: str, dialect: str) -> dict:
    """Decode a JSON document, mapping failures to positioned errors."""
    try:
        obj = json.loads(source)
    except RecursionError:
        raise ParseError(
            "JSON nesting too deep", line=1, column=1, dialect=dialect
        ) from None
    except json.JSONDecodeError as e:
        lines = source.splitlines()
        snippet = lines[e.lineno - 1] if 0 < e.lineno <= len(lines) else ""
        raise ParseError(
            f"invalid JSON: {e.msg}",
            line=e.lineno,
            column=e.colno,
            snippet=snippet,
            dialect=dialect,
        ) from None
    if not isinstance(obj, dict):
        raise SemanticError(
            "top level must be a JSON object", line=1, column=1, dialect=dialect
        )
    return obj


def schema_error(dialect: str, message: str) -> SemanticError:
    """Document-level schema violation, anchored at the document start."""
    return SemanticError(message, line=1, column=1, dialect=dialect)
