"""Quil 2.0 frontend and emitter (declared subset).

Supported: standard gate applications (H, X, Y, Z, S, T, RX, RY, RZ, PHASE,
CNOT, CZ, SWAP, CCNOT, CSWAP), ``DECLARE name BIT[n]`` and
``MEASURE q name[i]``. Control flow (LABEL/JUMP*), DEFGATE, modifiers and the
rest of Quil are rejected with a clear error.
"""
from __future__ import annotations

import re

from .. import expr as _expr
from ..errors import ParseError, SemanticError, UnsupportedConstruct
from ..ir import Barrier, Circuit, Gate, Measure, Op
from .lexing import Lexer, TokenStream

GATE_NAMES = {
    "H": "h",
    "X": "x",
    "Y": "y",
    "Z": "z",
    "S": "s",
    "T": "t",
    "RX": "rx",
    "RY": "ry",
    "RZ": "rz",
    "PHASE": "p",
    "CNOT": "cx",
    "CZ": "cz",
    "SWAP": "swap",
    "CCNOT": "ccx",
    "CSWAP": "cswap",
}
_EMIT_NAMES = {v: k for k, v in GATE_NAMES.items()}

_REJECTED = {
    "LABEL",
    "JUMP",
    "JUMP-WHEN",
    "JUMP-UNLESS",
    "DEFGATE",
    "DEFCIRCUIT",
    "PRAGMA",
    "RESET",
    "WAIT",
    "HALT",
    "NOP",
    "DAGGER",
    "CONTROLLED",
    "FORKED",
    "MOVE",
    "EXCHANGE",
    "ADD",
    "SUB",
    "MUL",
    "DIV",
    "AND",
    "IOR",
    "XOR",
    "NOT",
    "NEG",
    "LOAD",
    "STORE",
    "INCLUDE",
    "DEFCAL",
    "DEFFRAME",
    "CAPTURE",
    "DELAY",
    "FENCE",
    "PULSE",
}

_WORD = re.compile(r"[A-Za-z][A-Za-z0-9_-]*")


def _snippet(lines: list[str], lineno: int) -> str:
    return lines[lineno - 1] if 0 < lineno <= len(lines) else ""


def parse_quil(source: str) -> Circuit:
    lines = source.splitlines()
    cregs: list[tuple[str, int]] = []
    ops: list[Op] = []
    max_qubit = -1

    for lineno, raw in enumerate(lines, start=1):
        text = raw.split("#", 1)[0].rstrip()
        if not text.strip():
            continue
        indent = len(text) - len(text.lstrip())
        body = text.lstrip()
        col = indent + 1
        word_match = _WORD.match(body)
        if word_match is None:
            raise ParseError(
                f"expected an instruction, found {body[0]!r}",
                line=lineno,
                column=col,
                snippet=_snippet(lines, lineno),
                dialect="quil2",
            )
        word = word_match.group(0)

        def unsupported(construct: str, message: str | None = None):
            raise UnsupportedConstruct(
                construct,
                message,
                line=lineno,
                column=col,
                snippet=_snippet(lines, lineno),
                dialect="quil2",
            )

        def semantic(message: str, column: int = col):
            raise SemanticError(
                message,
                line=lineno,
                column=column,
                snippet=_snippet(lines, lineno),
                dialect="quil2",
            )

        if word in _REJECTED:
            unsupported(word, f"Quil instruction {word!r} is outside the supported subset")
        if word == "DECLARE":
            name, size = _parse_declare(body, lineno, col, lines)
            if name in dict(cregs):
                semantic(f"memory region {name!r} already declared")
            cregs.append((name, size))
            continue
        if word == "MEASURE":
            qubit, creg, bit, ref_col = _parse_measure(body, lineno, col, lines)
            if creg not in dict(cregs):
                semantic(f"undeclared memory region {creg!r}", ref_col)
            if not 0 <= bit < dict(cregs)[creg]:
                semantic(f"index {bit} out of range for {creg}[{dict(cregs)[creg]}]", ref_col)
            ops.append(Measure(qubit, creg, bit))
            max_qubit = max(max_qubit, qubit)
            continue
        if word not in GATE_NAMES:
            unsupported(word, f"gate or instruction {word!r} is outside the supported subset")
        gate, qubits = _parse_gate(body, word, lineno, col, lines)
        if len(set(qubits)) != len(qubits):
            semantic("duplicate qubit operand")
        ops.append(gate)
        max_qubit = max(max_qubit, *qubits)

    num_qubits = max_qubit + 1
    return Circuit(
        num_qubits=num_qubits,
        ops=tuple(ops),
        cregs=tuple(cregs),
        name="main",
    )


def _int_token(ts: TokenStream) -> int:
    tok = ts.expect("NUMBER")
    if any(c in tok.text for c in ".eE"):
        ts.error_at(tok, f"expected an integer, found {tok.text!r}")
    return int(tok.text)


def _line_lexer(body: str, lineno: int, col: int, lines: list[str]) -> TokenStream:
    lexer = Lexer(
        body,
        dialect="quil2",
        line_comment="#",
        punct_one="()[],+-*/^",
        id_more="-",
    )
    # reanchor positions to the original document
    lexer._line = lineno
    lexer._col = col
    lexer.lines = lines
    return TokenStream(lexer)


def _parse_declare(
    body: str, lineno: int, col: int, lines: list[str]
) -> tuple[str, int]:
    ts = _line_lexer(body, lineno, col, lines)
    ts.expect("ID", "DECLARE")
    name = ts.expect("ID").text
    kind = ts.expect("ID")
    if kind.text != "BIT":
        raise UnsupportedConstruct(
            f"DECLARE {kind.text}",
            f"only BIT memory regions are supported, got {kind.text!r}",
            line=lineno,
            column=kind.column,
            snippet=_snippet(lines, lineno),
            dialect="quil2",
        )
    size = 1
    if ts.match("PUNCT", "["):
        size = _int_token(ts)
        ts.expect("PUNCT", "]")
    ts.expect("EOF")
    return name, size


def _parse_measure(
    body: str, lineno: int, col: int, lines: list[str]
) -> tuple[int, str, int, int]:
    ts = _line_lexer(body, lineno, col, lines)
    ts.expect("ID", "MEASURE")
    qubit = _int_token(ts)
    ref = ts.peek()
    if ref.kind != "ID":
        raise UnsupportedConstruct(
            "MEASURE without target",
            "MEASURE needs a classical target (MEASURE q ro[i])",
            line=lineno,
            column=ref.column,
            snippet=_snippet(lines, lineno),
            dialect="quil2",
        )
    ts.next()
    ts.expect("PUNCT", "[")
    bit = _int_token(ts)
    ts.expect("PUNCT", "]")
    ts.expect("EOF")
    return qubit, ref.text, bit, ref.column


def _parse_gate(
    body: str, word: str, lineno: int, col: int, lines: list[str]
) -> tuple[Gate, list[int]]:
    ts = _line_lexer(body, lineno, col, lines)
    name_tok = ts.expect("ID")
    params: list[float] = []
    try:
        if ts.match("PUNCT", "("):
            params.append(_parse_param(ts))
            while ts.match("PUNCT", ","):
                params.append(_parse_param(ts))
            ts.expect("PUNCT", ")")
    except _expr.ExpressionError as e:
        raise SemanticError(
            f"invalid parameter expression: {e}",
            line=lineno,
            column=name_tok.column,
            snippet=_snippet(lines, lineno),
            dialect="quil2",
        ) from None
    qubits: list[int] = []
    while ts.peek().kind == "NUMBER":
        qubits.append(_int_token(ts))
    ts.expect("EOF")

    gate_name = GATE_NAMES[word]
    from ..gates import STANDARD_GATES

    gdef = STANDARD_GATES[gate_name]
    if len(params) != gdef.num_params:
        raise SemanticError(
            f"{word} takes {gdef.num_params} params, got {len(params)}",
            line=lineno,
            column=name_tok.column,
            snippet=_snippet(lines, lineno),
            dialect="quil2",
        )
    if len(qubits) != gdef.num_qubits:
        raise SemanticError(
            f"{word} acts on {gdef.num_qubits} qubits, got {len(qubits)}",
            line=lineno,
            column=name_tok.column,
            snippet=_snippet(lines, lineno),
            dialect="quil2",
        )
    return Gate(gate_name, tuple(params), tuple(qubits)), qubits


def _parse_param(ts: TokenStream) -> float:
    return _expr.evaluate_strict(_parse_sum(ts, 0))


def _parse_sum(ts: TokenStream, depth: int):
    if depth > 200:
        ts.error_at(ts.peek(), "expression nesting too deep")
    left = _parse_product(ts, depth)
    while True:
        tok = ts.peek()
        if tok.kind == "PUNCT" and tok.text in ("+", "-"):
            ts.next()
            left = _expr.BinOp(tok.text, left, _parse_product(ts, depth))
        else:
            return left


def _parse_product(ts: TokenStream, depth: int):
    left = _parse_unary(ts, depth)
    while True:
        tok = ts.peek()
        if tok.kind == "PUNCT" and tok.text in ("*", "/"):
            ts.next()
            left = _expr.BinOp(tok.text, left, _parse_unary(ts, depth))
        else:
            return left


def _parse_unary(ts: TokenStream, depth: int):
    if depth > 200:
        ts.error_at(ts.peek(), "expression nesting too deep")
    if ts.match("PUNCT", "-"):
        return _expr.Neg(_parse_unary(ts, depth + 1))
    tok = ts.peek()
    if tok.kind == "NUMBER":
        ts.next()
        return _expr.Num(float(tok.text))
    if tok.kind == "ID" and tok.text == "pi":
        ts.next()
        return _expr.Pi()
    if tok.kind == "PUNCT" and tok.text == "(":
        ts.next()
        inner = _parse_sum(ts, depth + 1)
        ts.expect("PUNCT", ")")
        return inner
    ts.error_at(tok, f"expected a parameter expression, found {tok.text or 'end of line'!r}")
    raise AssertionError  # pragma: no cover


# --- emission ----------------------------------------------------------------


def emit_quil(circuit: Circuit) -> str:
    from ..errors import UnsupportedForTarget
    from ..ir import Conditional, Reset

    lines = [f"DECLARE {name} BIT[{size}]" for name, size in circuit.cregs]
    for op in circuit.ops:
        if isinstance(op, Barrier):
            continue  # no Quil equivalent in the subset; scheduling-only
        if isinstance(op, Measure):
            lines.append(f"MEASURE {op.qubit} {op.creg}[{op.bit}]")
        elif isinstance(op, Gate):
            if op.name not in _EMIT_NAMES:
                raise UnsupportedForTarget(f"gate {op.name}", "quil2")
            params = (
                f"({','.join(repr(float(p)) for p in op.params)})" if op.params else ""
            )
            operands = " ".join(str(q) for q in op.qubits)
            lines.append(f"{_EMIT_NAMES[op.name]}{params} {operands}")
        elif isinstance(op, Reset):
            raise UnsupportedForTarget("reset", "quil2")
        elif isinstance(op, Conditional):
            raise UnsupportedForTarget("conditional", "quil2")
        else:  # pragma: no cover - defensive
            raise TypeError(f"unknown op {op!r}")
    return "\n".join(lines) + "\n" if lines else "\n"
