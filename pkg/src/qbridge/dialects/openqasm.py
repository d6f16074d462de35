"""OpenQASM 2.0 frontend and emitter.

Covers the full 2.0 grammar: version header, ``include "qelib1.inc"``
(resolved against the built-in gate table, never the filesystem), register
declarations, gate macro definitions, the U/CX primitives, named gates,
measure, reset, barrier and single-op ``if (creg==n)`` conditionals.
Register-wide operations broadcast element-wise. ``opaque`` declarations are
accepted; applying one is an error.
"""
from __future__ import annotations

from .. import expr as _expr
from ..errors import SemanticError, UnsupportedConstruct
from ..gates import STANDARD_GATES, GateDef
from ..ir import (
    Barrier,
    Circuit,
    Conditional,
    Gate,
    MacroBody,
    Measure,
    Op,
    Reset,
)
from .lexing import Lexer, Token, TokenStream

KEYWORDS = {
    "OPENQASM",
    "include",
    "qreg",
    "creg",
    "gate",
    "opaque",
    "barrier",
    "measure",
    "reset",
    "if",
    "U",
    "CX",
    "pi",
}

_BUILTIN_NAMES = {"U": "u3", "CX": "cx"}


def _is_valid_id(text: str) -> bool:
    return bool(text) and text[0].islower() and all(
        c.isalnum() or c == "_" for c in text
    )


class _Parser:
    def __init__(self, source: str):
        self.lexer = Lexer(
            source,
            dialect="openqasm2",
            line_comment="//",
            punct_two=("==", "->"),
            punct_one=";,()[]{}+-*/^",
        )
        self.ts = TokenStream(self.lexer)
        self.qregs: list[tuple[str, int]] = []
        self.qreg_offsets: dict[str, int] = {}
        self.cregs: list[tuple[str, int]] = []
        self.gate_defs: dict[str, GateDef] = {}
        self.include_qelib = False
        self.ops: list[Op] = []
        self.num_qubits = 0
        self._expr_depth = 0

    # -- error helpers --------------------------------------------------

    def _semantic(self, tok: Token, message: str):
        raise SemanticError(
            message,
            line=tok.line,
            column=tok.column,
            snippet=self.lexer.snippet(tok.line),
            dialect="openqasm2",
        )

    def _unsupported(self, tok: Token, construct: str, message: str | None = None):
        raise UnsupportedConstruct(
            construct,
            message,
            line=tok.line,
            column=tok.column,
            snippet=self.lexer.snippet(tok.line),
            dialect="openqasm2",
        )

    # -- top level -------------------------------------------------------

    def parse(self) -> Circuit:
        self.ts.expect("ID", "OPENQASM")
        version = self.ts.expect("NUMBER")
        if version.text not in ("2.0", "2"):
            self._unsupported(version, f"OpenQASM version {version.text}")
        self.ts.expect("PUNCT", ";")
        while self.ts.peek().kind != "EOF":
            self._statement()
        return Circuit(
            num_qubits=self.num_qubits,
            ops=tuple(self.ops),
            qregs=tuple(self.qregs),
            cregs=tuple(self.cregs),
            gate_defs=self.gate_defs,
            name="main",
        )

    def _statement(self) -> None:
        tok = self.ts.peek()
        if tok.kind != "ID":
            self.ts.error_at(tok, f"expected a statement, found {tok.text!r}")
        text = tok.text
        if text == "include":
            self._include()
        elif text in ("qreg", "creg"):
            self._decl()
        elif text == "gate":
            self._gate_def()
        elif text == "opaque":
            self._opaque_def()
        elif text == "if":
            self._if_statement()
        elif text == "barrier":
            self.ts.next()
            self.ops.append(self._barrier_operands())
            self.ts.expect("PUNCT", ";")
        else:
            self.ops.extend(self._quantum_op())

    def _include(self) -> None:
        self.ts.next()
        fname = self.ts.expect("STRING")
        if fname.text != "qelib1.inc":
            self._unsupported(
                fname,
                f'include "{fname.text}"',
                f'only include "qelib1.inc" is supported, got "{fname.text}"',
            )
        self.include_qelib = True
        self.ts.expect("PUNCT", ";")

    def _decl(self) -> None:
        kw = self.ts.next()
        name = self._identifier("register name")
        self.ts.expect("PUNCT", "[")
        size_tok = self.ts.expect("NUMBER")
        size = self._nninteger(size_tok)
        self.ts.expect("PUNCT", "]")
        self.ts.expect("PUNCT", ";")
        if name.text in self.qreg_offsets or name.text in dict(self.cregs):
            self._semantic(name, f"register {name.text!r} already declared")
        if kw.text == "qreg":
            self.qreg_offsets[name.text] = self.num_qubits
            self.qregs.append((name.text, size))
            self.num_qubits += size
        else:
            self.cregs.append((name.text, size))

    def _identifier(self, what: str) -> Token:
        tok = self.ts.expect("ID")
        if tok.text in KEYWORDS:
            self._semantic(tok, f"reserved word {tok.text!r} cannot name a {what}")
        if not _is_valid_id(tok.text):
            self._semantic(
                tok, f"invalid {what} {tok.text!r} (must start with a lowercase letter)"
            )
        return tok

    def _nninteger(self, tok: Token) -> int:
        if any(c in tok.text for c in ".eE"):
            self.ts.error_at(tok, f"expected a non-negative integer, found {tok.text!r}")
        return int(tok.text)

    # -- gate definitions --------------------------------------------------

    def _gate_scope(self, name: str) -> GateDef | None:
        if name in self.gate_defs:
            return self.gate_defs[name]
        if self.include_qelib and name in STANDARD_GATES:
            return STANDARD_GATES[name]
        return None

    def _gate_def(self) -> None:
        self.ts.next()
        name = self._identifier("gate")
        if self._gate_scope(name.text) is not None:
            self._semantic(name, f"gate {name.text!r} already defined")
        params: list[str] = []
        if self.ts.match("PUNCT", "("):
            if not self.ts.match("PUNCT", ")"):
                params.append(self._identifier("parameter").text)
                while self.ts.match("PUNCT", ","):
                    params.append(self._identifier("parameter").text)
                self.ts.expect("PUNCT", ")")
        formals = [self._identifier("gate argument")]
        while self.ts.match("PUNCT", ","):
            formals.append(self._identifier("gate argument"))
        formal_names = [t.text for t in formals]
        if len(set(params)) != len(params) or len(set(formal_names)) != len(formal_names):
            self._semantic(name, f"duplicate formal name in gate {name.text!r}")
        self.ts.expect("PUNCT", "{")
        body_ops: list[Op] = []
        formal_index = {fname: i for i, fname in enumerate(formal_names)}
        param_set = set(params)
        while not self.ts.match("PUNCT", "}"):
            tok = self.ts.peek()
            if tok.kind == "EOF":
                self.ts.error_at(tok, f"unterminated body of gate {name.text!r}")
            if tok.text == "barrier":
                self.ts.next()
                qubits = [self._body_formal(formal_index)]
                while self.ts.match("PUNCT", ","):
                    qubits.append(self._body_formal(formal_index))
                self.ts.expect("PUNCT", ";")
                body_ops.append(Barrier(tuple(qubits)))
                continue
            body_ops.append(self._body_gate_call(formal_index, param_set))
        self.gate_defs[name.text] = GateDef(
            name=name.text,
            num_params=len(params),
            num_qubits=len(formal_names),
            body=MacroBody(tuple(params), tuple(formal_names), tuple(body_ops)),
        )

    def _body_formal(self, formal_index: dict[str, int]) -> int:
        tok = self.ts.expect("ID")
        if tok.text not in formal_index:
            self._semantic(tok, f"unknown gate argument {tok.text!r}")
        return formal_index[tok.text]

    def _body_gate_call(self, formal_index: dict[str, int], params: set[str]) -> Gate:
        name_tok = self.ts.next()
        gate_name, gdef = self._resolve_call(name_tok)
        exprs: list = []
        if name_tok.text == "U":
            self.ts.expect("PUNCT", "(")
            exprs = self._exp_list(params)
            self.ts.expect("PUNCT", ")")
        elif self.ts.match("PUNCT", "("):
            if not self.ts.match("PUNCT", ")"):
                exprs = self._exp_list(params)
                self.ts.expect("PUNCT", ")")
        if len(exprs) != gdef.num_params:
            self._semantic(
                name_tok,
                f"gate {gate_name!r} takes {gdef.num_params} params, got {len(exprs)}",
            )
        qubits = [self._body_formal(formal_index)]
        while self.ts.match("PUNCT", ","):
            qubits.append(self._body_formal(formal_index))
        self.ts.expect("PUNCT", ";")
        if len(qubits) != gdef.num_qubits:
            self._semantic(
                name_tok,
                f"gate {gate_name!r} acts on {gdef.num_qubits} qubits, got {len(qubits)}",
            )
        if len(set(qubits)) != len(qubits):
            self._semantic(name_tok, "duplicate qubit operand")
        return Gate(gate_name, tuple(exprs), tuple(qubits))

    def _opaque_def(self) -> None:
        self.ts.next()
        name = self._identifier("gate")
        if self._gate_scope(name.text) is not None:
            self._semantic(name, f"gate {name.text!r} already defined")
        params: list[str] = []
        if self.ts.match("PUNCT", "("):
            if not self.ts.match("PUNCT", ")"):
                params.append(self._identifier("parameter").text)
                while self.ts.match("PUNCT", ","):
                    params.append(self._identifier("parameter").text)
                self.ts.expect("PUNCT", ")")
        formals = [self._identifier("gate argument")]
        while self.ts.match("PUNCT", ","):
            formals.append(self._identifier("gate argument"))
        self.ts.expect("PUNCT", ";")
        self.gate_defs[name.text] = GateDef(
            name=name.text,
            num_params=len(params),
            num_qubits=len(formals),
            opaque=True,
        )

    # -- quantum operations ------------------------------------------------

    def _resolve_call(self, name_tok: Token) -> tuple[str, GateDef]:
        if name_tok.text in _BUILTIN_NAMES:
            return (
                _BUILTIN_NAMES[name_tok.text],
                STANDARD_GATES[_BUILTIN_NAMES[name_tok.text]],
            )
        if name_tok.kind != "ID" or name_tok.text in KEYWORDS:
            self.ts.error_at(name_tok, f"expected a gate name, found {name_tok.text!r}")
        gdef = self._gate_scope(name_tok.text)
        if gdef is None:
            hint = "" if self.include_qelib else ' (missing include "qelib1.inc"?)'
            self._semantic(name_tok, f"gate {name_tok.text!r} is not defined{hint}")
        if gdef.opaque:
            self._unsupported(
                name_tok,
                f"opaque gate {name_tok.text!r}",
                f"opaque gate {name_tok.text!r} cannot be applied",
            )
        return name_tok.text, gdef

    def _argument(self) -> tuple[Token, int | None]:
        tok = self.ts.expect("ID")
        if tok.text in KEYWORDS:
            self._semantic(tok, f"expected a register, found {tok.text!r}")
        index = None
        if self.ts.match("PUNCT", "["):
            index = self._nninteger(self.ts.expect("NUMBER"))
            self.ts.expect("PUNCT", "]")
        return tok, index

    def _qubit_operand(self, tok: Token, index: int | None) -> tuple[int, int]:
        """Resolve to (global offset, register size); index=None means whole reg."""
        if tok.text not in self.qreg_offsets:
            self._semantic(tok, f"undeclared quantum register {tok.text!r}")
        size = dict(self.qregs)[tok.text]
        if index is not None:
            if not 0 <= index < size:
                self._semantic(tok, f"index {index} out of range for {tok.text}[{size}]")
            return self.qreg_offsets[tok.text] + index, 1
        return self.qreg_offsets[tok.text], size

    def _quantum_op(self) -> list[Op]:
        tok = self.ts.peek()
        if tok.text == "measure":
            return self._measure()
        if tok.text == "reset":
            return self._reset()
        return self._gate_call()

    def _measure(self) -> list[Op]:
        self.ts.next()
        qtok, qidx = self._argument()
        self.ts.expect("PUNCT", "->")
        ctok, cidx = self._argument()
        self.ts.expect("PUNCT", ";")
        qoff, qsize = self._qubit_operand(qtok, qidx)
        if ctok.text not in dict(self.cregs):
            self._semantic(ctok, f"undeclared classical register {ctok.text!r}")
        csize = dict(self.cregs)[ctok.text]
        if cidx is not None:
            if not 0 <= cidx < csize:
                self._semantic(ctok, f"index {cidx} out of range for {ctok.text}[{csize}]")
            if qsize != 1:
                self._semantic(qtok, "register-wide measure needs a register target")
            return [Measure(qoff, ctok.text, cidx)]
        if qidx is not None or qsize != csize:
            self._semantic(qtok, "measure operands must have matching sizes")
        return [Measure(qoff + k, ctok.text, k) for k in range(qsize)]

    def _reset(self) -> list[Op]:
        self.ts.next()
        tok, index = self._argument()
        self.ts.expect("PUNCT", ";")
        off, size = self._qubit_operand(tok, index)
        return [Reset(off + k) for k in range(size)]

    def _barrier_operands(self) -> Barrier:
        qubits: list[int] = []
        first = self.ts.peek()
        while True:
            tok, index = self._argument()
            off, size = self._qubit_operand(tok, index)
            qubits.extend(range(off, off + size))
            if not self.ts.match("PUNCT", ","):
                break
        if len(set(qubits)) != len(qubits):
            self._semantic(first, "duplicate qubit in barrier")
        return Barrier(tuple(qubits))

    def _gate_call(self) -> list[Gate]:
        name_tok = self.ts.next()
        gate_name, gdef = self._resolve_call(name_tok)
        exprs: list = []
        if name_tok.text == "U":
            self.ts.expect("PUNCT", "(")
            exprs = self._exp_list(None)
            self.ts.expect("PUNCT", ")")
        elif name_tok.text != "CX" and self.ts.match("PUNCT", "("):
            if not self.ts.match("PUNCT", ")"):
                exprs = self._exp_list(None)
                self.ts.expect("PUNCT", ")")
        if len(exprs) != gdef.num_params:
            self._semantic(
                name_tok,
                f"gate {gate_name!r} takes {gdef.num_params} params, got {len(exprs)}",
            )
        try:
            params = tuple(_expr.evaluate_strict(e) for e in exprs)
        except _expr.ExpressionError as e:
            self._semantic(name_tok, f"invalid constant expression: {e}")
        operands = [self._argument()]
        while self.ts.match("PUNCT", ","):
            operands.append(self._argument())
        self.ts.expect("PUNCT", ";")
        if len(operands) != gdef.num_qubits:
            self._semantic(
                name_tok,
                f"gate {gate_name!r} acts on {gdef.num_qubits} qubits, "
                f"got {len(operands)}",
            )
        resolved = [self._qubit_operand(tok, idx) for tok, idx in operands]
        width = 1
        for _, size in resolved:
            if size != 1:
                if width != 1 and size != width:
                    self._semantic(name_tok, "broadcast registers must share one size")
                width = size
        ops = []
        for k in range(width):
            qubits = tuple(off + (k if size != 1 else 0) for off, size in resolved)
            if len(set(qubits)) != len(qubits):
                self._semantic(name_tok, "duplicate qubit operand")
            ops.append(Gate(gate_name, params, qubits))
        return ops

    def _if_statement(self) -> None:
        if_tok = self.ts.next()
        self.ts.expect("PUNCT", "(")
        ctok = self.ts.expect("ID")
        if ctok.text not in dict(self.cregs):
            self._semantic(ctok, f"undeclared classical register {ctok.text!r}")
        self.ts.expect("PUNCT", "==")
        value = self._nninteger(self.ts.expect("NUMBER"))
        self.ts.expect("PUNCT", ")")
        inner_tok = self.ts.peek()
        if inner_tok.text in ("measure", "reset"):
            self._unsupported(
                inner_tok,
                f"conditional {inner_tok.text}",
                f"if() may wrap a gate only, not {inner_tok.text!r}",
            )
        if inner_tok.text in ("barrier", "if", "gate", "opaque", "qreg", "creg"):
            self._unsupported(if_tok, f"conditional {inner_tok.text}")
        for gate in self._gate_call():
            self.ops.append(Conditional(ctok.text, value, gate))

    # -- expressions ---------------------------------------------------------

    def _exp_list(self, params: set[str] | None) -> list:
        out = [self._exp(params)]
        while self.ts.match("PUNCT", ","):
            out.append(self._exp(params))
        return out

    def _exp(self, params: set[str] | None):
        self._expr_depth += 1
        if self._expr_depth > 200:
            self.ts.error_at(self.ts.peek(), "expression nesting too deep")
        try:
            left = self._term(params)
            while True:
                tok = self.ts.peek()
                if tok.kind == "PUNCT" and tok.text in ("+", "-"):
                    self.ts.next()
                    left = _expr.BinOp(tok.text, left, self._term(params))
                else:
                    return left
        finally:
            self._expr_depth -= 1

    def _term(self, params: set[str] | None):
        left = self._unary(params)
        while True:
            tok = self.ts.peek()
            if tok.kind == "PUNCT" and tok.text in ("*", "/"):
                self.ts.next()
                left = _expr.BinOp(tok.text, left, self._unary(params))
            else:
                return left

    def _unary(self, params: set[str] | None):
        self._expr_depth += 1
        if self._expr_depth > 200:
            self.ts.error_at(self.ts.peek(), "expression nesting too deep")
        try:
            if self.ts.match("PUNCT", "-"):
                return _expr.Neg(self._unary(params))
            return self._power(params)
        finally:
            self._expr_depth -= 1

    def _power(self, params: set[str] | None):
        base = self._atom(params)
        if self.ts.match("PUNCT", "^"):
            return _expr.BinOp("^", base, self._unary(params))
        return base

    def _atom(self, params: set[str] | None):
        tok = self.ts.peek()
        if tok.kind == "NUMBER":
            self.ts.next()
            return _expr.Num(float(tok.text))
        if tok.kind == "PUNCT" and tok.text == "(":
            self.ts.next()
            inner = self._exp(params)
            self.ts.expect("PUNCT", ")")
            return inner
        if tok.kind == "ID":
            if tok.text == "pi":
                self.ts.next()
                return _expr.Pi()
            if tok.text in _expr.FUNCTIONS and self.ts.peek(1).text == "(":
                self.ts.next()
                self.ts.expect("PUNCT", "(")
                inner = self._exp(params)
                self.ts.expect("PUNCT", ")")
                return _expr.Call(tok.text, inner)
            if params is not None and tok.text in params:
                self.ts.next()
                return _expr.Param(tok.text)
            self._semantic(tok, f"unknown identifier {tok.text!r} in expression")
        self.ts.error_at(tok, f"expected an expression, found {tok.text or 'end of input'!r}")
        raise AssertionError  # pragma: no cover


def parse_qasm(source: str) -> Circuit:
    return _Parser(source).parse()


# --- emission ----------------------------------------------------------------


def _format_param(p) -> str:
    if isinstance(p, (int, float)):
        return repr(float(p))
    return _expr.to_source(p)


def _qubit_ref(circuit: Circuit, q: int) -> str:
    off = 0
    for name, size in circuit.qregs:
        if q < off + size:
            return f"{name}[{q - off}]"
        off += size
    raise ValueError(f"qubit {q} outside declared registers")


def _gate_text(op: Gate, qargs: list[str]) -> str:
    params = f"({','.join(_format_param(p) for p in op.params)})" if op.params else ""
    return f"{op.name}{params} {','.join(qargs)};"


def emit_qasm(circuit: Circuit) -> str:
    lines = ['OPENQASM 2.0;', 'include "qelib1.inc";']
    for name, gdef in circuit.gate_defs.items():
        if gdef.opaque:
            params = (
                f"({','.join(f'p{i}' for i in range(gdef.num_params))})"
                if gdef.num_params
                else ""
            )
            formals = ",".join(f"q{i}" for i in range(gdef.num_qubits))
            lines.append(f"opaque {name}{params} {formals};")
            continue
        body: MacroBody = gdef.body
        params = f"({','.join(body.params)})" if body.params else ""
        lines.append(f"gate {name}{params} {','.join(body.qubits)} {{")
        for op in body.ops:
            if isinstance(op, Barrier):
                lines.append(f"  barrier {','.join(body.qubits[q] for q in op.qubits)};")
            else:
                lines.append("  " + _gate_text(op, [body.qubits[q] for q in op.qubits]))
        lines.append("}")
    for name, size in circuit.qregs:
        lines.append(f"qreg {name}[{size}];")
    for name, size in circuit.cregs:
        lines.append(f"creg {name}[{size}];")
    for op in circuit.ops:
        lines.append(_op_text(circuit, op))
    return "\n".join(lines) + "\n"


def _op_text(circuit: Circuit, op: Op) -> str:
    if isinstance(op, Gate):
        return _gate_text(op, [_qubit_ref(circuit, q) for q in op.qubits])
    if isinstance(op, Measure):
        return f"measure {_qubit_ref(circuit, op.qubit)} -> {op.creg}[{op.bit}];"
    if isinstance(op, Reset):
        return f"reset {_qubit_ref(circuit, op.qubit)};"
    if isinstance(op, Barrier):
        return f"barrier {','.join(_qubit_ref(circuit, q) for q in op.qubits)};"
    if isinstance(op, Conditional):
        return f"if({op.creg}=={op.value}) " + _gate_text(
            op.gate, [_qubit_ref(circuit, q) for q in op.gate.qubits]
        )
    raise TypeError(f"unknown op {op!r}")
