"""Gate definitions and the built-in standard gate table.

Matrix convention: a gate over qubits ``(a, b, c)`` uses basis ordering
``|a b c>`` with the first listed qubit as the most significant bit of the
gate-local index. State indexing is little-endian globally (see simulator);
the two conventions meet in the apply kernel's axis mapping.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Any, Callable, Sequence

import numpy as np

_SQRT2_INV = 1.0 / math.sqrt(2.0)


@dataclass(frozen=True)
class GateDef:
    """A named unitary: fixed/parameterized matrix, user macro, or opaque stub."""

    name: str
    num_params: int
    num_qubits: int
    matrix_fn: Callable[[Sequence[float]], np.ndarray] | None = field(
        default=None, compare=False
    )
    body: Any | None = None  # ir.MacroBody for user-defined gates
    opaque: bool = False

    def matrix(self, params: Sequence[float] = ()) -> np.ndarray:
        if self.matrix_fn is None:
            raise ValueError(f"gate {self.name!r} has no matrix form")
        if len(params) != self.num_params:
            raise ValueError(
                f"gate {self.name!r} takes {self.num_params} params, got {len(params)}"
            )
        return self.matrix_fn(params)


def controlled(u: np.ndarray) -> np.ndarray:
    """Add one control as the new most-significant qubit."""
    d = u.shape[0]
    out = np.eye(2 * d, dtype=complex)
    out[d:, d:] = u
    return out


_I = np.eye(2, dtype=complex)
_X = np.array([[0, 1], [1, 0]], dtype=complex)
_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
_Z = np.array([[1, 0], [0, -1]], dtype=complex)
_H = np.array([[1, 1], [1, -1]], dtype=complex) * _SQRT2_INV
_S = np.array([[1, 0], [0, 1j]], dtype=complex)
_T = np.array([[1, 0], [0, cmath.exp(1j * math.pi / 4)]], dtype=complex)
_SX = 0.5 * np.array([[1 + 1j, 1 - 1j], [1 - 1j, 1 + 1j]], dtype=complex)
_SWAP = np.array(
    [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex
)


def _rx(p: Sequence[float]) -> np.ndarray:
    c, s = math.cos(p[0] / 2), math.sin(p[0] / 2)
    return np.array([[c, -1j * s], [-1j * s, c]], dtype=complex)


def _ry(p: Sequence[float]) -> np.ndarray:
    c, s = math.cos(p[0] / 2), math.sin(p[0] / 2)
    return np.array([[c, -s], [s, c]], dtype=complex)


def _rz(p: Sequence[float]) -> np.ndarray:
    e = cmath.exp(1j * p[0] / 2)
    return np.array([[e.conjugate(), 0], [0, e]], dtype=complex)


def _phase(p: Sequence[float]) -> np.ndarray:
    return np.array([[1, 0], [0, cmath.exp(1j * p[0])]], dtype=complex)


def _u2(p: Sequence[float]) -> np.ndarray:
    phi, lam = p
    return _SQRT2_INV * np.array(
        [
            [1, -cmath.exp(1j * lam)],
            [cmath.exp(1j * phi), cmath.exp(1j * (phi + lam))],
        ],
        dtype=complex,
    )


def _u3(p: Sequence[float]) -> np.ndarray:
    theta, phi, lam = p
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    return np.array(
        [
            [c, -cmath.exp(1j * lam) * s],
            [cmath.exp(1j * phi) * s, cmath.exp(1j * (phi + lam)) * c],
        ],
        dtype=complex,
    )


def _fixed(m: np.ndarray) -> Callable[[Sequence[float]], np.ndarray]:
    return lambda _p: m


def _g(name: str, num_params: int, num_qubits: int, fn) -> GateDef:
    return GateDef(name, num_params, num_qubits, matrix_fn=fn)


#: the qelib1-equivalent built-in gate library
STANDARD_GATES: dict[str, GateDef] = {
    g.name: g
    for g in [
        _g("id", 0, 1, _fixed(_I)),
        _g("x", 0, 1, _fixed(_X)),
        _g("y", 0, 1, _fixed(_Y)),
        _g("z", 0, 1, _fixed(_Z)),
        _g("h", 0, 1, _fixed(_H)),
        _g("s", 0, 1, _fixed(_S)),
        _g("sdg", 0, 1, _fixed(_S.conj().T)),
        _g("t", 0, 1, _fixed(_T)),
        _g("tdg", 0, 1, _fixed(_T.conj().T)),
        _g("sx", 0, 1, _fixed(_SX)),
        _g("rx", 1, 1, _rx),
        _g("ry", 1, 1, _ry),
        _g("rz", 1, 1, _rz),
        _g("p", 1, 1, _phase),
        _g("u1", 1, 1, _phase),
        _g("u2", 2, 1, _u2),
        _g("u3", 3, 1, _u3),
        _g("cx", 0, 2, _fixed(controlled(_X))),
        _g("cy", 0, 2, _fixed(controlled(_Y))),
        _g("cz", 0, 2, _fixed(controlled(_Z))),
        _g("ch", 0, 2, _fixed(controlled(_H))),
        _g("swap", 0, 2, _fixed(_SWAP)),
        _g("crz", 1, 2, lambda p: controlled(_rz(p))),
        _g("cp", 1, 2, lambda p: controlled(_phase(p))),
        _g("ccx", 0, 3, _fixed(controlled(controlled(_X)))),
        _g("cswap", 0, 3, _fixed(controlled(_SWAP))),
    ]
}
