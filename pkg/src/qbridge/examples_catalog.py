"""Built-in example programs for the service, CLI and designer UI."""
from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Example:
    name: str
    dialect: str
    description: str
    source: str


BELL_QASM = """\
OPENQASM 2.0;
include "qelib1.inc";
qreg q[2];
creg c[2];
h q[0];
cx q[0],q[1];
measure q -> c;
"""

GHZ3_QASM = """\
OPENQASM 2.0;
include "qelib1.inc";
qreg q[3];
creg c[3];
h q[0];
cx q[0],q[1];
cx q[1],q[2];
measure q -> c;
"""

QFT2_QASM = """\
OPENQASM 2.0;
include "qelib1.inc";
qreg q[2];
h q[0];
cp(pi/2) q[1],q[0];
h q[1];
swap q[0],q[1];
"""

TELEPORT_QASM = """\
OPENQASM 2.0;
include "qelib1.inc";
qreg q[3];
creg c[2];
creg r[1];
x q[0];
h q[1];
cx q[1],q[2];
cx q[0],q[1];
h q[0];
measure q[0] -> c[0];
measure q[1] -> c[1];
if(c==1) z q[2];
if(c==2) x q[2];
if(c==3) y q[2];
measure q[2] -> r[0];
"""

EXAMPLES: tuple[Example, ...] = (
    Example("bell", "openqasm2", "two-qubit Bell pair, measured", BELL_QASM),
    Example("ghz-3", "openqasm2", "three-qubit GHZ state, measured", GHZ3_QASM),
    Example("qft-2", "openqasm2", "two-qubit quantum Fourier transform", QFT2_QASM),
    Example(
        "teleportation",
        "openqasm2",
        "teleport |1> with conditional corrections (needs shots)",
        TELEPORT_QASM,
    ),
)


def examples_catalog() -> tuple[Example, ...]:
    return EXAMPLES


def get_example(name: str) -> Example:
    for example in EXAMPLES:
        if example.name == name:
            return example
    raise KeyError(name)
