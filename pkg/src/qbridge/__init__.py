"""qbridge: a multi-dialect quantum circuit toolchain.

Parse OpenQASM 2.0, Quil 2.0 and three JSON circuit formats into one IR,
convert between dialects (including generated Qiskit/Cirq/pyQuil programs),
simulate locally with exact probabilities or seeded shot sampling, scaffold
projects from templates, and serve a browser circuit designer.
"""

__version__ = "0.1.0"

from .codegen import TARGET_DIALECTS, convert, emit
from .decompose import decompose_for
from .errors import QbridgeError
from .frontends import SOURCE_DIALECTS, detect_dialect, parse
from .gates import STANDARD_GATES, GateDef
from .ir import (
    Barrier,
    Circuit,
    Conditional,
    Diagnostic,
    Gate,
    MacroBody,
    Measure,
    Reset,
    circuit_from_json,
    circuit_to_json,
    expand_macros,
    moments,
    validate,
)
from .runner import run_report, run_source
from .simulator import RunOptions, SimResult, apply_gate, sample, simulate

__all__ = [
    "__version__",
    "Barrier",
    "Circuit",
    "Conditional",
    "Diagnostic",
    "Gate",
    "GateDef",
    "MacroBody",
    "Measure",
    "QbridgeError",
    "Reset",
    "RunOptions",
    "SimResult",
    "SOURCE_DIALECTS",
    "STANDARD_GATES",
    "TARGET_DIALECTS",
    "apply_gate",
    "circuit_from_json",
    "circuit_to_json",
    "convert",
    "decompose_for",
    "detect_dialect",
    "emit",
    "expand_macros",
    "moments",
    "parse",
    "run_report",
    "run_source",
    "sample",
    "simulate",
    "validate",
]
