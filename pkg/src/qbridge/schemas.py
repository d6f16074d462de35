"""Published JSON Schemas for the service wire formats.

These are the contract the HTTP API promises; the service test suite
validates every response against them.
"""
from __future__ import annotations

GATE_OP = {
    "type": "object",
    "properties": {
        "kind": {"const": "gate"},
        "name": {"type": "string"},
        "params": {"type": "array", "items": {"type": "number"}},
        "qubits": {"type": "array", "items": {"type": "integer", "minimum": 0}},
    },
    "required": ["kind", "name", "params", "qubits"],
    "additionalProperties": False,
}

IR_OP = {
    "oneOf": [
        GATE_OP,
        {
            "type": "object",
            "properties": {
                "kind": {"const": "measure"},
                "qubit": {"type": "integer", "minimum": 0},
                "creg": {"type": "string"},
                "bit": {"type": "integer", "minimum": 0},
            },
            "required": ["kind", "qubit", "creg", "bit"],
            "additionalProperties": False,
        },
        {
            "type": "object",
            "properties": {
                "kind": {"const": "reset"},
                "qubit": {"type": "integer", "minimum": 0},
            },
            "required": ["kind", "qubit"],
            "additionalProperties": False,
        },
        {
            "type": "object",
            "properties": {
                "kind": {"const": "barrier"},
                "qubits": {"type": "array", "items": {"type": "integer", "minimum": 0}},
            },
            "required": ["kind", "qubits"],
            "additionalProperties": False,
        },
        {
            "type": "object",
            "properties": {
                "kind": {"const": "conditional"},
                "creg": {"type": "string"},
                "value": {"type": "integer", "minimum": 0},
                "gate": GATE_OP,
            },
            "required": ["kind", "creg", "value", "gate"],
            "additionalProperties": False,
        },
    ]
}

CIRCUIT_IR = {
    "type": "object",
    "properties": {
        "name": {"type": "string"},
        "qubits": {"type": "integer", "minimum": 0},
        "cregs": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {
                    "name": {"type": "string"},
                    "size": {"type": "integer", "minimum": 0},
                },
                "required": ["name", "size"],
                "additionalProperties": False,
            },
        },
        "ops": {"type": "array", "items": IR_OP},
    },
    "required": ["name", "qubits", "cregs", "ops"],
    "additionalProperties": False,
}

_BITSTRING_MAP = {
    "type": "object",
    "patternProperties": {"^[01]*$": {"type": "number", "minimum": 0}},
    "additionalProperties": False,
}

SIM_RESULT = {
    "type": "object",
    "properties": {
        "probabilities": _BITSTRING_MAP,
        "shots": {
            "type": "object",
            "patternProperties": {"^[01]*$": {"type": "integer", "minimum": 0}},
            "additionalProperties": False,
        },
        "snapshots": {
            "type": "array",
            "items": {"type": "array", "items": {"type": "number"}},
        },
        "seed": {"type": "integer", "minimum": 0},
    },
    "required": ["probabilities", "seed"],
    "additionalProperties": False,
}

ERROR = {
    "type": "object",
    "properties": {
        "stage": {"type": "string"},
        "message": {"type": "string"},
        "line": {"type": "integer", "minimum": 1},
        "column": {"type": "integer", "minimum": 1},
    },
    "required": ["stage", "message"],
    "additionalProperties": False,
}

CODE = {
    "type": "object",
    "properties": {"code": {"type": "string"}},
    "required": ["code"],
    "additionalProperties": False,
}

HEALTH = {
    "type": "object",
    "properties": {"status": {"const": "ok"}, "version": {"type": "string"}},
    "required": ["status", "version"],
    "additionalProperties": False,
}

EXAMPLES = {
    "type": "array",
    "items": {
        "type": "object",
        "properties": {
            "name": {"type": "string"},
            "dialect": {"type": "string"},
            "description": {"type": "string"},
            "source": {"type": "string"},
        },
        "required": ["name", "dialect", "description", "source"],
        "additionalProperties": False,
    },
}

TEMPLATES = {
    "type": "array",
    "items": {
        "type": "object",
        "properties": {
            "name": {"type": "string"},
            "description": {"type": "string"},
            "builtin": {"type": "boolean"},
            "files": {"type": "array", "items": {"type": "string"}},
            "variables": {"type": "object", "additionalProperties": {"type": "string"}},
        },
        "required": ["name", "description", "builtin", "files", "variables"],
        "additionalProperties": False,
    },
}

NEW_PROJECT = {
    "type": "object",
    "properties": {"created": {"type": "array", "items": {"type": "string"}}},
    "required": ["created"],
    "additionalProperties": False,
}
