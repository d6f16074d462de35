"""Per-dialect parsers and emitters.

Each module owns one wire format in both directions where the format is
bidirectional (openqasm, quil, ionq, qcjson, quirk); frameworks.py is
emit-only program generation.
"""
