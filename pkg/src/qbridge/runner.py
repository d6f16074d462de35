"""Code-runner pipeline: source text in, probability report out."""
from __future__ import annotations

import json

from .errors import QbridgeError, tag_stage
from .frontends import detect_dialect, parse
from .ir import expand_macros
from .simulator import RunOptions, SimResult, result_to_json, simulate


def run_source(
    source: str,
    dialect: str | None = None,
    options: RunOptions | None = None,
    filename_hint: str | None = None,
) -> SimResult:
    options = options or RunOptions()
    if dialect is None:
        try:
            dialect = detect_dialect(source, filename_hint)
        except QbridgeError as e:
            raise tag_stage(e, "detect")
    try:
        circuit = parse(dialect, source)
    except QbridgeError as e:
        raise tag_stage(e, "parse")
    try:
        circuit = expand_macros(circuit)
    except QbridgeError as e:
        raise tag_stage(e, "expand")
    try:
        return simulate(circuit, options)
    except QbridgeError as e:
        raise tag_stage(e, "simulate")


def _histogram_lines(dist: dict[str, float]) -> list[str]:
    ordered = sorted(dist.items(), key=lambda item: (-item[1], item[0]))
    width = max((len(k) for k, _ in ordered), default=0)
    return [f"{key:<{width}}  {p:.6f}" for key, p in ordered]


def run_report(result: SimResult, format: str = "plain") -> str:
    """Render a SimResult; probabilities to 6 places, ties broken lexically."""
    if format == "json":
        return json.dumps(result_to_json(result))
    if format != "plain":
        raise ValueError(f"unknown report format {format!r}")
    lines: list[str] = []
    if result.full_state_probabilities is not None:
        lines.append("no measurements; full-state distribution:")
        lines.extend(_histogram_lines(result.full_state_probabilities))
    else:
        lines.extend(_histogram_lines(result.probabilities))
    if result.shots:
        total = sum(result.shots.values())
        lines.append("")
        lines.append(f"shots ({total}):")
        width = max(len(k) for k in result.shots)
        for key in sorted(result.shots):
            lines.append(f"{key:<{width}}  {result.shots[key]}")
    return "\n".join(lines) + "\n"
