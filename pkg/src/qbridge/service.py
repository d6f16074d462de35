"""Local JSON API over the toolchain, plus static hosting for the designer UI.

Stateless by construction: every handler is a pure call into the core
modules. Errors are reported as ``{"stage", "message", "line"?, "column"?}``
with 400 for parse/semantic problems, 422 for unsupported constructs, 404 for
unknown names/paths and 500 for everything unexpected.
"""
from __future__ import annotations

import json
import logging
import threading
from dataclasses import dataclass
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path

from . import __version__ as _version
from .codegen import convert, emit
from .decompose import decompose_for
from .errors import (
    QbridgeError,
    TemplateNotFound,
    UnsupportedConstruct,
    UnsupportedForTarget,
    tag_stage,
)
from .examples_catalog import examples_catalog
from .frontends import parse
from .ir import circuit_from_json, circuit_to_json, expand_macros
from .runner import run_source
from .scaffold import list_templates, new_project
from .simulator import RunOptions, result_to_json, simulate

log = logging.getLogger(__name__)

_UI_TYPES = {
    ".html": "text/html; charset=utf-8",
    ".js": "application/javascript; charset=utf-8",
    ".mjs": "application/javascript; charset=utf-8",
    ".css": "text/css; charset=utf-8",
    ".map": "application/json",
    ".json": "application/json",
    ".svg": "image/svg+xml",
    ".png": "image/png",
    ".ico": "image/x-icon",
}


def _status_for(err: QbridgeError) -> int:
    if isinstance(err, (UnsupportedConstruct, UnsupportedForTarget)):
        return 422
    if isinstance(err, TemplateNotFound):
        return 404
    return 400


def _error_body(err: QbridgeError) -> dict:
    body = {"stage": err.stage or "internal", "message": err.message}
    line = getattr(err, "line", None)
    column = getattr(err, "column", None)
    if line is not None:
        body["line"] = line
    if column is not None:
        body["column"] = column
    return body


class _BadRequest(QbridgeError):
    stage = "request"


def _field(body: dict, name: str, types, required: bool = True, default=None):
    if name not in body:
        if required:
            raise _BadRequest(f"missing field {name!r}")
        return default
    value = body[name]
    if not isinstance(value, types) or isinstance(value, bool) and types is not bool:
        raise _BadRequest(f"field {name!r} has wrong type")
    return value


def _run_options(body: dict) -> RunOptions:
    shots = _field(body, "shots", int, required=False, default=0)
    seed = _field(body, "seed", int, required=False)
    snapshots = body.get("snapshots", False)
    if not isinstance(snapshots, bool):
        raise _BadRequest("field 'snapshots' has wrong type")
    try:
        return RunOptions(shots=shots, seed=seed, capture_snapshots=snapshots)
    except ValueError as e:
        raise _BadRequest(str(e)) from None


def _input_circuit(body: dict):
    """Accept {"dialect","source"} or a pre-built {"ir": <IR JSON>}."""
    if "ir" in body:
        try:
            return circuit_from_json(_field(body, "ir", dict))
        except QbridgeError as e:
            raise tag_stage(e, "parse")
    source = _field(body, "source", str)
    dialect = _field(body, "dialect", str, required=False)
    from .frontends import detect_dialect

    try:
        if dialect is None:
            dialect = detect_dialect(source)
        circuit = parse(dialect, source)
        return expand_macros(circuit)
    except QbridgeError as e:
        raise tag_stage(e, "parse")


def _handle_health(_body) -> dict:
    return {"status": "ok", "version": _version}


def _handle_examples(_body) -> list:
    return [
        {"name": e.name, "dialect": e.dialect, "description": e.description,
         "source": e.source}
        for e in examples_catalog()
    ]


def _make_handlers(user_templates_dir):
    def handle_templates(_body) -> list:
        return [
            {
                "name": t.name,
                "description": t.description,
                "builtin": t.builtin,
                "files": sorted(t.files),
                "variables": t.variables,
            }
            for t in list_templates(user_templates_dir)
        ]

    def handle_parse(body: dict) -> dict:
        return circuit_to_json(_input_circuit(body))

    def handle_emit(body: dict) -> dict:
        circuit = circuit_from_json(_field(body, "ir", dict))
        target = _field(body, "target", str)
        try:
            lowered = decompose_for(expand_macros(circuit), target)
        except QbridgeError as e:
            raise tag_stage(e, "decompose")
        try:
            return {"code": emit(lowered, target)}
        except QbridgeError as e:
            raise tag_stage(e, "emit")

    def handle_convert(body: dict) -> dict:
        source = _field(body, "source", str)
        target = _field(body, "to", str)
        source_dialect = _field(body, "from", str, required=False)
        if source_dialect is None:
            from .frontends import detect_dialect

            try:
                source_dialect = detect_dialect(source)
            except QbridgeError as e:
                raise tag_stage(e, "detect")
        return {"code": convert(source_dialect, target, source)}

    def handle_simulate(body: dict) -> dict:
        options = _run_options(body)
        if "ir" in body:
            circuit = _input_circuit(body)
            try:
                return result_to_json(simulate(circuit, options))
            except QbridgeError as e:
                raise tag_stage(e, "simulate")
        source = _field(body, "source", str)
        dialect = _field(body, "dialect", str, required=False)
        return result_to_json(run_source(source, dialect, options))

    def handle_new_project(body: dict) -> dict:
        template = _field(body, "template", str)
        dest = _field(body, "dest", str)
        variables = _field(body, "vars", dict, required=False, default={})
        if not all(
            isinstance(k, str) and isinstance(v, str) for k, v in variables.items()
        ):
            raise _BadRequest("field 'vars' must map strings to strings")
        created = new_project(template, dest, variables, user_templates_dir)
        return {"created": [str(p) for p in created]}

    return {
        ("GET", "/health"): _handle_health,
        ("GET", "/examples"): _handle_examples,
        ("GET", "/templates"): handle_templates,
        ("POST", "/parse"): handle_parse,
        ("POST", "/emit"): handle_emit,
        ("POST", "/convert"): handle_convert,
        ("POST", "/simulate"): handle_simulate,
        ("POST", "/new-project"): handle_new_project,
    }


class _Handler(BaseHTTPRequestHandler):
    server_version = f"qbridge/{_version}"
    routes: dict = {}
    ui_dir: Path | None = None

    def log_message(self, fmt, *args):  # default spams stderr
        log.debug("%s - %s", self.address_string(), fmt % args)

    def _send_json(self, status: int, payload) -> None:
        data = json.dumps(payload).encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(data)))
        self._cors()
        self.end_headers()
        self.wfile.write(data)

    def _cors(self) -> None:
        self.send_header("Access-Control-Allow-Origin", "*")
        self.send_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS")
        self.send_header("Access-Control-Allow-Headers", "Content-Type")

    def do_OPTIONS(self):
        self.send_response(204)
        self._cors()
        self.end_headers()

    def do_GET(self):
        self._dispatch("GET")

    def do_POST(self):
        self._dispatch("POST")

    def _dispatch(self, method: str) -> None:
        path = self.path.split("?", 1)[0]
        handler = self.routes.get((method, path))
        if handler is None:
            if method == "GET" and self._serve_static(path):
                return
            if any(route_path == path for _, route_path in self.routes):
                self._send_json(
                    405, {"stage": "request", "message": f"method {method} not allowed"}
                )
                return
            self._send_json(
                404, {"stage": "request", "message": f"no such endpoint {path!r}"}
            )
            return
        body = {}
        if method == "POST":
            length = int(self.headers.get("Content-Length") or 0)
            raw = self.rfile.read(length) if length else b""
            if raw:
                try:
                    body = json.loads(raw.decode("utf-8"))
                except (json.JSONDecodeError, UnicodeDecodeError) as e:
                    self._send_json(
                        400, {"stage": "request", "message": f"invalid JSON body: {e}"}
                    )
                    return
            if not isinstance(body, dict):
                self._send_json(
                    400, {"stage": "request", "message": "request body must be an object"}
                )
                return
        try:
            payload = handler(body)
        except QbridgeError as e:
            self._send_json(_status_for(e), _error_body(e))
            return
        except Exception:  # noqa: BLE001 - boundary
            log.exception("internal error handling %s %s", method, path)
            self._send_json(
                500, {"stage": "internal", "message": "internal server error"}
            )
            return
        self._send_json(200, payload)

    def _serve_static(self, path: str) -> bool:
        if self.ui_dir is None:
            return False
        rel = path.lstrip("/") or "index.html"
        target = (self.ui_dir / rel).resolve()
        root = self.ui_dir.resolve()
        if root != target and root not in target.parents:
            return False
        if not target.is_file():
            return False
        data = target.read_bytes()
        self.send_response(200)
        ctype = _UI_TYPES.get(target.suffix, "application/octet-stream")
        self.send_header("Content-Type", ctype)
        self.send_header("Content-Length", str(len(data)))
        self._cors()
        self.end_headers()
        self.wfile.write(data)
        return True


@dataclass
class ServiceHandle:
    server: ThreadingHTTPServer
    thread: threading.Thread

    @property
    def port(self) -> int:
        return self.server.server_address[1]

    @property
    def url(self) -> str:
        host = self.server.server_address[0]
        return f"http://{host}:{self.port}"

    def close(self) -> None:
        self.server.shutdown()
        self.thread.join(timeout=5)
        self.server.server_close()


def serve(
    bind_address: str = "127.0.0.1",
    port: int = 8077,
    user_templates_dir=None,
    ui_dir: str | Path | None = None,
) -> ServiceHandle:
    """Start the service in a background thread; returns a closable handle."""

    class Handler(_Handler):
        routes = _make_handlers(user_templates_dir)

    Handler.ui_dir = Path(ui_dir) if ui_dir else None
    server = ThreadingHTTPServer((bind_address, port), Handler)
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    return ServiceHandle(server=server, thread=thread)
