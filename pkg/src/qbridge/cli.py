"""Command-line entry point.

Results go to stdout, diagnostics to stderr. Exit codes: 0 success, 1 user
error (parse/unsupported/simulation), 2 usage error (argparse default).
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import __version__
from .codegen import TARGET_DIALECTS, convert
from .errors import QbridgeError, format_error
from .examples_catalog import examples_catalog, get_example
from .frontends import SOURCE_DIALECTS
from .runner import run_report, run_source
from .scaffold import list_templates, new_project, resolve_user_dir, save_as_template
from .simulator import RunOptions


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qbridge",
        description="Parse, convert, simulate and scaffold quantum circuit projects.",
    )
    parser.add_argument("--version", action="version", version=f"qbridge {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="simulate a source file and report probabilities")
    run.add_argument("file", help="source file, or - for stdin")
    run.add_argument("--dialect", choices=SOURCE_DIALECTS, help="skip auto-detection")
    run.add_argument("--shots", type=int, default=0, help="samples to draw (0 = exact)")
    run.add_argument("--seed", type=int, default=None, help="PRNG seed for shot runs")
    run.add_argument("--json", action="store_true", help="emit the SimResult JSON")
    run.add_argument(
        "--snapshots", action="store_true", help="capture per-moment qubit marginals"
    )

    conv = sub.add_parser("convert", help="convert a source file to another dialect")
    conv.add_argument("file", help="source file, or - for stdin")
    conv.add_argument(
        "--from", dest="source_dialect", choices=SOURCE_DIALECTS,
        help="source dialect (default: detect)",
    )
    conv.add_argument(
        "--to", dest="target", choices=TARGET_DIALECTS, required=True,
        help="target dialect",
    )
    conv.add_argument("-o", "--output", help="write here instead of stdout")

    new = sub.add_parser("new", help="create a project from a template")
    new.add_argument("template")
    new.add_argument("dir")
    new.add_argument(
        "--var", action="append", default=[], metavar="K=V",
        help="template variable (repeatable)",
    )
    new.add_argument("--templates-dir", help="user template root")

    tpl = sub.add_parser("templates", help="list templates or save a new one")
    tpl_sub = tpl.add_subparsers(dest="templates_command")
    tpl_list = tpl_sub.add_parser("list", help="list available templates")
    tpl_list.add_argument("--templates-dir", help="user template root")
    tpl_save = tpl_sub.add_parser("save", help="save a directory as a template")
    tpl_save.add_argument("dir")
    tpl_save.add_argument("name")
    tpl_save.add_argument("--templates-dir", help="user template root")

    srv = sub.add_parser("serve", help="start the local JSON API / designer service")
    srv.add_argument("--port", type=int, default=8077)
    srv.add_argument("--bind", default="127.0.0.1")
    srv.add_argument("--templates-dir", help="user template root")
    srv.add_argument("--ui-dir", help="static designer UI directory")

    ex = sub.add_parser("examples", help="list or show built-in example programs")
    ex_sub = ex.add_subparsers(dest="examples_command")
    ex_sub.add_parser("list", help="list example names")
    ex_show = ex_sub.add_parser("show", help="print an example's source")
    ex_show.add_argument("name")

    return parser


def _read_source(path: str) -> tuple[str, str | None]:
    if path == "-":
        return sys.stdin.read(), None
    return Path(path).read_text(encoding="utf-8"), path


def _cmd_run(args) -> int:
    source, hint = _read_source(args.file)
    options = RunOptions(
        shots=args.shots, seed=args.seed, capture_snapshots=args.snapshots
    )
    result = run_source(source, args.dialect, options, filename_hint=hint)
    sys.stdout.write(run_report(result, "json" if args.json else "plain"))
    if args.json:
        sys.stdout.write("\n")
    return 0


def _cmd_convert(args) -> int:
    source, hint = _read_source(args.file)
    dialect = args.source_dialect
    if dialect is None:
        from .frontends import detect_dialect

        dialect = detect_dialect(source, hint)
    code = convert(dialect, args.target, source)
    if args.output:
        Path(args.output).write_text(code, encoding="utf-8")
    else:
        sys.stdout.write(code)
        if not code.endswith("\n"):
            sys.stdout.write("\n")
    return 0


def _cmd_new(args) -> int:
    variables = {}
    for item in args.var:
        if "=" not in item:
            print(f"usage error: --var expects K=V, got {item!r}", file=sys.stderr)
            return 2
        key, _, value = item.partition("=")
        variables[key] = value
    created = new_project(
        args.template, args.dir, variables, resolve_user_dir(args.templates_dir)
    )
    for path in created:
        print(path)
    return 0


def _cmd_templates(args) -> int:
    if args.templates_command in (None, "list"):
        templates_dir = getattr(args, "templates_dir", None)
        for template in list_templates(resolve_user_dir(templates_dir)):
            origin = "built-in" if template.builtin else "user"
            print(f"{template.name}\t{origin}\t{template.description}")
        return 0
    user_dir = resolve_user_dir(args.templates_dir)
    if user_dir is None:
        print(
            "usage error: saving needs --templates-dir or QBRIDGE_TEMPLATES_DIR",
            file=sys.stderr,
        )
        return 2
    template = save_as_template(args.dir, args.name, user_dir)
    print(f"saved template {template.name} ({len(template.files)} files)")
    return 0


def _cmd_serve(args) -> int:
    from .service import serve

    ui_dir = args.ui_dir
    if ui_dir is None and Path("frontend/dist/index.html").is_file():
        ui_dir = "frontend/dist"
    handle = serve(
        args.bind,
        args.port,
        user_templates_dir=resolve_user_dir(args.templates_dir),
        ui_dir=ui_dir,
    )
    print(f"qbridge service listening on {handle.url}", file=sys.stderr)
    if ui_dir:
        print(f"designer UI from {ui_dir}", file=sys.stderr)
    try:
        handle.thread.join()
    except KeyboardInterrupt:
        print("shutting down", file=sys.stderr)
        handle.close()
    return 0


def _cmd_examples(args) -> int:
    if args.examples_command in (None, "list"):
        for example in examples_catalog():
            print(f"{example.name}\t{example.dialect}\t{example.description}")
        return 0
    try:
        example = get_example(args.name)
    except KeyError:
        print(f"error: no example named {args.name!r}", file=sys.stderr)
        return 1
    sys.stdout.write(example.source)
    return 0


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    parser = _build_parser()
    args = parser.parse_args(argv)
    commands = {
        "run": _cmd_run,
        "convert": _cmd_convert,
        "new": _cmd_new,
        "templates": _cmd_templates,
        "serve": _cmd_serve,
        "examples": _cmd_examples,
    }
    try:
        return commands[args.command](args)
    except QbridgeError as e:
        print(format_error(e), file=sys.stderr)
        return 1
    except FileNotFoundError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
