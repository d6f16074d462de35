"""Project creation from built-in or user-defined templates.

A template is a directory holding a ``template.json`` manifest
(``{"name", "description", "variables": {name: default}}``) next to the files
to instantiate. File contents may reference ``#{project_name}``, ``#{author}``,
``#{date_iso}`` or any variable the manifest declares. ``project_name`` and
``date_iso`` have engine-level defaults (destination directory name, today).
"""
from __future__ import annotations

import datetime as _dt
import json
import logging
import os
import re
import shutil
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .errors import (
    DestinationNotEmpty,
    EmptySource,
    MissingVariable,
    NameCollision,
    TemplateNotFound,
)

log = logging.getLogger(__name__)

MANIFEST = "template.json"
TEMPLATES_DIR_ENV = "QBRIDGE_TEMPLATES_DIR"

_NAME_RE = re.compile(r"^[a-z0-9-]+$")
_PLACEHOLDER_RE = re.compile(r"#\{([A-Za-z_][A-Za-z0-9_]*)\}")

#: copied neither by save_as_template nor treated as template content
IGNORED_NAMES = {".git", ".hg", ".svn", "__pycache__", "node_modules", ".venv",
                 "venv", "build", "dist", ".pytest_cache", ".mypy_cache"}
IGNORED_SUFFIXES = {".pyc", ".pyo"}


@dataclass(frozen=True)
class ProjectTemplate:
    name: str
    description: str
    files: dict[str, str]  # relative posix path -> content with placeholders
    variables: dict[str, str] = field(default_factory=dict)  # defaults
    builtin: bool = False


def _safe_relpath(rel: str) -> bool:
    parts = Path(rel).parts
    return (
        bool(parts)
        and not Path(rel).is_absolute()
        and ".." not in parts
        and not rel.startswith(("/", "\\"))
        and ":" not in rel
    )


def _load_template_dir(root: Path, builtin: bool = False) -> ProjectTemplate:
    manifest_path = root / MANIFEST
    meta = json.loads(manifest_path.read_text(encoding="utf-8"))
    name = meta.get("name", root.name)
    if not isinstance(name, str) or not _NAME_RE.match(name):
        raise ValueError(f"bad template name {name!r}")
    description = meta.get("description", "")
    variables = meta.get("variables", {})
    if not isinstance(variables, dict) or not all(
        isinstance(k, str) and isinstance(v, str) for k, v in variables.items()
    ):
        raise ValueError("template variables must map names to string defaults")
    files: dict[str, str] = {}
    for path in sorted(root.rglob("*")):
        if path.is_dir():
            continue
        if any(part in IGNORED_NAMES for part in path.relative_to(root).parts):
            continue
        if path.suffix in IGNORED_SUFFIXES:
            continue
        rel = path.relative_to(root).as_posix()
        if rel == MANIFEST:
            continue
        if not _safe_relpath(rel):
            raise ValueError(f"unsafe path {rel!r} in template")
        files[rel] = path.read_text(encoding="utf-8")
    return ProjectTemplate(
        name=name,
        description=str(description),
        files=files,
        variables=dict(variables),
        builtin=builtin,
    )


def _builtin_root() -> Path:
    return Path(str(resources.files("qbridge") / "templates"))


def builtin_templates() -> list[ProjectTemplate]:
    root = _builtin_root()
    out = []
    for child in sorted(root.iterdir()):
        if child.is_dir() and (child / MANIFEST).exists():
            out.append(_load_template_dir(child, builtin=True))
    return out


def resolve_user_dir(user_dir: str | os.PathLike | None) -> Path | None:
    if user_dir is not None:
        return Path(user_dir)
    env = os.environ.get(TEMPLATES_DIR_ENV)
    return Path(env) if env else None


def list_templates(user_dir: str | os.PathLike | None = None) -> list[ProjectTemplate]:
    """Built-ins plus valid user templates; broken user templates are skipped
    with a warning, never fatal."""
    templates = builtin_templates()
    seen = {t.name for t in templates}
    root = resolve_user_dir(user_dir)
    if root is not None and root.is_dir():
        for child in sorted(root.iterdir()):
            if not child.is_dir():
                continue
            try:
                template = _load_template_dir(child)
            except Exception as e:
                log.warning("skipping invalid template %s: %s", child, e)
                continue
            if template.name in seen:
                log.warning(
                    "skipping user template %s: name collides with an existing one",
                    child,
                )
                continue
            seen.add(template.name)
            templates.append(template)
    return templates


def find_template(
    name: str, user_dir: str | os.PathLike | None = None
) -> ProjectTemplate:
    for template in list_templates(user_dir):
        if template.name == name:
            return template
    raise TemplateNotFound(name)


def _substitute(text: str, values: dict[str, str]) -> str:
    def repl(match: re.Match) -> str:
        key = match.group(1)
        if key not in values:
            raise MissingVariable(key)
        return values[key]

    return _PLACEHOLDER_RE.sub(repl, text)


def new_project(
    template_name: str,
    dest: str | os.PathLike,
    variables: dict[str, str] | None = None,
    user_dir: str | os.PathLike | None = None,
) -> list[Path]:
    """Instantiate a template into `dest`; returns created file paths sorted.

    On any failure every file written so far is removed (atomic-by-cleanup).
    """
    template = find_template(template_name, user_dir)
    dest_path = Path(dest)
    if dest_path.exists():
        if not dest_path.is_dir() or any(dest_path.iterdir()):
            raise DestinationNotEmpty(f"destination {dest_path} is not empty")
        created_dest = False
    else:
        created_dest = True

    values = {
        "project_name": dest_path.name,
        "date_iso": _dt.date.today().isoformat(),
    }
    values.update(template.variables)
    values.update(variables or {})

    created: list[Path] = []
    created_dirs: list[Path] = []
    try:
        if created_dest:
            dest_path.mkdir(parents=True)
            created_dirs.append(dest_path)
        resolved_dest = dest_path.resolve()
        for rel in sorted(template.files):
            content = _substitute(template.files[rel], values)
            target = dest_path / Path(rel)
            if resolved_dest not in target.resolve().parents:
                raise ValueError(f"template path {rel!r} escapes the destination")
            for parent in reversed(target.parents):
                if (
                    resolved_dest in parent.resolve().parents
                    and not parent.exists()
                ):
                    parent.mkdir()
                    created_dirs.append(parent)
            target.write_text(content, encoding="utf-8")
            created.append(target)
    except BaseException:
        for path in reversed(created):
            path.unlink(missing_ok=True)
        for directory in reversed(created_dirs):
            shutil.rmtree(directory, ignore_errors=True)
        raise
    return sorted(created)


def save_as_template(
    src_dir: str | os.PathLike,
    name: str,
    user_dir: str | os.PathLike,
    description: str = "",
) -> ProjectTemplate:
    """Copy a project into the user template root under `name`.

    Round trip: instantiating the saved template reproduces the saved files
    byte-for-byte when no placeholders are present.
    """
    src = Path(src_dir)
    if not src.is_dir():
        raise EmptySource(f"source directory {src} does not exist")
    if not _NAME_RE.match(name):
        raise NameCollision(f"template name {name!r} must match [a-z0-9-]+")
    if any(t.name == name for t in builtin_templates()):
        raise NameCollision(f"template name {name!r} collides with a built-in")
    root = Path(user_dir)
    target_dir = root / name
    if target_dir.exists():
        raise NameCollision(f"template {name!r} already exists in {root}")

    files: dict[str, str] = {}
    for path in sorted(src.rglob("*")):
        if path.is_dir():
            continue
        rel_parts = path.relative_to(src).parts
        if any(part in IGNORED_NAMES for part in rel_parts):
            continue
        if path.suffix in IGNORED_SUFFIXES:
            continue
        rel = path.relative_to(src).as_posix()
        if rel == MANIFEST:
            continue
        try:
            files[rel] = path.read_text(encoding="utf-8")
        except UnicodeDecodeError:
            log.warning("skipping non-text file %s", path)
    if not files:
        raise EmptySource(f"no template-eligible files under {src}")

    target_dir.mkdir(parents=True)
    manifest = {"name": name, "description": description, "variables": {}}
    (target_dir / MANIFEST).write_text(
        json.dumps(manifest, indent=2) + "\n", encoding="utf-8"
    )
    for rel, content in files.items():
        target = target_dir / Path(rel)
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text(content, encoding="utf-8")
    return ProjectTemplate(name=name, description=description, files=files)
