"""Template listing, instantiation, and save-as-template round trips."""
import json

import pytest

from qbridge.errors import (
    DestinationNotEmpty,
    MissingVariable,
    NameCollision,
    TemplateNotFound,
)
from qbridge.scaffold import (
    ProjectTemplate,
    list_templates,
    new_project,
    save_as_template,
    find_template,
)


def test_builtins_present():
    names = {t.name for t in list_templates()}
    assert "qiskit-hello-world" in names
    assert "openqasm-starter" in names


def test_user_templates_union(tmp_path):
    custom = tmp_path / "my-qft"
    custom.mkdir()
    (custom / "template.json").write_text(
        json.dumps({"name": "my-qft", "description": "d", "variables": {}})
    )
    (custom / "circuit.qasm").write_text("OPENQASM 2.0;\n")
    names = {t.name for t in list_templates(tmp_path)}
    assert "my-qft" in names and "qiskit-hello-world" in names


def test_malformed_user_template_skipped_with_warning(tmp_path, caplog):
    bad = tmp_path / "broken"
    bad.mkdir()
    (bad / "template.json").write_text("{not json")
    with caplog.at_level("WARNING"):
        names = {t.name for t in list_templates(tmp_path)}
    assert "broken" not in names
    assert any("skipping invalid template" in r.message for r in caplog.records)


def test_new_project_substitutes_placeholders(tmp_path):
    dest = tmp_path / "demo"
    created = new_project("qiskit-hello-world", dest, {"project_name": "demo"})
    assert created == sorted(created)
    assert (dest / "main.py").exists()
    assert (dest / "README.md").exists()
    for path in created:
        assert "#{" not in path.read_text()
    assert "# demo - Bell state hello world" in (dest / "main.py").read_text()
    assert not (dest / "template.json").exists()


def test_template_not_found(tmp_path):
    with pytest.raises(TemplateNotFound):
        new_project("does-not-exist", tmp_path / "x", {})


def test_destination_not_empty(tmp_path):
    dest = tmp_path / "busy"
    dest.mkdir()
    (dest / "file").write_text("x")
    with pytest.raises(DestinationNotEmpty):
        new_project("qiskit-hello-world", dest, {})


def test_missing_variable_and_cleanup(tmp_path):
    troot = tmp_path / "templates"
    src = troot / "needy"
    src.mkdir(parents=True)
    (src / "template.json").write_text(
        json.dumps({"name": "needy", "description": "", "variables": {}})
    )
    (src / "a.txt").write_text("fine")
    (src / "b.txt").write_text("hello #{who}")
    dest = tmp_path / "out"
    with pytest.raises(MissingVariable):
        new_project("needy", dest, {}, user_dir=troot)
    assert not dest.exists()  # atomic-by-cleanup
    created = new_project("needy", dest, {"who": "world"}, user_dir=troot)
    assert (dest / "b.txt").read_text() == "hello world"
    assert len(created) == 2


def test_engine_defaults(tmp_path):
    dest = tmp_path / "proj"
    new_project("openqasm-starter", dest, {})
    text = (dest / "README.md").read_text()
    assert "# proj" in text  # project_name defaults to the directory name


def test_hostile_template_paths_rejected(tmp_path):
    hostile = ProjectTemplate(
        name="evil", description="", files={"../escape.txt": "boom"}
    )
    import qbridge.scaffold as scaffold

    originals = scaffold.builtin_templates
    scaffold.builtin_templates = lambda: [hostile]
    try:
        with pytest.raises(ValueError, match="escapes"):
            new_project("evil", tmp_path / "dest", {})
        assert not (tmp_path / "escape.txt").exists()
    finally:
        scaffold.builtin_templates = originals


def test_save_then_instantiate_round_trip(tmp_path):
    src = tmp_path / "project"
    (src / "sub").mkdir(parents=True)
    (src / "main.qasm").write_text("OPENQASM 2.0;\nqreg q[1];\n")
    (src / "sub" / "notes.md").write_text("# notes\nplain text\n")
    (src / ".git").mkdir()
    (src / ".git" / "junk").write_text("ignored")
    troot = tmp_path / "templates"
    troot.mkdir()

    template = save_as_template(src, "my-qft", troot)
    assert set(template.files) == {"main.qasm", "sub/notes.md"}

    dest = tmp_path / "fresh"
    new_project("my-qft", dest, {}, user_dir=troot)
    assert (dest / "main.qasm").read_bytes() == (src / "main.qasm").read_bytes()
    assert (dest / "sub" / "notes.md").read_bytes() == (
        src / "sub" / "notes.md"
    ).read_bytes()
    assert not (dest / ".git").exists()


def test_save_name_collisions(tmp_path):
    src = tmp_path / "src"
    src.mkdir()
    (src / "f.txt").write_text("x")
    troot = tmp_path / "templates"
    troot.mkdir()
    with pytest.raises(NameCollision):
        save_as_template(src, "qiskit-hello-world", troot)
    save_as_template(src, "mine", troot)
    with pytest.raises(NameCollision):
        save_as_template(src, "mine", troot)
    with pytest.raises(NameCollision):
        save_as_template(src, "Bad_Name", troot)


def test_save_empty_source(tmp_path):
    src = tmp_path / "empty"
    src.mkdir()
    troot = tmp_path / "templates"
    troot.mkdir()
    from qbridge.errors import EmptySource

    with pytest.raises(EmptySource):
        save_as_template(src, "nothing", troot)


def test_env_var_selects_user_root(tmp_path, monkeypatch):
    custom = tmp_path / "via-env" / "envy"
    custom.mkdir(parents=True)
    (custom / "template.json").write_text(
        json.dumps({"name": "envy", "description": "", "variables": {}})
    )
    (custom / "x.txt").write_text("x")
    monkeypatch.setenv("QBRIDGE_TEMPLATES_DIR", str(tmp_path / "via-env"))
    from qbridge.scaffold import resolve_user_dir

    assert find_template("envy", resolve_user_dir(None)).name == "envy"
