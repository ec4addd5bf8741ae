"""Command-line entry point: validate scenarios, replay scripts, step
interactively, or serve the HTTP API.

Exit codes: 0 success, 1 domain error (diagnostics printed one per line as
``file:line:col code message``), 2 unreadable input file. All output is
byte-stable for fixed inputs.
"""

from __future__ import annotations

import json
import socket
import sys
from pathlib import Path

import click

from .engine import Session, StateDiff, new_session
from .model import EmotionKind, StorymoodError, face_label, primary_emotion
from .reaction import (
    DEFAULT_REACTIONS,
    ReactionSet,
    materialize_reaction_set,
    parse_matrix_file,
)
from .scenario_io import ParseError, ScriptLine, parse_scenario, parse_script

# Terminal stand-ins for the face images, one glyph per face index.
HAPPINESS_FACES = (":'-(", ":-((", ":-(", ":-[", ":-/", ":-|", ":-.", ":-)", ":-))", ":-D", "\\o/")
ANGER_FACES = (":-|", ":-/", ">:-|", ">:-(", ">:-((", ">:-@")
PRIDE_FACES = ("o_o;", ":-$", ":-[", ":-<", ":-,", ":-|", ":-^", ":->", ":-]", "^-^", "B-)")

_FACE_SETS = {
    EmotionKind.HAPPINESS: HAPPINESS_FACES,
    EmotionKind.ANGER: ANGER_FACES,
    EmotionKind.PRIDE: PRIDE_FACES,
}


def _read_text(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        click.echo(f"error: cannot read {path}: {exc.strerror}", err=True)
        sys.exit(2)


def _print_diagnostics(path: str, exc: ParseError) -> None:
    for d in exc.diagnostics:
        click.echo(f"{path}:{d.line}:{d.column} {d.code} {d.message}")


def _load_scenario(path: str, strict_agents: bool):
    text = _read_text(path)
    try:
        return parse_scenario(text, strict_agents=strict_agents)
    except ParseError as exc:
        _print_diagnostics(path, exc)
        sys.exit(1)


def _load_script(path: str) -> list[ScriptLine]:
    text = _read_text(path)
    try:
        return parse_script(text)
    except ParseError as exc:
        _print_diagnostics(path, exc)
        sys.exit(1)


def _load_reactions(overrides: tuple[str, ...]) -> ReactionSet:
    if not overrides:
        return DEFAULT_REACTIONS
    grids = {}
    for spec_arg in overrides:
        slot, sep, path = spec_arg.partition("=")
        if not sep or not slot or not path:
            click.echo(f"error: --matrix-override expects <slot>=<file>, got {spec_arg!r}", err=True)
            sys.exit(1)
        text = _read_text(path)
        try:
            grids[slot] = parse_matrix_file(text)
        except StorymoodError as exc:
            click.echo(f"error: {path}: {exc}", err=True)
            sys.exit(1)
    try:
        return materialize_reaction_set(grids)
    except StorymoodError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)


# ---------------------------------------------------------------------------
# Rendering
# ---------------------------------------------------------------------------


def _face_cell(kind: EmotionKind, value: int) -> str:
    label = face_label(kind, value)
    glyph = _FACE_SETS[kind][label.face_index]
    return f"{glyph:<5} {kind.value}={value:+d} ({label.label}) [f{label.face_index}]"


def _faces_lines(session: Session) -> list[str]:
    lines = []
    for agent_id, vector in sorted(session.state.items()):
        cells = "  ".join(
            _face_cell(kind, vector.component(kind)) for kind in EmotionKind
        )
        primary = primary_emotion(vector)
        lines.append(f"{agent_id:<12} {cells}  primary={primary.kind.value}")
    return lines


def _diff_lines(diff: StateDiff) -> list[str]:
    lines = [f"seq {diff.seq}: {diff.occurrence.to_dsl()}"]
    changed = False
    for agent_id, agent_diff in diff.agents.items():
        parts = []
        for kind in EmotionKind:
            before = agent_diff.before.component(kind)
            after = agent_diff.after.component(kind)
            delta = getattr(agent_diff.delta, kind.value)
            if before != after or delta != 0:
                parts.append(f"{kind.value} {before:+d} -> {after:+d} (delta {delta:+d})")
        if parts:
            changed = True
            lines.append(f"  {agent_id:<12} " + "  ".join(parts))
    if not changed:
        lines.append("  (no reaction)")
    return lines


def _table_lines(session: Session, diffs: list[StateDiff]) -> list[str]:
    lines = [f"{'seq':<5}{'agent':<14}{'happiness':>10}{'anger':>7}{'pride':>7}"]
    for diff in diffs:
        for agent_id, agent_diff in diff.agents.items():
            lines.append(
                f"{diff.seq:<5}{agent_id:<14}"
                f"{agent_diff.after.happiness:>10}{agent_diff.after.anger:>7}{agent_diff.after.pride:>7}"
            )
    lines.append("")
    lines.append("final")
    lines.append(f"{'':<5}{'agent':<14}{'happiness':>10}{'anger':>7}{'pride':>7}  primary")
    for agent_id, vector in sorted(session.state.items()):
        primary = primary_emotion(vector)
        lines.append(
            f"{'':<5}{agent_id:<14}{vector.happiness:>10}{vector.anger:>7}{vector.pride:>7}"
            f"  {primary.kind.value} ({primary.label})"
        )
    return lines


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


@click.group()
@click.version_option(package_name="storymood")
def main() -> None:
    """Deterministic emotion simulator for story characters."""


_strict_option = click.option(
    "--strict-agents/--no-strict-agents",
    default=True,
    show_default=True,
    help="Keep the 2..4 agent bound (relaxed allows up to 8).",
)

_override_option = click.option(
    "--matrix-override",
    "overrides",
    multiple=True,
    metavar="<slot>=<file>",
    help="Replace one reaction matrix slot with a grid file (repeatable).",
)


@main.command("validate")
@click.argument("scenario_path", type=click.Path())
@_strict_option
def cmd_validate(scenario_path: str, strict_agents: bool) -> None:
    """Validate a scenario document; print OK or all diagnostics."""
    _load_scenario(scenario_path, strict_agents)
    click.echo("OK")


@main.command("run")
@click.argument("scenario_path", type=click.Path())
@click.argument("script_path", type=click.Path())
@click.option(
    "--format", "fmt",
    type=click.Choice(["json", "table", "faces"]),
    default="json",
    show_default=True,
)
@_strict_option
@_override_option
def cmd_run(
    scenario_path: str, script_path: str, fmt: str,
    strict_agents: bool, overrides: tuple[str, ...],
) -> None:
    """Replay a script against a scenario and print every step plus the
    final emotional map."""
    scenario = _load_scenario(scenario_path, strict_agents)
    script = _load_script(script_path)
    reactions = _load_reactions(overrides)

    session = new_session(scenario, reactions=reactions)
    diffs: list[StateDiff] = []
    for entry in script:
        try:
            diffs.append(session.apply(entry.occurrence))
        except StorymoodError as exc:
            click.echo(f"{script_path}:{entry.line}: {exc}", err=True)
            sys.exit(1)

    if fmt == "json":
        doc = {
            "steps": [diff.as_dict() for diff in diffs],
            "final_map": session.emotional_map(),
        }
        click.echo(json.dumps(doc, indent=2))
    elif fmt == "table":
        click.echo("\n".join(_table_lines(session, diffs)))
    else:
        for diff in diffs:
            click.echo("\n".join(_diff_lines(diff)))
        click.echo("final map")
        click.echo("\n".join(_faces_lines(session)))


def _repl_lines():
    interactive = sys.stdin.isatty()
    while True:
        if interactive:
            try:
                yield input("storymood> ")
            except EOFError:
                return
        else:
            line = sys.stdin.readline()
            if not line:
                return
            yield line.rstrip("\n")


@main.command("repl")
@click.argument("scenario_path", type=click.Path())
@_strict_option
@_override_option
def cmd_repl(scenario_path: str, strict_agents: bool, overrides: tuple[str, ...]) -> None:
    """Apply occurrences read from standard input, one script line at a
    time; built-ins: undo, map, quit."""
    scenario = _load_scenario(scenario_path, strict_agents)
    session = new_session(scenario, reactions=_load_reactions(overrides))

    for raw in _repl_lines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line == "quit":
            return
        if line == "map":
            click.echo(json.dumps(session.emotional_map(), indent=2))
            continue
        if line == "undo":
            try:
                diff = session.undo()
            except StorymoodError as exc:
                click.echo(f"error: {exc}")
                continue
            click.echo(f"undid seq {diff.seq}: {diff.occurrence.to_dsl()}")
            click.echo("\n".join(_faces_lines(session)))
            continue
        try:
            parsed = parse_script(line)
        except ParseError as exc:
            for d in exc.diagnostics:
                click.echo(f"error: {d.column}: {d.code} {d.message}")
            continue
        if not parsed:
            continue
        try:
            diff = session.apply(parsed[0].occurrence)
        except StorymoodError as exc:
            click.echo(f"error: {exc}")
            continue
        click.echo("\n".join(_diff_lines(diff)))
        click.echo("\n".join(_faces_lines(session)))


@main.command("serve")
@click.argument("scenario_dir", type=click.Path(), required=False)
@click.option("--port", default=8077, show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option(
    "--ui-dir", type=click.Path(), default=None,
    help="Directory with the built UI bundle to serve at / (defaults to ./frontend/dist when present).",
)
@_strict_option
@_override_option
def cmd_serve(
    scenario_dir: str | None, port: int, host: str, ui_dir: str | None,
    strict_agents: bool, overrides: tuple[str, ...],
) -> None:
    """Start the HTTP session API (and the UI, when a bundle is present)."""
    import uvicorn

    from .service import create_app

    if ui_dir is None:
        default_ui = Path("frontend") / "dist"
        if default_ui.is_dir():
            ui_dir = str(default_ui)

    probe = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
    try:
        probe.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEADDR, 1)
        probe.bind((host, port))
    except OSError as exc:
        click.echo(f"error: cannot bind {host}:{port}: {exc.strerror}", err=True)
        sys.exit(1)
    finally:
        probe.close()

    app = create_app(
        scenario_dir=scenario_dir,
        ui_dir=ui_dir,
        reactions=_load_reactions(overrides),
        strict_agents=strict_agents,
    )
    uvicorn.run(app, host=host, port=port, log_level="warning")


if __name__ == "__main__":
    main()
