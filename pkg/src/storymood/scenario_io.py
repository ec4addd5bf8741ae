"""Scenario document format and the occurrence-script DSL.

Scenario documents are JSON with a fixed key order (version, agents,
affections, events, objects, actions). Scripts are line-oriented: one
occurrence per line, ``#`` comment lines, blank lines ignored:

    event  <event_id>  to <agent_id>
    object <object_id> to <agent_id>
    action <action_id> by <agent_id> on <agent_id>
    affection <agent_id> -> <agent_id> = <int>

Both parsers collect every diagnostic they can find instead of stopping at
the first, and every diagnostic carries a 1-based line and column.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Sequence

from .engine import ActionBy, AffectionEdit, EventTo, ObjectTo, Occurrence
from .model import (
    Agent,
    AvatarDescriptor,
    CatalogEntry,
    Scenario,
    ScenarioValidationError,
    StorymoodError,
    ID_RE,
    validate_scenario,
)

DOCUMENT_VERSION = 1

_DOC_KEYS = ("version", "agents", "affections", "events", "objects", "actions")


@dataclass(frozen=True)
class Diagnostic:
    """One parse or validation failure with a stable code and position."""

    severity: str  # "error" | "warning"
    line: int
    column: int
    code: str
    message: str

    def __str__(self) -> str:
        return f"{self.line}:{self.column} {self.code} {self.message}"

    def as_dict(self) -> dict[str, object]:
        return {
            "severity": self.severity,
            "line": self.line,
            "column": self.column,
            "code": self.code,
            "message": self.message,
        }


class ParseError(StorymoodError):
    """Raised with every diagnostic collected from a parse."""

    def __init__(self, diagnostics: Sequence[Diagnostic]):
        self.diagnostics = tuple(diagnostics)
        super().__init__("; ".join(str(d) for d in self.diagnostics))


class OccurrenceShapeError(StorymoodError):
    """A JSON occurrence body does not match the wire format."""


def _error(line: int, column: int, code: str, message: str) -> Diagnostic:
    return Diagnostic("error", line, column, code, message)


# ---------------------------------------------------------------------------
# JSON position tracking
# ---------------------------------------------------------------------------
#
# The stdlib json module reports positions only for syntax errors. For
# semantic diagnostics we re-scan the document text: a tiny structural walk
# that tracks line and column and descends along a field path. It never
# builds values and is best-effort; on any surprise it bails and the
# diagnostic falls back to 1:1.


class _Locator:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.line = 1
        self.col = 1

    def _peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def _advance(self, n: int = 1) -> None:
        for _ in range(n):
            if self.pos >= len(self.text):
                return
            if self.text[self.pos] == "\n":
                self.line += 1
                self.col = 1
            else:
                self.col += 1
            self.pos += 1

    def _skip_ws(self) -> None:
        while self._peek() in (" ", "\t", "\n", "\r") and self._peek():
            self._advance()

    def _read_string(self) -> str | None:
        if self._peek() != '"':
            return None
        start = self.pos
        self._advance()
        while self._peek():
            c = self._peek()
            if c == "\\":
                self._advance(2)
                continue
            self._advance()
            if c == '"':
                try:
                    return json.loads(self.text[start : self.pos])
                except ValueError:
                    return None
        return None

    def _skip_value(self) -> bool:
        self._skip_ws()
        c = self._peek()
        if c == "{":
            return self._skip_container("}", object_keys=True)
        if c == "[":
            return self._skip_container("]", object_keys=False)
        if c == '"':
            return self._read_string() is not None
        if not c:
            return False
        while self._peek() and self._peek() not in ",]}\t\r\n ":
            self._advance()
        return True

    def _skip_container(self, closer: str, object_keys: bool) -> bool:
        self._advance()
        while True:
            self._skip_ws()
            if self._peek() == closer:
                self._advance()
                return True
            if not self._peek():
                return False
            if object_keys:
                if self._read_string() is None:
                    return False
                self._skip_ws()
                if self._peek() != ":":
                    return False
                self._advance()
            if not self._skip_value():
                return False
            self._skip_ws()
            if self._peek() == ",":
                self._advance()
            elif self._peek() != closer:
                return False

    def locate(self, path: tuple[object, ...]) -> tuple[int, int] | None:
        """Position of the value at *path* (start of its first token)."""
        self._skip_ws()
        if not path:
            return (self.line, self.col)
        head, rest = path[0], path[1:]
        if isinstance(head, str) and self._peek() == "{":
            self._advance()
            while True:
                self._skip_ws()
                if self._peek() == "}" or not self._peek():
                    return None
                key = self._read_string()
                if key is None:
                    return None
                self._skip_ws()
                if self._peek() != ":":
                    return None
                self._advance()
                if key == head:
                    return self.locate(rest)
                if not self._skip_value():
                    return None
                self._skip_ws()
                if self._peek() == ",":
                    self._advance()
                elif self._peek() != "}":
                    return None
        elif isinstance(head, int) and self._peek() == "[":
            self._advance()
            index = 0
            while True:
                self._skip_ws()
                if self._peek() == "]" or not self._peek():
                    return None
                if index == head:
                    return self.locate(rest)
                if not self._skip_value():
                    return None
                index += 1
                self._skip_ws()
                if self._peek() == ",":
                    self._advance()
                elif self._peek() != "]":
                    return None
        return None


def _path_tuple(path: str) -> tuple[object, ...]:
    parts: list[object] = []
    for name, index in re.findall(r"([A-Za-z_][A-Za-z0-9_]*)|\[(\d+)\]", path):
        parts.append(int(index) if index else name)
    return tuple(parts)


def _locate(text: str, path: str) -> tuple[int, int]:
    found = _Locator(text).locate(_path_tuple(path))
    return found if found is not None else (1, 1)


# ---------------------------------------------------------------------------
# Scenario document
# ---------------------------------------------------------------------------


def _want(
    item: dict, key: str, types: type | tuple[type, ...], path: str,
    text: str, diagnostics: list[Diagnostic],
) -> object | None:
    if key not in item:
        line, col = _locate(text, path)
        diagnostics.append(_error(line, col, "MISSING_KEY", f"{path}.{key} is required"))
        return None
    value = item[key]
    if isinstance(value, bool) and bool not in (types if isinstance(types, tuple) else (types,)):
        value = None
    if value is None or not isinstance(value, types):
        line, col = _locate(text, f"{path}.{key}")
        type_name = types.__name__ if isinstance(types, type) else "value"
        diagnostics.append(
            _error(line, col, "FIELD_TYPE", f"{path}.{key} must be a {type_name}")
        )
        return None
    return value


def _catalog_items(
    doc: dict, key: str, text: str, diagnostics: list[Diagnostic]
) -> list[CatalogEntry]:
    raw = doc.get(key)
    if raw is None:
        line, col = _locate(text, "")
        diagnostics.append(_error(line, col, "MISSING_KEY", f"{key} is required"))
        return []
    if not isinstance(raw, list):
        line, col = _locate(text, key)
        diagnostics.append(_error(line, col, "FIELD_TYPE", f"{key} must be an array"))
        return []
    entries: list[CatalogEntry] = []
    for i, item in enumerate(raw):
        path = f"{key}[{i}]"
        if not isinstance(item, dict):
            line, col = _locate(text, path)
            diagnostics.append(_error(line, col, "FIELD_TYPE", f"{path} must be an object"))
            continue
        entry_id = _want(item, "id", str, path, text, diagnostics)
        name = _want(item, "name", str, path, text, diagnostics)
        value = _want(item, "value", int, path, text, diagnostics)
        if entry_id is None or name is None or value is None:
            continue
        entries.append(CatalogEntry(id=entry_id, name=name, value=value))
    return entries


def parse_scenario(text: str, *, strict_agents: bool = True) -> Scenario:
    """Parse and validate a scenario document.

    Raises ``ParseError`` carrying all syntax diagnostics, or (when the
    structure is sound) all semantic diagnostics from validation, each
    positioned at the offending field.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError([_error(exc.lineno, exc.colno, "JSON_SYNTAX", exc.msg)]) from None

    if not isinstance(doc, dict):
        raise ParseError([_error(1, 1, "DOC_SHAPE", "top-level value must be an object")])

    diagnostics: list[Diagnostic] = []

    version = doc.get("version")
    if version != DOCUMENT_VERSION:
        line, col = _locate(text, "version") if "version" in doc else (1, 1)
        diagnostics.append(
            _error(line, col, "VERSION", f"version must be {DOCUMENT_VERSION}")
        )

    agents: list[Agent] = []
    raw_agents = doc.get("agents")
    if not isinstance(raw_agents, list):
        line, col = _locate(text, "agents") if "agents" in doc else (1, 1)
        diagnostics.append(_error(line, col, "FIELD_TYPE", "agents must be an array"))
        raw_agents = []
    for i, item in enumerate(raw_agents):
        path = f"agents[{i}]"
        if not isinstance(item, dict):
            line, col = _locate(text, path)
            diagnostics.append(_error(line, col, "FIELD_TYPE", f"{path} must be an object"))
            continue
        agent_id = _want(item, "id", str, path, text, diagnostics)
        name = _want(item, "name", str, path, text, diagnostics)
        avatar_raw = _want(item, "avatar", dict, path, text, diagnostics)
        avatar = None
        if avatar_raw is not None:
            hair_style = _want(avatar_raw, "hair_style", str, f"{path}.avatar", text, diagnostics)
            hair_color = _want(avatar_raw, "hair_color", str, f"{path}.avatar", text, diagnostics)
            glasses = _want(avatar_raw, "glasses", bool, f"{path}.avatar", text, diagnostics)
            if hair_style is not None and hair_color is not None and glasses is not None:
                avatar = AvatarDescriptor(
                    hair_style=hair_style, hair_color=hair_color, glasses=glasses
                )
        if agent_id is None or name is None or avatar is None:
            continue
        agents.append(Agent(id=agent_id, name=name, avatar=avatar))

    affections: list[tuple[str, str, int]] = []
    raw_affections = doc.get("affections")
    if not isinstance(raw_affections, list):
        line, col = _locate(text, "affections") if "affections" in doc else (1, 1)
        diagnostics.append(_error(line, col, "FIELD_TYPE", "affections must be an array"))
        raw_affections = []
    for i, item in enumerate(raw_affections):
        path = f"affections[{i}]"
        if not isinstance(item, dict):
            line, col = _locate(text, path)
            diagnostics.append(_error(line, col, "FIELD_TYPE", f"{path} must be an object"))
            continue
        from_id = _want(item, "from", str, path, text, diagnostics)
        to_id = _want(item, "to", str, path, text, diagnostics)
        value = _want(item, "value", int, path, text, diagnostics)
        if from_id is None or to_id is None or value is None:
            continue
        affections.append((from_id, to_id, value))

    events = _catalog_items(doc, "events", text, diagnostics)
    objects = _catalog_items(doc, "objects", text, diagnostics)
    actions = _catalog_items(doc, "actions", text, diagnostics)

    if diagnostics:
        raise ParseError(diagnostics)

    try:
        return validate_scenario(
            agents, affections, events, objects, actions, strict_agents=strict_agents
        )
    except ScenarioValidationError as exc:
        for violation in exc.violations:
            line, col = _locate(text, violation.path)
            diagnostics.append(_error(line, col, violation.code, violation.message))
        raise ParseError(diagnostics) from None


def serialize_scenario(scenario: Scenario) -> str:
    """Canonical text: fixed key order, ids sorted; a fixed point of
    parse-then-serialize."""
    doc = {
        "version": DOCUMENT_VERSION,
        "agents": [
            {"id": agent.id, "name": agent.name, "avatar": agent.avatar.as_dict()}
            for agent in scenario.agents
        ],
        "affections": [
            {"from": from_id, "to": to_id, "value": value}
            for (from_id, to_id), value in sorted(scenario.affections.items())
        ],
        "events": [
            {"id": e.id, "name": e.name, "value": e.value} for e in scenario.events.values()
        ],
        "objects": [
            {"id": e.id, "name": e.name, "value": e.value} for e in scenario.objects.values()
        ],
        "actions": [
            {"id": e.id, "name": e.name, "value": e.value} for e in scenario.actions.values()
        ],
    }
    return json.dumps(doc, indent=2) + "\n"


# ---------------------------------------------------------------------------
# Occurrence script DSL
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ScriptLine:
    """One parsed occurrence together with its source line number."""

    occurrence: Occurrence
    line: int


_FORMS = {
    "event": "event <event_id> to <agent_id>",
    "object": "object <object_id> to <agent_id>",
    "action": "action <action_id> by <agent_id> on <agent_id>",
    "affection": "affection <agent_id> -> <agent_id> = <int>",
}

_INT_RE = re.compile(r"[+-]?\d+$")


def _tokens_with_columns(line: str) -> list[tuple[str, int]]:
    return [(m.group(0), m.start() + 1) for m in re.finditer(r"\S+", line)]


def _check_id(
    token: str, col: int, lineno: int, what: str, diagnostics: list[Diagnostic]
) -> bool:
    if ID_RE.match(token):
        return True
    diagnostics.append(
        _error(lineno, col, "SYNTAX", f"bad {what} token {token!r}")
    )
    return False


def _parse_line(
    lineno: int, tokens: list[tuple[str, int]], diagnostics: list[Diagnostic]
) -> Occurrence | None:
    keyword, key_col = tokens[0]
    if keyword not in _FORMS:
        diagnostics.append(
            _error(lineno, key_col, "UNKNOWN_KEYWORD", f"unknown keyword {keyword!r}")
        )
        return None
    form = _FORMS[keyword]
    expected_len = len(form.split())
    if len(tokens) != expected_len:
        col = tokens[expected_len][1] if len(tokens) > expected_len else key_col
        diagnostics.append(
            _error(lineno, col, "ARITY", f"expected `{form}`")
        )
        return None

    words = [t for t, _ in tokens]
    cols = [c for _, c in tokens]
    if keyword in ("event", "object"):
        if words[2] != "to":
            diagnostics.append(_error(lineno, cols[2], "SYNTAX", f"expected `to`, got {words[2]!r}"))
            return None
        ok = _check_id(words[1], cols[1], lineno, f"{keyword} id", diagnostics)
        ok = _check_id(words[3], cols[3], lineno, "agent id", diagnostics) and ok
        if not ok:
            return None
        if keyword == "event":
            return EventTo(event_id=words[1], to=words[3])
        return ObjectTo(object_id=words[1], to=words[3])
    if keyword == "action":
        ok = True
        if words[2] != "by":
            diagnostics.append(_error(lineno, cols[2], "SYNTAX", f"expected `by`, got {words[2]!r}"))
            ok = False
        if words[4] != "on":
            diagnostics.append(_error(lineno, cols[4], "SYNTAX", f"expected `on`, got {words[4]!r}"))
            ok = False
        ok = _check_id(words[1], cols[1], lineno, "action id", diagnostics) and ok
        ok = _check_id(words[3], cols[3], lineno, "agent id", diagnostics) and ok
        ok = _check_id(words[5], cols[5], lineno, "agent id", diagnostics) and ok
        if not ok:
            return None
        return ActionBy(action_id=words[1], by=words[3], on=words[5])
    # affection
    ok = True
    if words[2] != "->":
        diagnostics.append(_error(lineno, cols[2], "SYNTAX", f"expected `->`, got {words[2]!r}"))
        ok = False
    if words[4] != "=":
        diagnostics.append(_error(lineno, cols[4], "SYNTAX", f"expected `=`, got {words[4]!r}"))
        ok = False
    ok = _check_id(words[1], cols[1], lineno, "agent id", diagnostics) and ok
    ok = _check_id(words[3], cols[3], lineno, "agent id", diagnostics) and ok
    if not _INT_RE.match(words[5]):
        diagnostics.append(_error(lineno, cols[5], "SYNTAX", f"expected an integer, got {words[5]!r}"))
        ok = False
    if not ok:
        return None
    return AffectionEdit(from_id=words[1], to_id=words[3], value=int(words[5]))


def parse_script(text: str) -> list[ScriptLine]:
    """Parse an occurrence script.

    Ids are not resolved here (that happens at replay against a scenario);
    malformed lines are collected as diagnostics and reported together.
    """
    diagnostics: list[Diagnostic] = []
    entries: list[ScriptLine] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        occurrence = _parse_line(lineno, _tokens_with_columns(raw), diagnostics)
        if occurrence is not None:
            entries.append(ScriptLine(occurrence=occurrence, line=lineno))
    if diagnostics:
        raise ParseError(diagnostics)
    return entries


def serialize_script(entries: Sequence[ScriptLine]) -> str:
    return "".join(entry.occurrence.to_dsl() + "\n" for entry in entries)


# ---------------------------------------------------------------------------
# Occurrence wire format (mirrors the DSL as JSON)
# ---------------------------------------------------------------------------


def occurrence_from_json(data: object) -> Occurrence:
    """Build an occurrence from its JSON body form.

    Field names match the DSL: ``{"kind": "event", "event_id": ..., "to":
    ...}`` and so on. Raises ``OccurrenceShapeError`` on any shape problem.
    """
    if not isinstance(data, dict):
        raise OccurrenceShapeError("occurrence body must be an object")

    def need(key: str, types: type | tuple[type, ...] = str) -> object:
        value = data.get(key)
        if isinstance(value, bool) or not isinstance(value, types):
            raise OccurrenceShapeError(f"field {key!r} missing or wrong type")
        return value

    kind = data.get("kind")
    if kind == "event":
        return EventTo(event_id=need("event_id"), to=need("to"))
    if kind == "object":
        return ObjectTo(object_id=need("object_id"), to=need("to"))
    if kind == "action":
        return ActionBy(action_id=need("action_id"), by=need("by"), on=need("on"))
    if kind == "affection":
        return AffectionEdit(from_id=need("from"), to_id=need("to"), value=need("value", int))
    raise OccurrenceShapeError(f"unknown occurrence kind {kind!r}")
