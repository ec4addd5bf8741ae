"""Domain types, validation, and emotion arithmetic.

Agents carry a directed affection value toward every other agent, on an
integer scale from -5 (total hatred) to +5 (unconditional love). Every agent
loves itself unconditionally: the self pair is never stored and always reads
as +5. Emotion state is a three-component integer vector (happiness, anger,
pride), each component clamped to its own range.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Mapping, Sequence

AFFECTION_MIN = -5
AFFECTION_MAX = 5
SELF_AFFECTION = 5

VALENCE_MIN = -5
VALENCE_MAX = 5

MIN_AGENTS = 2
MAX_AGENTS = 4
MAX_AGENTS_RELAXED = 8

HAIR_STYLES = ("bald", "short", "long", "curly", "ponytail")
HAIR_COLORS = ("black", "brown", "blonde", "red", "gray", "white", "blue", "green")

ID_RE = re.compile(r"[a-z][a-z0-9_]{0,31}$")

# One discrete glyph per affection integer, addressed as index 0..10.
AFFECTION_GLYPH_COUNT = 11


class StorymoodError(Exception):
    """Base class for all domain errors."""


class UnknownIdError(StorymoodError):
    """An id does not resolve against the scenario's catalogs or agents."""


class UnknownAgentError(UnknownIdError):
    """An agent id does not belong to the scenario."""


class OutOfRangeError(StorymoodError):
    """A value lies outside its declared integer range."""


class SelfAffectionError(StorymoodError):
    """An affection toward oneself was supplied or edited; it is fixed at +5."""


# ---------------------------------------------------------------------------
# Emotions
# ---------------------------------------------------------------------------


class EmotionKind(str, Enum):
    HAPPINESS = "happiness"
    ANGER = "anger"
    PRIDE = "pride"


EMOTION_RANGES: dict[EmotionKind, tuple[int, int]] = {
    EmotionKind.HAPPINESS: (-5, 5),
    EmotionKind.ANGER: (0, 5),
    EmotionKind.PRIDE: (-5, 5),
}

FACE_COUNTS: dict[EmotionKind, int] = {
    EmotionKind.HAPPINESS: 11,
    EmotionKind.ANGER: 6,
    EmotionKind.PRIDE: 11,
}

# Only range endpoints and midpoints carry names; intermediate values are
# shown as the signed number.
_NAMED_LABELS: dict[tuple[EmotionKind, int], str] = {
    (EmotionKind.HAPPINESS, -5): "distress",
    (EmotionKind.HAPPINESS, 0): "neutrality",
    (EmotionKind.HAPPINESS, 5): "euphoria",
    (EmotionKind.ANGER, 0): "calm",
    (EmotionKind.ANGER, 5): "rage",
    (EmotionKind.PRIDE, -5): "shame",
    (EmotionKind.PRIDE, 0): "neutrality",
    (EmotionKind.PRIDE, 5): "pride",
}

# Dominance order when magnitudes tie.
_PRIMARY_PRIORITY: dict[EmotionKind, int] = {
    EmotionKind.PRIDE: 2,
    EmotionKind.ANGER: 1,
    EmotionKind.HAPPINESS: 0,
}


def clamp_emotion(kind: EmotionKind, value: int) -> int:
    """Clamp *value* into the range of *kind* (anger has no negative side)."""
    lo, hi = EMOTION_RANGES[kind]
    return max(lo, min(hi, value))


@dataclass(frozen=True)
class EmotionDelta:
    """Pre-clamp change to one agent's emotion vector."""

    happiness: int = 0
    anger: int = 0
    pride: int = 0

    def is_zero(self) -> bool:
        return self.happiness == 0 and self.anger == 0 and self.pride == 0

    def as_dict(self) -> dict[str, int]:
        return {"happiness": self.happiness, "anger": self.anger, "pride": self.pride}


ZERO_DELTA = EmotionDelta()


@dataclass(frozen=True)
class EmotionVector:
    """One agent's current emotion state; components always in range."""

    happiness: int = 0
    anger: int = 0
    pride: int = 0

    def __post_init__(self) -> None:
        for kind in EmotionKind:
            value = self.component(kind)
            lo, hi = EMOTION_RANGES[kind]
            if not lo <= value <= hi:
                raise OutOfRangeError(f"{kind.value} = {value} outside [{lo}, {hi}]")

    def component(self, kind: EmotionKind) -> int:
        return getattr(self, kind.value)

    def plus_clamped(self, delta: EmotionDelta) -> EmotionVector:
        """Accumulate *delta*, clamping each component into its range."""
        return EmotionVector(
            happiness=clamp_emotion(EmotionKind.HAPPINESS, self.happiness + delta.happiness),
            anger=clamp_emotion(EmotionKind.ANGER, self.anger + delta.anger),
            pride=clamp_emotion(EmotionKind.PRIDE, self.pride + delta.pride),
        )

    def as_dict(self) -> dict[str, int]:
        return {"happiness": self.happiness, "anger": self.anger, "pride": self.pride}


NEUTRAL = EmotionVector()


@dataclass(frozen=True)
class EmotionLabel:
    """A display label for one emotion value: name plus face index."""

    kind: EmotionKind
    value: int
    label: str
    face_index: int

    def as_dict(self) -> dict[str, object]:
        return {
            "kind": self.kind.value,
            "value": self.value,
            "label": self.label,
            "face_index": self.face_index,
        }


def face_label(kind: EmotionKind, value: int) -> EmotionLabel:
    """Map an in-range emotion value to its label and face index.

    Happiness and pride index 11 faces (value + 5); anger indexes 6 faces
    (the value itself).
    """
    lo, hi = EMOTION_RANGES[kind]
    if not lo <= value <= hi:
        raise OutOfRangeError(f"{kind.value} = {value} outside [{lo}, {hi}]")
    label = _NAMED_LABELS.get((kind, value), f"{kind.value}{value:+d}")
    return EmotionLabel(kind=kind, value=value, label=label, face_index=value - lo)


def primary_emotion(vector: EmotionVector) -> EmotionLabel:
    """The dominant emotion of *vector*: maximal magnitude, ties broken by
    pride over anger over happiness. The neutral vector reads as neutrality.
    """
    magnitude, _, kind, value = max(
        (abs(vector.component(kind)), _PRIMARY_PRIORITY[kind], kind, vector.component(kind))
        for kind in EmotionKind
    )
    if magnitude == 0:
        return face_label(EmotionKind.HAPPINESS, 0)
    return face_label(kind, value)


def affection_glyph_index(value: int) -> int:
    """Glyph index 0..10 for an affection value -5..+5."""
    if not AFFECTION_MIN <= value <= AFFECTION_MAX:
        raise OutOfRangeError(f"affection = {value} outside [-5, 5]")
    return value - AFFECTION_MIN


def affection_glyph_class(value: int) -> str:
    """Stable glyph class token for an affection value (11 classes)."""
    return f"affection-{affection_glyph_index(value)}"


# ---------------------------------------------------------------------------
# Scenario
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AvatarDescriptor:
    hair_style: str = "short"
    hair_color: str = "black"
    glasses: bool = False

    def as_dict(self) -> dict[str, object]:
        return {
            "hair_style": self.hair_style,
            "hair_color": self.hair_color,
            "glasses": self.glasses,
        }


@dataclass(frozen=True)
class Agent:
    id: str
    name: str
    avatar: AvatarDescriptor = AvatarDescriptor()


@dataclass(frozen=True)
class CatalogEntry:
    """An event, object, or action with its signed valence.

    The valence means desirability for events, appeal for objects, and
    plausibility (praiseworthiness) for actions.
    """

    id: str
    name: str
    value: int


@dataclass(frozen=True)
class Scenario:
    """A validated, canonical scenario: agents, affections, stimulus catalogs.

    ``affections`` holds every ordered pair of distinct agents exactly once;
    self pairs are implicit. Agents and catalog entries are sorted by id.
    """

    agents: tuple[Agent, ...]
    affections: Mapping[tuple[str, str], int]
    events: Mapping[str, CatalogEntry]
    objects: Mapping[str, CatalogEntry]
    actions: Mapping[str, CatalogEntry]

    @property
    def agent_ids(self) -> tuple[str, ...]:
        return tuple(agent.id for agent in self.agents)

    def has_agent(self, agent_id: str) -> bool:
        return any(agent.id == agent_id for agent in self.agents)

    def affection(self, from_id: str, to_id: str) -> int:
        """Stored affection for a distinct pair; +5 toward oneself."""
        if not self.has_agent(from_id):
            raise UnknownAgentError(from_id)
        if not self.has_agent(to_id):
            raise UnknownAgentError(to_id)
        if from_id == to_id:
            return SELF_AFFECTION
        return self.affections[(from_id, to_id)]


def affection_of(
    affections: Mapping[tuple[str, str], int], from_id: str, to_id: str
) -> int:
    """Lookup in a plain affection table, honoring the fixed self value."""
    if from_id == to_id:
        return SELF_AFFECTION
    return affections[(from_id, to_id)]


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    """One scenario validation failure, addressable by field path."""

    code: str
    path: str
    message: str

    def __str__(self) -> str:
        return f"{self.code} at {self.path}: {self.message}"


class ScenarioValidationError(StorymoodError):
    """Raised with the full list of violations, never just the first."""

    def __init__(self, violations: Sequence[Violation]):
        self.violations = tuple(violations)
        super().__init__("; ".join(str(v) for v in self.violations))


def _check_catalog(
    entries: Sequence[CatalogEntry], key: str, violations: list[Violation]
) -> dict[str, CatalogEntry]:
    seen: dict[str, CatalogEntry] = {}
    for i, entry in enumerate(entries):
        path = f"{key}[{i}]"
        if not ID_RE.match(entry.id or ""):
            violations.append(
                Violation("ID_SYNTAX", f"{path}.id", f"bad id token {entry.id!r}")
            )
        elif entry.id in seen:
            violations.append(
                Violation("DUPLICATE_ID", f"{path}.id", f"duplicate id {entry.id!r}")
            )
        if not entry.name:
            violations.append(Violation("NAME_EMPTY", f"{path}.name", "name is empty"))
        if not VALENCE_MIN <= entry.value <= VALENCE_MAX:
            violations.append(
                Violation(
                    "VALENCE_RANGE",
                    f"{path}.value",
                    f"valence {entry.value} outside [-5, 5]",
                )
            )
        seen.setdefault(entry.id, entry)
    return {entry_id: seen[entry_id] for entry_id in sorted(seen)}


def validate_scenario(
    agents: Sequence[Agent],
    affections: Iterable[tuple[str, str, int]],
    events: Sequence[CatalogEntry] = (),
    objects: Sequence[CatalogEntry] = (),
    actions: Sequence[CatalogEntry] = (),
    *,
    strict_agents: bool = True,
) -> Scenario:
    """Validate raw scenario parts and return the canonical ``Scenario``.

    Collects every violation before failing. ``strict_agents`` keeps the
    2..4 agent bound; relaxing it allows up to 8 (the bound is a display
    concern, not a semantic one).
    """
    violations: list[Violation] = []

    max_agents = MAX_AGENTS if strict_agents else MAX_AGENTS_RELAXED
    if not MIN_AGENTS <= len(agents) <= max_agents:
        violations.append(
            Violation(
                "AGENT_COUNT",
                "agents",
                f"{len(agents)} agents; expected {MIN_AGENTS}..{max_agents}",
            )
        )

    ids: set[str] = set()
    for i, agent in enumerate(agents):
        path = f"agents[{i}]"
        if not ID_RE.match(agent.id or ""):
            violations.append(
                Violation("ID_SYNTAX", f"{path}.id", f"bad id token {agent.id!r}")
            )
        elif agent.id in ids:
            violations.append(
                Violation("DUPLICATE_ID", f"{path}.id", f"duplicate id {agent.id!r}")
            )
        ids.add(agent.id)
        if not agent.name:
            violations.append(Violation("NAME_EMPTY", f"{path}.name", "name is empty"))
        if agent.avatar.hair_style not in HAIR_STYLES:
            violations.append(
                Violation(
                    "AVATAR_TOKEN",
                    f"{path}.avatar.hair_style",
                    f"unknown hair style {agent.avatar.hair_style!r}",
                )
            )
        if agent.avatar.hair_color not in HAIR_COLORS:
            violations.append(
                Violation(
                    "AVATAR_TOKEN",
                    f"{path}.avatar.hair_color",
                    f"unknown hair color {agent.avatar.hair_color!r}",
                )
            )

    table: dict[tuple[str, str], int] = {}
    for i, (from_id, to_id, value) in enumerate(affections):
        path = f"affections[{i}]"
        known = True
        for agent_id in (from_id, to_id):
            if agent_id not in ids:
                known = False
                violations.append(
                    Violation("UNKNOWN_AGENT", path, f"unknown agent {agent_id!r}")
                )
        if known and from_id == to_id:
            violations.append(
                Violation(
                    "SELF_AFFECTION",
                    path,
                    f"self affection for {from_id!r} is fixed at +5 and must not be supplied",
                )
            )
            continue
        if not AFFECTION_MIN <= value <= AFFECTION_MAX:
            violations.append(
                Violation(
                    "AFFECTION_RANGE", path, f"affection {value} outside [-5, 5]"
                )
            )
        if known:
            if (from_id, to_id) in table:
                violations.append(
                    Violation(
                        "DUPLICATE_AFFECTION",
                        path,
                        f"duplicate entry {from_id!r} -> {to_id!r}",
                    )
                )
            table[(from_id, to_id)] = value

    for from_id in sorted(ids):
        for to_id in sorted(ids):
            if from_id != to_id and (from_id, to_id) not in table:
                violations.append(
                    Violation(
                        "MISSING_AFFECTION",
                        "affections",
                        f"missing pair {from_id!r} -> {to_id!r}",
                    )
                )

    event_map = _check_catalog(events, "events", violations)
    object_map = _check_catalog(objects, "objects", violations)
    action_map = _check_catalog(actions, "actions", violations)

    if violations:
        raise ScenarioValidationError(violations)

    return Scenario(
        agents=tuple(sorted(agents, key=lambda a: a.id)),
        affections={pair: table[pair] for pair in sorted(table)},
        events=event_map,
        objects=object_map,
        actions=action_map,
    )
