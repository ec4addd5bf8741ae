"""Session lifecycle: apply occurrences, accumulate clamped emotion state,
keep a replayable history with undo, and render the emotional map.

A session is a single-writer state machine. Deltas for one occurrence are
computed entirely from pre-occurrence affections (never from emotion state)
and applied simultaneously; each component accumulates by clamped addition,
so a prior sadness attenuates a later joy instead of being overwritten.
History entries store the pre-clamp deltas and a pre-state snapshot: clamping
makes deltas non-invertible, so undo restores the snapshot exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence, Union

from .model import (
    AFFECTION_MAX,
    AFFECTION_MIN,
    EmotionDelta,
    EmotionKind,
    EmotionVector,
    NEUTRAL,
    OutOfRangeError,
    Scenario,
    SelfAffectionError,
    StorymoodError,
    UnknownAgentError,
    UnknownIdError,
    ZERO_DELTA,
    affection_glyph_class,
    affection_glyph_index,
    affection_of,
    face_label,
    primary_emotion,
)
from .reaction import (
    DEFAULT_REACTIONS,
    DeltaSet,
    ReactionSet,
    action_deltas,
    event_deltas,
    object_deltas,
)


class EmptyHistoryError(StorymoodError):
    """Undo was requested on a session with no history."""


class ReplayError(StorymoodError):
    """An occurrence in a replayed sequence failed to apply.

    Carries the zero-based index of the failing occurrence; no partial
    session survives.
    """

    def __init__(self, index: int, cause: StorymoodError):
        self.index = index
        self.cause = cause
        super().__init__(f"occurrence {index}: {cause}")


# ---------------------------------------------------------------------------
# Occurrences
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class EventTo:
    """An event from the catalog befalls the focal agent."""

    event_id: str
    to: str

    def as_dict(self) -> dict[str, object]:
        return {"kind": "event", "event_id": self.event_id, "to": self.to}

    def to_dsl(self) -> str:
        return f"event {self.event_id} to {self.to}"


@dataclass(frozen=True)
class ObjectTo:
    """The focal agent acquires an object from the catalog."""

    object_id: str
    to: str

    def as_dict(self) -> dict[str, object]:
        return {"kind": "object", "object_id": self.object_id, "to": self.to}

    def to_dsl(self) -> str:
        return f"object {self.object_id} to {self.to}"


@dataclass(frozen=True)
class ActionBy:
    """An agent performs a cataloged action on an affected agent (possibly
    itself)."""

    action_id: str
    by: str
    on: str

    def as_dict(self) -> dict[str, object]:
        return {"kind": "action", "action_id": self.action_id, "by": self.by, "on": self.on}

    def to_dsl(self) -> str:
        return f"action {self.action_id} by {self.by} on {self.on}"


@dataclass(frozen=True)
class AffectionEdit:
    """Change one directed affection for all subsequent occurrences."""

    from_id: str
    to_id: str
    value: int

    def as_dict(self) -> dict[str, object]:
        return {"kind": "affection", "from": self.from_id, "to": self.to_id, "value": self.value}

    def to_dsl(self) -> str:
        return f"affection {self.from_id} -> {self.to_id} = {self.value}"


Occurrence = Union[EventTo, ObjectTo, ActionBy, AffectionEdit]


# ---------------------------------------------------------------------------
# History and diffs
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AgentDiff:
    before: EmotionVector
    delta: EmotionDelta
    after: EmotionVector

    def as_dict(self) -> dict[str, dict[str, int]]:
        return {
            "before": self.before.as_dict(),
            "delta": self.delta.as_dict(),
            "after": self.after.as_dict(),
        }


@dataclass(frozen=True)
class StateDiff:
    """Per-agent (before, delta, after) for one applied or undone step."""

    seq: int
    occurrence: Occurrence
    agents: Mapping[str, AgentDiff]

    def as_dict(self) -> dict[str, object]:
        return {
            "seq": self.seq,
            "occurrence": self.occurrence.as_dict(),
            "agents": {agent_id: diff.as_dict() for agent_id, diff in self.agents.items()},
        }


@dataclass(frozen=True)
class HistoryEntry:
    """One timeline step: occurrence, pre-clamp deltas, pre-state snapshot."""

    seq: int
    occurrence: Occurrence
    deltas: DeltaSet
    pre_state: Mapping[str, EmotionVector]

    def as_dict(self) -> dict[str, object]:
        return {
            "seq": self.seq,
            "occurrence": self.occurrence.as_dict(),
            "deltas": {agent_id: d.as_dict() for agent_id, d in self.deltas.items()},
            "pre_state": {agent_id: v.as_dict() for agent_id, v in self.pre_state.items()},
        }


# ---------------------------------------------------------------------------
# Session
# ---------------------------------------------------------------------------


class Session:
    """Scenario plus accumulated emotion state and ordered history.

    Occurrences must be applied serially; distinct sessions are independent.
    """

    def __init__(self, scenario: Scenario, reactions: ReactionSet = DEFAULT_REACTIONS):
        self.scenario = scenario
        self.reactions = reactions
        self._state: dict[str, EmotionVector] = {
            agent_id: NEUTRAL for agent_id in scenario.agent_ids
        }
        self._affections: dict[tuple[str, str], int] = dict(scenario.affections)
        self._history: list[HistoryEntry] = []

    @property
    def state(self) -> dict[str, EmotionVector]:
        return dict(self._state)

    @property
    def history(self) -> tuple[HistoryEntry, ...]:
        return tuple(self._history)

    @property
    def affections(self) -> dict[tuple[str, str], int]:
        """Effective affections: scenario values plus applied edits."""
        return dict(self._affections)

    def affection(self, from_id: str, to_id: str) -> int:
        for agent_id in (from_id, to_id):
            if not self.scenario.has_agent(agent_id):
                raise UnknownAgentError(agent_id)
        return affection_of(self._affections, from_id, to_id)

    def _deltas_for(self, occurrence: Occurrence) -> DeltaSet:
        scenario = self.scenario
        if isinstance(occurrence, EventTo):
            entry = scenario.events.get(occurrence.event_id)
            if entry is None:
                raise UnknownIdError(f"unknown event {occurrence.event_id!r}")
            return event_deltas(
                scenario, occurrence.to, entry.value,
                reactions=self.reactions, affections=self._affections,
            )
        if isinstance(occurrence, ObjectTo):
            entry = scenario.objects.get(occurrence.object_id)
            if entry is None:
                raise UnknownIdError(f"unknown object {occurrence.object_id!r}")
            return object_deltas(
                scenario, occurrence.to, entry.value,
                reactions=self.reactions, affections=self._affections,
            )
        if isinstance(occurrence, ActionBy):
            entry = scenario.actions.get(occurrence.action_id)
            if entry is None:
                raise UnknownIdError(f"unknown action {occurrence.action_id!r}")
            return action_deltas(
                scenario, occurrence.by, occurrence.on, entry.value,
                reactions=self.reactions, affections=self._affections,
            )
        if isinstance(occurrence, AffectionEdit):
            for agent_id in (occurrence.from_id, occurrence.to_id):
                if not scenario.has_agent(agent_id):
                    raise UnknownAgentError(agent_id)
            if occurrence.from_id == occurrence.to_id:
                raise SelfAffectionError(
                    f"affection of {occurrence.from_id!r} toward itself cannot be edited"
                )
            if not AFFECTION_MIN <= occurrence.value <= AFFECTION_MAX:
                raise OutOfRangeError(f"affection {occurrence.value} outside [-5, 5]")
            return {agent_id: ZERO_DELTA for agent_id in scenario.agent_ids}
        raise TypeError(f"not an occurrence: {occurrence!r}")

    def apply(self, occurrence: Occurrence) -> StateDiff:
        """Apply one occurrence: compute deltas from pre-state affections,
        accumulate with clamping, append to history."""
        deltas = self._deltas_for(occurrence)
        pre_state = dict(self._state)
        agents: dict[str, AgentDiff] = {}
        new_state: dict[str, EmotionVector] = {}
        for agent_id in self.scenario.agent_ids:
            before = pre_state[agent_id]
            after = before.plus_clamped(deltas[agent_id])
            new_state[agent_id] = after
            agents[agent_id] = AgentDiff(before=before, delta=deltas[agent_id], after=after)
        if isinstance(occurrence, AffectionEdit):
            self._affections[(occurrence.from_id, occurrence.to_id)] = occurrence.value
        self._state = new_state
        entry = HistoryEntry(
            seq=len(self._history) + 1,
            occurrence=occurrence,
            deltas=deltas,
            pre_state=pre_state,
        )
        self._history.append(entry)
        return StateDiff(seq=entry.seq, occurrence=occurrence, agents=agents)

    def undo(self) -> StateDiff:
        """Remove the last history entry, restoring its pre-state snapshot
        exactly, and return the reverse diff."""
        if not self._history:
            raise EmptyHistoryError("nothing to undo")
        entry = self._history.pop()
        agents: dict[str, AgentDiff] = {}
        for agent_id in self.scenario.agent_ids:
            before = self._state[agent_id]
            after = entry.pre_state[agent_id]
            delta = EmotionDelta(
                happiness=after.happiness - before.happiness,
                anger=after.anger - before.anger,
                pride=after.pride - before.pride,
            )
            agents[agent_id] = AgentDiff(before=before, delta=delta, after=after)
        self._state = dict(entry.pre_state)
        if isinstance(entry.occurrence, AffectionEdit):
            self._rebuild_affections()
        return StateDiff(seq=entry.seq, occurrence=entry.occurrence, agents=agents)

    def _rebuild_affections(self) -> None:
        table = dict(self.scenario.affections)
        for entry in self._history:
            occ = entry.occurrence
            if isinstance(occ, AffectionEdit):
                table[(occ.from_id, occ.to_id)] = occ.value
        self._affections = table

    def verify_replay(self) -> bool:
        """Check that folding the history from the neutral start reproduces
        the current state and affections exactly."""
        fresh = replay(self.scenario, [entry.occurrence for entry in self._history],
                       reactions=self.reactions)
        return fresh._state == self._state and fresh._affections == self._affections

    def emotional_map(self) -> dict[str, object]:
        """The full display document, derived purely from session state."""
        agents: dict[str, object] = {}
        for agent in self.scenario.agents:
            vector = self._state[agent.id]
            agents[agent.id] = {
                "name": agent.name,
                "avatar": agent.avatar.as_dict(),
                "emotions": vector.as_dict(),
                "primary": primary_emotion(vector).as_dict(),
                "faces": {
                    kind.value: face_label(kind, vector.component(kind)).face_index
                    for kind in EmotionKind
                },
            }
        affections = [
            {
                "from": from_id,
                "to": to_id,
                "value": value,
                "glyph_index": affection_glyph_index(value),
                "glyph_class": affection_glyph_class(value),
            }
            for (from_id, to_id), value in sorted(self._affections.items())
        ]
        catalogs = {
            key: [
                {"id": entry.id, "name": entry.name, "value": entry.value}
                for entry in getattr(self.scenario, key).values()
            ]
            for key in ("events", "objects", "actions")
        }
        return {"agents": agents, "affections": affections, "catalogs": catalogs}


def new_session(scenario: Scenario, reactions: ReactionSet = DEFAULT_REACTIONS) -> Session:
    """Fresh session: every agent at the neutral vector, empty history."""
    return Session(scenario, reactions=reactions)


def replay(
    scenario: Scenario,
    occurrences: Sequence[Occurrence],
    reactions: ReactionSet = DEFAULT_REACTIONS,
) -> Session:
    """Apply *occurrences* in order to a fresh session.

    Identical to stepwise application; raises ``ReplayError`` citing the
    index of the first failing occurrence.
    """
    session = new_session(scenario, reactions=reactions)
    for index, occurrence in enumerate(occurrences):
        try:
            session.apply(occurrence)
        except StorymoodError as exc:
            raise ReplayError(index, exc) from exc
    return session
