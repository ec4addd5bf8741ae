"""storymood: a deterministic emotion simulator for story characters.

Agents with fixed affective relationships react to events, object
acquisitions, and inter-agent actions through quantitative reaction
matrices, accumulating clamped emotion state over a replayable history.
"""

from .model import (
    Agent,
    AvatarDescriptor,
    CatalogEntry,
    EmotionDelta,
    EmotionKind,
    EmotionLabel,
    EmotionVector,
    OutOfRangeError,
    Scenario,
    ScenarioValidationError,
    SelfAffectionError,
    StorymoodError,
    UnknownAgentError,
    UnknownIdError,
    Violation,
    clamp_emotion,
    face_label,
    primary_emotion,
    validate_scenario,
)
from .reaction import (
    BASE_GRID,
    DEFAULT_REACTIONS,
    OverrideRangeError,
    OverrideShapeError,
    ReactionSet,
    action_deltas,
    base_lookup,
    event_deltas,
    materialize_reaction_set,
    object_deltas,
    parse_matrix_file,
)
from .engine import (
    ActionBy,
    AffectionEdit,
    EmptyHistoryError,
    EventTo,
    HistoryEntry,
    ObjectTo,
    Occurrence,
    ReplayError,
    Session,
    StateDiff,
    new_session,
    replay,
)
from .scenario_io import (
    Diagnostic,
    ParseError,
    ScriptLine,
    occurrence_from_json,
    parse_scenario,
    parse_script,
    serialize_scenario,
)

__version__ = "0.1.0"

__all__ = [
    "Agent",
    "AvatarDescriptor",
    "CatalogEntry",
    "EmotionDelta",
    "EmotionKind",
    "EmotionLabel",
    "EmotionVector",
    "OutOfRangeError",
    "Scenario",
    "ScenarioValidationError",
    "SelfAffectionError",
    "StorymoodError",
    "UnknownAgentError",
    "UnknownIdError",
    "Violation",
    "clamp_emotion",
    "face_label",
    "primary_emotion",
    "validate_scenario",
    "BASE_GRID",
    "DEFAULT_REACTIONS",
    "OverrideRangeError",
    "OverrideShapeError",
    "ReactionSet",
    "action_deltas",
    "base_lookup",
    "event_deltas",
    "materialize_reaction_set",
    "object_deltas",
    "parse_matrix_file",
    "ActionBy",
    "AffectionEdit",
    "EmptyHistoryError",
    "EventTo",
    "HistoryEntry",
    "ObjectTo",
    "Occurrence",
    "ReplayError",
    "Session",
    "StateDiff",
    "new_session",
    "replay",
    "Diagnostic",
    "ParseError",
    "ScriptLine",
    "occurrence_from_json",
    "parse_scenario",
    "parse_script",
    "serialize_scenario",
    "__version__",
]
