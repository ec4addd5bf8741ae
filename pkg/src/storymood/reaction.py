"""Quantitative reaction matrices and per-occurrence emotion deltas.

The base matrix maps (observer's affection toward the focal agent, stimulus
valence) to a signed happiness reaction. Its quadrants encode good will
(cheered by a loved one's fortune) and ill will (cheered by a hated one's
misfortune); a zero on either axis produces no reaction. The full reaction
set materializes eight matrices, one per (occurrence kind, emotion) channel,
derived from the base matrix by closed-form rules. Any slot can be replaced
by an override grid loaded from file.

Deltas are functions of the affection table and the stimulus valence only;
they never read accumulated emotion state.
"""

from __future__ import annotations

from dataclasses import dataclass, fields
from typing import Callable, Mapping, Sequence

from .model import (
    AFFECTION_MAX,
    AFFECTION_MIN,
    VALENCE_MAX,
    VALENCE_MIN,
    EmotionDelta,
    OutOfRangeError,
    Scenario,
    StorymoodError,
    UnknownAgentError,
    affection_of,
)

# Rows: observer's affection x = -5..+5. Columns: stimulus valence y = -5..+5.
# Literal data; the grid is intentionally not symmetric (e.g. row +2 reacts
# with 2 to valence +4, but row +4 reacts with 1 to valence +2).
BASE_GRID: tuple[tuple[int, ...], ...] = (
    (5, 4, 3, 2, 1, 0, -1, -2, -3, -4, -5),
    (4, 3, 2, 1, 1, 0, -1, -1, -2, -3, -4),
    (3, 2, 2, 1, 1, 0, -1, -1, -2, -2, -3),
    (2, 2, 1, 1, 1, 0, -1, -1, -1, -2, -2),
    (1, 1, 1, 1, 1, 0, -1, -1, -1, -1, -1),
    (0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0),
    (-1, -1, -1, -1, -1, 0, 1, 1, 1, 1, 1),
    (-2, -2, -1, -1, -1, 0, 1, 1, 1, 2, 2),
    (-3, -2, -2, -1, -1, 0, 1, 1, 2, 2, 3),
    (-4, -3, -2, -1, -1, 0, 1, 1, 2, 3, 4),
    (-5, -4, -3, -2, -1, 0, 1, 2, 3, 4, 5),
)

GRID_SIZE = 11

AXIS = tuple(range(AFFECTION_MIN, AFFECTION_MAX + 1))


class OverrideShapeError(StorymoodError):
    """An override grid is not 11 rows of 11 integers."""


class OverrideRangeError(StorymoodError):
    """An override grid entry lies outside the slot's allowed range."""


def base_lookup(x: int, y: int) -> int:
    """Base matrix entry for affection *x* and stimulus valence *y*."""
    if not AFFECTION_MIN <= x <= AFFECTION_MAX:
        raise OutOfRangeError(f"affection axis value {x} outside [-5, 5]")
    if not VALENCE_MIN <= y <= VALENCE_MAX:
        raise OutOfRangeError(f"valence axis value {y} outside [-5, 5]")
    return BASE_GRID[x - AFFECTION_MIN][y - VALENCE_MIN]


Grid = tuple[tuple[int, ...], ...]


def _tabulate(rule: Callable[[int, int], int]) -> Grid:
    return tuple(tuple(rule(x, y) for y in AXIS) for x in AXIS)


def _grid_lookup(grid: Grid, x: int, y: int) -> int:
    if not AFFECTION_MIN <= x <= AFFECTION_MAX:
        raise OutOfRangeError(f"affection axis value {x} outside [-5, 5]")
    if not VALENCE_MIN <= y <= VALENCE_MAX:
        raise OutOfRangeError(f"valence axis value {y} outside [-5, 5]")
    return grid[x - AFFECTION_MIN][y - VALENCE_MIN]


# Closed-form rules for the derived slots. Pride toward a focal or performer
# only flows through positive affection: an observer who dislikes them gets
# anger and sadness instead of a shame-pride reaction. Anger is the negative
# side of the happiness reaction, folded to a nonnegative scalar.
def _pride_rule(a: int, v: int) -> int:
    return base_lookup(a, v) if a > 0 else 0


def _anger_rule(a: int, v: int) -> int:
    return max(0, -base_lookup(a, v))


@dataclass(frozen=True)
class ReactionSet:
    """The eight materialized reaction matrices.

    Event and action happiness are keyed by affection toward the focal or
    affected agent; the perpetrator pride and happiness slots are keyed by
    affection toward the performer; both anger slots are keyed by the same
    axis as their happiness counterpart. The perpetrator happiness slot is
    zero by default (no such channel exists in the default rules) and only
    contributes when overridden.
    """

    event_happiness: Grid
    object_happiness: Grid
    object_pride: Grid
    object_anger: Grid
    action_happiness: Grid
    action_perp_happiness: Grid
    action_perp_pride: Grid
    action_perp_anger: Grid


SLOT_NAMES = tuple(f.name for f in fields(ReactionSet))

# Slots holding anger never go negative.
_ANGER_SLOTS = frozenset({"object_anger", "action_perp_anger"})


def _validate_grid(slot: str, rows: Sequence[Sequence[int]]) -> Grid:
    if len(rows) != GRID_SIZE or any(len(row) != GRID_SIZE for row in rows):
        raise OverrideShapeError(
            f"{slot}: expected {GRID_SIZE}x{GRID_SIZE} grid, got "
            f"{len(rows)} rows of {sorted({len(r) for r in rows})} entries"
        )
    lo = 0 if slot in _ANGER_SLOTS else VALENCE_MIN
    for i, row in enumerate(rows):
        for j, entry in enumerate(row):
            if not isinstance(entry, int) or isinstance(entry, bool):
                raise OverrideShapeError(f"{slot}: entry [{i}][{j}] is not an integer")
            if not lo <= entry <= VALENCE_MAX:
                raise OverrideRangeError(
                    f"{slot}: entry [{i}][{j}] = {entry} outside [{lo}, {VALENCE_MAX}]"
                )
    return tuple(tuple(row) for row in rows)


def parse_matrix_file(text: str) -> list[list[int]]:
    """Parse an override grid: 11 lines of 11 signed integers, ``#`` comments."""
    rows: list[list[int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            rows.append([int(tok) for tok in line.split()])
        except ValueError:
            raise OverrideShapeError(f"line {lineno}: not a row of integers") from None
    return rows


def materialize_reaction_set(
    overrides: Mapping[str, Sequence[Sequence[int]]] | None = None,
) -> ReactionSet:
    """Build the eight-matrix set, tabulating derived slots from the base
    matrix, with any slot replaced by a validated override grid.
    """
    grids: dict[str, Grid] = {
        "event_happiness": BASE_GRID,
        "object_happiness": BASE_GRID,
        "object_pride": _tabulate(_pride_rule),
        "object_anger": _tabulate(_anger_rule),
        "action_happiness": BASE_GRID,
        "action_perp_happiness": _tabulate(lambda a, v: 0),
        "action_perp_pride": _tabulate(_pride_rule),
        "action_perp_anger": _tabulate(_anger_rule),
    }
    for slot, rows in (overrides or {}).items():
        if slot not in grids:
            raise OverrideShapeError(
                f"unknown matrix slot {slot!r}; expected one of {', '.join(SLOT_NAMES)}"
            )
        grids[slot] = _validate_grid(slot, rows)
    return ReactionSet(**grids)


DEFAULT_REACTIONS = materialize_reaction_set()


# ---------------------------------------------------------------------------
# Delta computation
# ---------------------------------------------------------------------------

DeltaSet = dict[str, EmotionDelta]


def _check_valence(value: int) -> None:
    if not VALENCE_MIN <= value <= VALENCE_MAX:
        raise OutOfRangeError(f"valence {value} outside [-5, 5]")


def _resolve(
    scenario: Scenario,
    affections: Mapping[tuple[str, str], int] | None,
    *agent_ids: str,
) -> Mapping[tuple[str, str], int]:
    for agent_id in agent_ids:
        if not scenario.has_agent(agent_id):
            raise UnknownAgentError(agent_id)
    return scenario.affections if affections is None else affections


def event_deltas(
    scenario: Scenario,
    focal: str,
    desirability: int,
    *,
    reactions: ReactionSet = DEFAULT_REACTIONS,
    affections: Mapping[tuple[str, str], int] | None = None,
) -> DeltaSet:
    """Happiness reactions of every agent to an event befalling *focal*.

    Desirability is the same for everyone, so each observer reacts through
    their affection toward the focal agent; the focal agent itself reacts
    through the fixed self affection +5.
    """
    _check_valence(desirability)
    table = _resolve(scenario, affections, focal)
    deltas: DeltaSet = {}
    for observer in scenario.agent_ids:
        a = affection_of(table, observer, focal)
        deltas[observer] = EmotionDelta(
            happiness=_grid_lookup(reactions.event_happiness, a, desirability)
        )
    return deltas


def object_deltas(
    scenario: Scenario,
    focal: str,
    appeal: int,
    *,
    reactions: ReactionSet = DEFAULT_REACTIONS,
    affections: Mapping[tuple[str, str], int] | None = None,
) -> DeltaSet:
    """Reactions of every agent to *focal* acquiring an object."""
    _check_valence(appeal)
    table = _resolve(scenario, affections, focal)
    deltas: DeltaSet = {}
    for observer in scenario.agent_ids:
        a = affection_of(table, observer, focal)
        deltas[observer] = EmotionDelta(
            happiness=_grid_lookup(reactions.object_happiness, a, appeal),
            anger=_grid_lookup(reactions.object_anger, a, appeal),
            pride=_grid_lookup(reactions.object_pride, a, appeal),
        )
    return deltas


def action_deltas(
    scenario: Scenario,
    performer: str,
    affected: str,
    plausibility: int,
    *,
    reactions: ReactionSet = DEFAULT_REACTIONS,
    affections: Mapping[tuple[str, str], int] | None = None,
) -> DeltaSet:
    """Reactions of every agent to *performer* acting on *affected*.

    Happiness flows through affection toward the affected agent; anger is
    felt toward the perpetrator by everyone but the perpetrator; pride or
    shame is judged through affection toward the perpetrator. The performer
    judges their own act by its plausibility (self affection is +5, the
    identity row).
    """
    _check_valence(plausibility)
    table = _resolve(scenario, affections, performer, affected)
    deltas: DeltaSet = {}
    for observer in scenario.agent_ids:
        a_affected = affection_of(table, observer, affected)
        a_performer = affection_of(table, observer, performer)
        happiness = _grid_lookup(
            reactions.action_happiness, a_affected, plausibility
        ) + _grid_lookup(reactions.action_perp_happiness, a_performer, plausibility)
        if observer == performer:
            anger = 0
        else:
            anger = _grid_lookup(reactions.action_perp_anger, a_affected, plausibility)
        pride = _grid_lookup(reactions.action_perp_pride, a_performer, plausibility)
        deltas[observer] = EmotionDelta(happiness=happiness, anger=anger, pride=pride)
    return deltas
