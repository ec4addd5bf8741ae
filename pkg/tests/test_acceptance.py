"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -s`` to see the per-criterion
report. Every tolerance is exact; the two property criteria carry runtime
budgets that are asserted as well.
"""

from __future__ import annotations

import json
import random
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from contextlib import contextmanager

from click.testing import CliRunner
from fastapi.testclient import TestClient

from storymood import (
    ActionBy,
    Agent,
    AffectionEdit,
    CatalogEntry,
    DEFAULT_REACTIONS,
    EventTo,
    ObjectTo,
    base_lookup,
    new_session,
    replay,
    validate_scenario,
)
from storymood.cli import main as cli_main
from storymood.model import EMOTION_RANGES, EmotionKind
from storymood.reaction import action_deltas, event_deltas, object_deltas
from storymood.scenario_io import serialize_scenario
from storymood.service import create_app

from conftest import GOLDEN, OTHELLO_PATH, SCRIPTS
from test_reaction import EXPECTED_GRID

AXIS = range(-5, 6)


@contextmanager
def criterion(name: str):
    start = time.monotonic()
    try:
        yield
    except Exception:
        print(f"FAIL  {name}")
        raise
    else:
        print(f"PASS  {name}  ({time.monotonic() - start:.2f}s)")


def _othello():
    from storymood.scenario_io import parse_scenario

    return parse_scenario(OTHELLO_PATH.read_text(encoding="utf-8"))


# ---------------------------------------------------------------------------
# 1. Reaction grid fidelity
# ---------------------------------------------------------------------------


def test_criterion_1_grid_fidelity():
    with criterion("1 reaction grid fidelity (121 entries, exact)"):
        start = time.monotonic()
        for x in AXIS:
            for y in AXIS:
                assert base_lookup(x, y) == EXPECTED_GRID[x + 5][y + 5]
        assert base_lookup(-5, -5) == 5
        assert base_lookup(4, 3) == 2
        assert base_lookup(2, 4) == 2
        assert base_lookup(4, 2) == 1
        for v in AXIS:
            assert base_lookup(0, v) == 0
            assert base_lookup(v, 0) == 0
        assert time.monotonic() - start < 1.0


# ---------------------------------------------------------------------------
# 2. Matrix structure
# ---------------------------------------------------------------------------


def test_criterion_2_matrix_structure():
    with criterion("2 matrix structure (oddness, signs, bounds, monotonicity)"):
        sign = lambda n: (n > 0) - (n < 0)
        for x in AXIS:
            row = [base_lookup(x, y) for y in AXIS]
            if x >= 0:
                assert row == sorted(row)
            if x <= 0:
                assert row == sorted(row, reverse=True)
            for y in AXIS:
                value = base_lookup(x, y)
                assert base_lookup(-x, y) == -value
                assert base_lookup(x, -y) == -value
                assert sign(value) == sign(x) * sign(y)
                assert abs(value) <= min(abs(x), abs(y))
                if max(abs(x), abs(y)) == 5:
                    assert abs(value) == min(abs(x), abs(y))


# ---------------------------------------------------------------------------
# 3..5. The three scenario reproductions
# ---------------------------------------------------------------------------


def test_criterion_3_event_scenario():
    with criterion("3 event scenario: misfortune strikes a loved agent"):
        scenario = _othello()
        session = new_session(scenario)
        session.apply(EventTo("fathers_wrath", "desdemona"))
        state = session.state
        assert state["desdemona"].happiness == -5
        assert state["othello"].happiness == -5
        assert state["rodrigo"].happiness == -5
        assert state["iago"].happiness == 4
        for vector in state.values():
            assert vector.anger == 0
            assert vector.pride == 0
        # Those who love her grieve in the same degree she does.
        assert state["othello"].happiness == state["desdemona"].happiness
        assert state["rodrigo"].happiness == state["desdemona"].happiness


def test_criterion_4_object_scenario():
    with criterion("4 object scenario: a coveted acquisition"):
        scenario = _othello()
        session = new_session(scenario)
        session.apply(ObjectTo("lieutenant_rank", "rodrigo"))
        state = session.state
        doc = session.emotional_map()
        assert doc["agents"]["rodrigo"]["primary"]["kind"] == "pride"
        assert state["rodrigo"].pride == 5
        assert state["rodrigo"].happiness == 5
        for admirer in ("othello", "desdemona"):
            affection = scenario.affection(admirer, "rodrigo")
            expected = base_lookup(affection, 5)
            assert expected > 0
            assert state[admirer].happiness == expected == 3
            assert state[admirer].pride == expected == 3
            assert state[admirer].anger == 0
        assert state["iago"].happiness == -5
        assert state["iago"].anger == 5
        assert state["iago"].pride == 0


def test_criterion_5_action_scenario():
    with criterion("5 action scenario: a censurable betrayal"):
        scenario = _othello()
        session = new_session(scenario)
        session.apply(ActionBy("betrayal", "iago", "othello"))
        state = session.state
        assert state["othello"].happiness == -5
        assert state["othello"].anger == 5
        assert state["othello"].pride == -3  # shame through +3 affection
        for bystander in ("desdemona", "rodrigo"):
            assert state[bystander].happiness < 0
            assert state[bystander].anger > 0
        assert state["iago"].happiness > 0  # ill will toward the affected
        assert state["iago"].anger == 0
        assert state["iago"].pride == -5  # self-judgment by plausibility


# ---------------------------------------------------------------------------
# 6. Conflicting feelings
# ---------------------------------------------------------------------------


def test_criterion_6_conflicting_feelings():
    with criterion("6 conflicting feelings: grief caps later joy at 0"):
        scenario = validate_scenario(
            [Agent("harry", "Harry"), Agent("ron", "Ron")],
            [("harry", "ron", 5), ("ron", "harry", 5)],
            events=[
                CatalogEntry("grief", "Grief", -5),
                CatalogEntry("triumph", "Triumph", 5),
            ],
        )
        session = new_session(scenario)
        session.apply(EventTo("grief", "harry"))
        session.apply(EventTo("triumph", "harry"))
        assert session.state["harry"].happiness == 0
        assert session.state["harry"].happiness < 5


# ---------------------------------------------------------------------------
# 7. Property suite
# ---------------------------------------------------------------------------


def _fuzz_scenarios(rng: random.Random):
    pool = [_othello()]
    for k in range(4):
        ids = [f"p{k}a", f"p{k}b", f"p{k}c"][: rng.randint(2, 3)]
        agents = [Agent(i, i.upper()) for i in ids]
        affections = [
            (f, t, rng.randint(-5, 5)) for f in ids for t in ids if f != t
        ]
        pool.append(
            validate_scenario(
                agents,
                affections,
                events=[CatalogEntry("ev", "Ev", rng.randint(-5, 5))],
                objects=[CatalogEntry("ob", "Ob", rng.randint(-5, 5))],
                actions=[CatalogEntry("ac", "Ac", rng.randint(-5, 5))],
            )
        )
    return pool


def _random_occurrence(rng: random.Random, scenario):
    ids = scenario.agent_ids
    kind = rng.random()
    if kind < 0.3:
        return EventTo(next(iter(scenario.events)), rng.choice(ids))
    if kind < 0.6:
        return ObjectTo(next(iter(scenario.objects)), rng.choice(ids))
    if kind < 0.9:
        return ActionBy(next(iter(scenario.actions)), rng.choice(ids), rng.choice(ids))
    from_id, to_id = rng.sample(ids, 2)
    return AffectionEdit(from_id, to_id, rng.randint(-5, 5))


def test_criterion_7_property_suite():
    with criterion("7 property suite (clamp safety, replay, undo, zeros, matrices)"):
        start = time.monotonic()
        rng = random.Random(0xC0FFEE)
        pool = _fuzz_scenarios(rng)

        # Clamp safety under 10,000 random occurrence sequences.
        for _ in range(10_000):
            scenario = rng.choice(pool)
            session = new_session(scenario)
            for _ in range(rng.randint(1, 5)):
                session.apply(_random_occurrence(rng, scenario))
            for vector in session.state.values():
                for kind in EmotionKind:
                    lo, hi = EMOTION_RANGES[kind]
                    assert lo <= vector.component(kind) <= hi

        # Replay equals stepwise application on random scripts.
        for _ in range(300):
            scenario = rng.choice(pool)
            occurrences = [
                _random_occurrence(rng, scenario) for _ in range(rng.randint(0, 8))
            ]
            stepwise = new_session(scenario)
            for occurrence in occurrences:
                stepwise.apply(occurrence)
            batch = replay(scenario, occurrences)
            assert batch.state == stepwise.state
            assert batch.affections == stepwise.affections

        # Undo exactness at random depths.
        for _ in range(300):
            scenario = rng.choice(pool)
            session = new_session(scenario)
            snapshots = [(session.state, session.affections)]
            for _ in range(rng.randint(1, 6)):
                session.apply(_random_occurrence(rng, scenario))
                snapshots.append((session.state, session.affections))
            undos = rng.randint(1, len(snapshots) - 1)
            for _ in range(undos):
                session.undo()
            state, affections = snapshots[len(snapshots) - 1 - undos]
            assert session.state == state
            assert session.affections == affections

        # Zero valence and zero affection produce zero deltas.
        zero_pair = validate_scenario(
            [Agent("ann", "Ann"), Agent("bob", "Bob")],
            [("ann", "bob", 0), ("bob", "ann", 0)],
        )
        for scenario in pool:
            focal = scenario.agent_ids[0]
            other = scenario.agent_ids[1]
            assert all(d.is_zero() for d in event_deltas(scenario, focal, 0).values())
            assert all(d.is_zero() for d in object_deltas(scenario, focal, 0).values())
            assert all(
                d.is_zero() for d in action_deltas(scenario, focal, other, 0).values()
            )
        for valence in AXIS:
            deltas = event_deltas(zero_pair, "bob", valence)
            assert deltas["ann"].is_zero()
            obj = object_deltas(zero_pair, "bob", valence)
            assert obj["ann"].is_zero()

        # Derived matrices equal their closed-form tabulations, cell by cell.
        for x in AXIS:
            for y in AXIS:
                h = EXPECTED_GRID[x + 5][y + 5]
                pride = h if x > 0 else 0
                anger = max(0, -h)
                i, j = x + 5, y + 5
                assert DEFAULT_REACTIONS.object_happiness[i][j] == h
                assert DEFAULT_REACTIONS.object_pride[i][j] == pride
                assert DEFAULT_REACTIONS.object_anger[i][j] == anger
                assert DEFAULT_REACTIONS.action_happiness[i][j] == h
                assert DEFAULT_REACTIONS.action_perp_happiness[i][j] == 0
                assert DEFAULT_REACTIONS.action_perp_pride[i][j] == pride
                assert DEFAULT_REACTIONS.action_perp_anger[i][j] == anger

        assert time.monotonic() - start < 30.0


# ---------------------------------------------------------------------------
# 8. Golden files
# ---------------------------------------------------------------------------


def test_criterion_8_golden_outputs():
    with criterion("8 golden outputs byte-stable (json and faces, three scripts)"):
        runner = CliRunner()
        for name in ("event_misfortune", "object_triumph", "action_betrayal"):
            script = str(SCRIPTS / f"{name}.script")
            for fmt, suffix in (("json", "json"), ("faces", "faces.txt")):
                args = ["run", str(OTHELLO_PATH), script, "--format", fmt]
                first = runner.invoke(cli_main, args, catch_exceptions=False)
                second = runner.invoke(cli_main, args, catch_exceptions=False)
                assert first.exit_code == 0 and second.exit_code == 0
                assert first.output == second.output
                golden = (GOLDEN / f"{name}.{suffix}").read_text(encoding="utf-8")
                assert first.output == golden


# ---------------------------------------------------------------------------
# 9. Service concurrency
# ---------------------------------------------------------------------------


def test_criterion_9_concurrent_posts_no_lost_update():
    with criterion("9 concurrent posts to one session lose no update"):
        scenario = validate_scenario(
            [Agent("ann", "Ann"), Agent("bob", "Bob")],
            [("ann", "bob", 5), ("bob", "ann", 5)],
            events=[CatalogEntry("boost", "Boost", 2)],
        )
        app = create_app()
        setup = TestClient(app)
        session_id = setup.post(
            "/api/sessions", content=serialize_scenario(scenario)
        ).json()["session_id"]
        body = {"kind": "event", "event_id": "boost", "to": "ann"}
        barrier = threading.Barrier(2)

        def post(_):
            with TestClient(app) as worker:
                barrier.wait()
                return worker.post(f"/api/sessions/{session_id}/occurrences", json=body)

        with ThreadPoolExecutor(max_workers=2) as pool:
            responses = list(pool.map(post, range(2)))

        assert all(r.status_code == 200 for r in responses)
        state = setup.get(f"/api/sessions/{session_id}/state").json()
        assert state["agents"]["ann"]["emotions"]["happiness"] == 4
        history = setup.get(f"/api/sessions/{session_id}/history").json()
        assert [entry["seq"] for entry in history] == [1, 2]
