"""HTTP session API: endpoints, isolation, concurrency, expiry."""

from __future__ import annotations

import json
import threading
from concurrent.futures import ThreadPoolExecutor

import pytest
from fastapi.testclient import TestClient

from storymood import Agent, CatalogEntry, new_session, replay, validate_scenario
from storymood.scenario_io import parse_scenario, serialize_scenario
from storymood.service import SessionStore, create_app

from conftest import FIXTURES

EVENT_BODY = {"kind": "event", "event_id": "fathers_wrath", "to": "desdemona"}


@pytest.fixture(scope="module")
def app():
    return create_app(scenario_dir=str(FIXTURES))


@pytest.fixture()
def client(app):
    return TestClient(app)


@pytest.fixture()
def session_id(client, othello_text):
    return client.post("/api/sessions", content=othello_text).json()["session_id"]


class TestHealthAndRoot:
    def test_health(self, client):
        response = client.get("/api/health")
        assert response.status_code == 200
        assert response.json() == {"status": "ok"}

    def test_root_without_ui(self, client):
        assert client.get("/").status_code == 200


class TestCreateSession:
    def test_valid_scenario(self, client, othello_text):
        response = client.post("/api/sessions", content=othello_text)
        assert response.status_code == 201
        body = response.json()
        assert body["session_id"]
        agents = body["emotional_map"]["agents"]
        assert all(
            a["emotions"] == {"happiness": 0, "anger": 0, "pride": 0}
            for a in agents.values()
        )

    def test_invalid_scenario_returns_diagnostics(self, client, othello_text):
        doc = json.loads(othello_text)
        doc["events"][0]["value"] = 9
        response = client.post("/api/sessions", content=json.dumps(doc))
        assert response.status_code == 400
        diagnostics = response.json()["diagnostics"]
        assert len(diagnostics) == 1
        assert diagnostics[0]["code"] == "VALENCE_RANGE"
        assert diagnostics[0]["line"] >= 1

    def test_malformed_body_returns_syntax_diagnostic(self, client):
        response = client.post("/api/sessions", content="{oops")
        assert response.status_code == 400
        assert response.json()["diagnostics"][0]["code"] == "JSON_SYNTAX"


class TestOccurrences:
    def test_event_reflects_post_state(self, client, session_id):
        response = client.post(f"/api/sessions/{session_id}/occurrences", json=EVENT_BODY)
        assert response.status_code == 200
        body = response.json()
        agents = body["emotional_map"]["agents"]
        assert agents["desdemona"]["emotions"]["happiness"] == -5
        assert agents["iago"]["emotions"]["happiness"] == 4
        assert agents["iago"]["faces"]["happiness"] == 9
        diff = body["state_diff"]
        assert diff["seq"] == 1
        assert diff["agents"]["iago"]["delta"]["happiness"] == 4

    def test_unknown_event_id(self, client, session_id):
        response = client.post(
            f"/api/sessions/{session_id}/occurrences",
            json={"kind": "event", "event_id": "meteor", "to": "iago"},
        )
        assert response.status_code == 422

    def test_unknown_session(self, client):
        response = client.post("/api/sessions/nope/occurrences", json=EVENT_BODY)
        assert response.status_code == 404

    def test_bad_shape(self, client, session_id):
        response = client.post(
            f"/api/sessions/{session_id}/occurrences", json={"kind": "banquet"}
        )
        assert response.status_code == 422

    def test_malformed_json_body(self, client, session_id):
        response = client.post(
            f"/api/sessions/{session_id}/occurrences",
            content="{oops",
            headers={"content-type": "application/json"},
        )
        assert response.status_code == 422

    def test_affection_edit_body(self, client, session_id):
        response = client.post(
            f"/api/sessions/{session_id}/occurrences",
            json={"kind": "affection", "from": "iago", "to": "desdemona", "value": 2},
        )
        assert response.status_code == 200
        affections = response.json()["emotional_map"]["affections"]
        entry = next(e for e in affections if e["from"] == "iago" and e["to"] == "desdemona")
        assert entry["value"] == 2


class TestUndo:
    def test_apply_then_undo(self, client, session_id):
        client.post(f"/api/sessions/{session_id}/occurrences", json=EVENT_BODY)
        response = client.post(f"/api/sessions/{session_id}/undo")
        assert response.status_code == 200
        agents = response.json()["emotional_map"]["agents"]
        assert all(
            a["emotions"] == {"happiness": 0, "anger": 0, "pride": 0}
            for a in agents.values()
        )

    def test_undo_fresh_session_conflicts(self, client, session_id):
        response = client.post(f"/api/sessions/{session_id}/undo")
        assert response.status_code == 409

    def test_undo_twice_after_two_applies(self, client, session_id):
        url = f"/api/sessions/{session_id}/occurrences"
        client.post(url, json=EVENT_BODY)
        client.post(url, json={"kind": "object", "object_id": "lieutenant_rank", "to": "rodrigo"})
        client.post(f"/api/sessions/{session_id}/undo")
        response = client.post(f"/api/sessions/{session_id}/undo")
        agents = response.json()["emotional_map"]["agents"]
        assert all(
            a["emotions"] == {"happiness": 0, "anger": 0, "pride": 0}
            for a in agents.values()
        )


class TestStateAndHistory:
    def test_fresh_history_empty(self, client, session_id):
        response = client.get(f"/api/sessions/{session_id}/history")
        assert response.status_code == 200
        assert response.json() == []

    def test_three_occurrences_in_order(self, client, session_id):
        url = f"/api/sessions/{session_id}/occurrences"
        client.post(url, json=EVENT_BODY)
        client.post(url, json={"kind": "object", "object_id": "lieutenant_rank", "to": "rodrigo"})
        client.post(url, json={"kind": "action", "action_id": "betrayal", "by": "iago", "on": "othello"})
        entries = client.get(f"/api/sessions/{session_id}/history").json()
        assert [e["seq"] for e in entries] == [1, 2, 3]
        assert entries[0]["occurrence"]["kind"] == "event"
        assert entries[0]["deltas"]["iago"]["happiness"] == 4
        assert entries[0]["pre_state"]["iago"]["happiness"] == 0

    def test_history_replay_matches_state(self, client, session_id, othello):
        # Server self-check: folding the reported history over a fresh
        # session reproduces the reported state.
        url = f"/api/sessions/{session_id}/occurrences"
        client.post(url, json=EVENT_BODY)
        client.post(url, json={"kind": "action", "action_id": "betrayal", "by": "iago", "on": "othello"})
        entries = client.get(f"/api/sessions/{session_id}/history").json()
        state_doc = client.get(f"/api/sessions/{session_id}/state").json()

        from storymood.scenario_io import occurrence_from_json

        session = replay(othello, [occurrence_from_json(e["occurrence"]) for e in entries])
        assert session.emotional_map() == state_doc

    def test_state_unknown_session(self, client):
        assert client.get("/api/sessions/nope/state").status_code == 404


class TestIsolationAndConcurrency:
    def test_sessions_are_isolated(self, client, othello_text):
        a = client.post("/api/sessions", content=othello_text).json()["session_id"]
        b = client.post("/api/sessions", content=othello_text).json()["session_id"]
        client.post(f"/api/sessions/{a}/occurrences", json=EVENT_BODY)
        b_state = client.get(f"/api/sessions/{b}/state").json()
        assert b_state["agents"]["desdemona"]["emotions"]["happiness"] == 0

    def test_parallel_posts_no_lost_update(self, app):
        scenario = validate_scenario(
            [Agent("ann", "Ann"), Agent("bob", "Bob")],
            [("ann", "bob", 5), ("bob", "ann", 5)],
            events=[CatalogEntry("boost", "Boost", 2)],
        )
        text = serialize_scenario(scenario)
        setup = TestClient(app)
        session_id = setup.post("/api/sessions", content=text).json()["session_id"]
        body = {"kind": "event", "event_id": "boost", "to": "ann"}

        barrier = threading.Barrier(2)

        def post():
            with TestClient(app) as worker:
                barrier.wait()
                return worker.post(f"/api/sessions/{session_id}/occurrences", json=body)

        with ThreadPoolExecutor(max_workers=2) as pool:
            responses = list(pool.map(lambda _: post(), range(2)))

        assert all(r.status_code == 200 for r in responses)
        state = setup.get(f"/api/sessions/{session_id}/state").json()
        assert state["agents"]["ann"]["emotions"]["happiness"] == 4
        entries = setup.get(f"/api/sessions/{session_id}/history").json()
        assert [e["seq"] for e in entries] == [1, 2]
        # Each response saw the state immediately after its own occurrence.
        seen = sorted(
            r.json()["emotional_map"]["agents"]["ann"]["emotions"]["happiness"]
            for r in responses
        )
        assert seen == [2, 4]


class TestScenarioLibrary:
    def test_listing(self, client):
        names = [item["name"] for item in client.get("/api/scenarios").json()]
        assert "othello" in names
        assert "harry" in names

    def test_fetch_document(self, client, othello_text):
        doc = client.get("/api/scenarios/othello").json()
        assert doc == json.loads(othello_text)

    def test_unknown_document(self, client):
        assert client.get("/api/scenarios/macbeth").status_code == 404


class TestSessionStoreExpiry:
    def test_idle_sessions_expire(self, othello):
        now = [0.0]
        store = SessionStore(ttl=10.0, clock=lambda: now[0])
        session_id = store.create(new_session(othello))
        assert store.get(session_id) is not None
        now[0] = 5.0
        assert store.get(session_id) is not None  # touch resets idle clock
        now[0] = 14.0
        assert store.get(session_id) is not None
        now[0] = 25.0
        assert store.get(session_id) is None
        assert len(store) == 0

    def test_ids_are_unique(self, othello):
        store = SessionStore()
        ids = {store.create(new_session(othello)) for _ in range(50)}
        assert len(ids) == 50
