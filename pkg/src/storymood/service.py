"""HTTP session API: create in-memory sessions from scenario documents,
post occurrences, undo, and read state or history.

Sessions live in process memory only; scenario files are the durable
artifact. Writes to one session are serialized by a per-session lock, so
concurrent posts apply in some total order and every response reflects the
state immediately after its own occurrence. Idle sessions expire after a
configurable period (24 h by default).
"""

from __future__ import annotations

import json
import secrets
import threading
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

from fastapi import Body, FastAPI, HTTPException, Request
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from .engine import Session, new_session
from .model import StorymoodError
from .reaction import DEFAULT_REACTIONS, ReactionSet
from .scenario_io import (
    OccurrenceShapeError,
    ParseError,
    occurrence_from_json,
    parse_scenario,
)

DEFAULT_SESSION_TTL = 24 * 60 * 60.0


@dataclass
class _Stored:
    session: Session
    lock: threading.Lock = field(default_factory=threading.Lock)
    created_at: float = 0.0
    touched_at: float = 0.0


class SessionStore:
    """Thread-safe in-memory session registry with idle expiry."""

    def __init__(self, ttl: float = DEFAULT_SESSION_TTL, clock: Callable[[], float] = time.monotonic):
        self._ttl = ttl
        self._clock = clock
        self._lock = threading.Lock()
        self._sessions: dict[str, _Stored] = {}

    def _purge(self, now: float) -> None:
        expired = [sid for sid, s in self._sessions.items() if now - s.touched_at > self._ttl]
        for sid in expired:
            del self._sessions[sid]

    def create(self, session: Session) -> str:
        now = self._clock()
        session_id = secrets.token_urlsafe(16)
        with self._lock:
            self._purge(now)
            self._sessions[session_id] = _Stored(
                session=session, created_at=now, touched_at=now
            )
        return session_id

    def get(self, session_id: str) -> _Stored | None:
        now = self._clock()
        with self._lock:
            self._purge(now)
            stored = self._sessions.get(session_id)
            if stored is not None:
                stored.touched_at = now
            return stored

    def __len__(self) -> int:
        with self._lock:
            return len(self._sessions)


def create_app(
    *,
    scenario_dir: str | None = None,
    ui_dir: str | None = None,
    reactions: ReactionSet = DEFAULT_REACTIONS,
    strict_agents: bool = True,
    session_ttl: float = DEFAULT_SESSION_TTL,
    clock: Callable[[], float] = time.monotonic,
) -> FastAPI:
    """Build the service. ``scenario_dir`` exposes its ``*.json`` documents
    read-only for the UI to load; ``ui_dir`` is served statically at ``/``.
    """
    app = FastAPI(title="storymood", docs_url=None, redoc_url=None)
    store = SessionStore(ttl=session_ttl, clock=clock)
    app.state.store = store

    def _session_or_404(session_id: str) -> _Stored:
        stored = store.get(session_id)
        if stored is None:
            raise HTTPException(status_code=404, detail="unknown session")
        return stored

    @app.get("/api/health")
    def health() -> dict:
        return {"status": "ok"}

    @app.post("/api/sessions", status_code=201)
    async def create_session(request: Request) -> JSONResponse:
        raw = await request.body()
        try:
            scenario = parse_scenario(
                raw.decode("utf-8", errors="replace"), strict_agents=strict_agents
            )
        except ParseError as exc:
            return JSONResponse(
                status_code=400,
                content={"diagnostics": [d.as_dict() for d in exc.diagnostics]},
            )
        session = new_session(scenario, reactions=reactions)
        session_id = store.create(session)
        return JSONResponse(
            status_code=201,
            content={"session_id": session_id, "emotional_map": session.emotional_map()},
        )

    @app.post("/api/sessions/{session_id}/occurrences")
    def post_occurrence(session_id: str, body: dict = Body(...)) -> dict:
        stored = _session_or_404(session_id)
        try:
            occurrence = occurrence_from_json(body)
        except OccurrenceShapeError as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from None
        with stored.lock:
            try:
                diff = stored.session.apply(occurrence)
            except StorymoodError as exc:
                raise HTTPException(status_code=422, detail=str(exc)) from None
            return {
                "state_diff": diff.as_dict(),
                "emotional_map": stored.session.emotional_map(),
            }

    @app.post("/api/sessions/{session_id}/undo")
    def post_undo(session_id: str) -> dict:
        stored = _session_or_404(session_id)
        with stored.lock:
            if not stored.session.history:
                raise HTTPException(status_code=409, detail="history is empty")
            diff = stored.session.undo()
            return {
                "state_diff": diff.as_dict(),
                "emotional_map": stored.session.emotional_map(),
            }

    @app.get("/api/sessions/{session_id}/state")
    def get_state(session_id: str) -> dict:
        stored = _session_or_404(session_id)
        with stored.lock:
            return stored.session.emotional_map()

    @app.get("/api/sessions/{session_id}/history")
    def get_history(session_id: str) -> list:
        stored = _session_or_404(session_id)
        with stored.lock:
            return [entry.as_dict() for entry in stored.session.history]

    if scenario_dir is not None:
        base = Path(scenario_dir)

        def _listing() -> dict[str, Path]:
            if not base.is_dir():
                return {}
            return {path.stem: path for path in sorted(base.glob("*.json"))}

        @app.get("/api/scenarios")
        def list_scenarios() -> list:
            return [{"name": name} for name in _listing()]

        @app.get("/api/scenarios/{name}")
        def get_scenario(name: str) -> JSONResponse:
            path = _listing().get(name)
            if path is None:
                raise HTTPException(status_code=404, detail="unknown scenario")
            return JSONResponse(content=json.loads(path.read_text(encoding="utf-8")))

    if ui_dir is not None and Path(ui_dir).is_dir():
        app.mount("/", StaticFiles(directory=ui_dir, html=True), name="ui")
    else:

        @app.get("/")
        def root() -> dict:
            return {"service": "storymood", "api": "/api"}

    return app
