"""HTTP JSON service backing the reveal-exploration client.

Read model: the fixture corpus and each fixture's relation.  Session state:
in-memory reveal sessions keyed by opaque ids with idle expiry.  Analysis
calls are pure; per-session mutation is serialized by a lock.
"""

from __future__ import annotations

import threading
import time
import uuid
from dataclasses import dataclass, field
from pathlib import Path

from fastapi import FastAPI, HTTPException
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from . import fixtures as fixture_corpus
from .complexes import action_relation
from .errors import PreconditionError
from .ordering import joined
from .relations import Relation
from .sessions import RevealSession

SESSION_TTL_SECONDS = 3600.0


@dataclass
class _SessionEntry:
    session: RevealSession
    graph_id: str
    last_access: float
    lock: threading.Lock = field(default_factory=threading.Lock)


class _SessionStore:
    def __init__(self, ttl: float = SESSION_TTL_SECONDS):
        self.ttl = ttl
        self._entries: dict[str, _SessionEntry] = {}
        self._lock = threading.Lock()

    def _purge(self, now: float):
        stale = [sid for sid, e in self._entries.items()
                 if now - e.last_access > self.ttl]
        for sid in stale:
            del self._entries[sid]

    def create(self, session: RevealSession, graph_id: str) -> str:
        sid = uuid.uuid4().hex
        now = time.monotonic()
        with self._lock:
            self._purge(now)
            self._entries[sid] = _SessionEntry(session=session, graph_id=graph_id,
                                               last_access=now)
        return sid

    def get(self, sid: str) -> _SessionEntry:
        now = time.monotonic()
        with self._lock:
            self._purge(now)
            entry = self._entries.get(sid)
            if entry is None:
                raise KeyError(sid)
            entry.last_access = now
            return entry


class SessionRequest(BaseModel):
    graph_id: str


class RevealRequest(BaseModel):
    attribute: str


def _relation_for(fixture_id: str) -> tuple[Relation, dict[str, frozenset[str]] | None]:
    if fixture_id in fixture_corpus.GRAPH_FIXTURES:
        graph, _ = fixture_corpus.load_graph_fixture(fixture_id)
        ar = action_relation(graph)
        return ar.relation, ar.goals_by_key()
    if fixture_id in fixture_corpus.RELATION_FIXTURES:
        return fixture_corpus.load_relation_fixture(fixture_id)
    raise KeyError(fixture_id)


def _relation_payload(fixture_id: str, relation: Relation,
                      goals: dict[str, frozenset[str]] | None) -> dict:
    return {
        "id": fixture_id,
        "columns": list(relation.attributes),
        "rows": [
            {
                "key": x,
                "attributes": [y for y in relation.attributes if y in relation.row(x)],
                "goal": joined(goals[x]) if goals and x in goals else None,
            }
            for x in relation.individuals
        ],
    }


def create_app(static_dir: str | Path | None = None) -> FastAPI:
    app = FastAPI(title="iarskit", version="0.1.0")
    store = _SessionStore()

    @app.exception_handler(PreconditionError)
    async def precondition_handler(_, exc: PreconditionError):
        return JSONResponse(status_code=400,
                            content={"error": "bad-request", "detail": str(exc)})

    @app.get("/api/graphs")
    def list_graphs():
        return {
            "graphs": [
                {"id": info.fixture_id, "kind": info.kind, "title": info.title}
                for info in fixture_corpus.fixture_infos()
            ]
        }

    @app.get("/api/graphs/{fixture_id}/relation")
    def get_relation(fixture_id: str):
        try:
            relation, goals = _relation_for(fixture_id)
        except KeyError:
            raise HTTPException(status_code=404, detail=f"unknown fixture {fixture_id!r}")
        return _relation_payload(fixture_id, relation, goals)

    @app.post("/api/sessions", status_code=201)
    def start_session(request: SessionRequest):
        try:
            relation, goals = _relation_for(request.graph_id)
        except KeyError:
            raise HTTPException(status_code=404,
                                detail=f"unknown fixture {request.graph_id!r}")
        session = RevealSession.start(relation, goals)
        sid = store.create(session, request.graph_id)
        return {"session_id": sid, "graph_id": request.graph_id, **session.view()}

    @app.get("/api/sessions/{sid}")
    def get_session(sid: str):
        try:
            entry = store.get(sid)
        except KeyError:
            raise HTTPException(status_code=404, detail="unknown or expired session")
        with entry.lock:
            return {"session_id": sid, "graph_id": entry.graph_id,
                    **entry.session.view()}

    @app.post("/api/sessions/{sid}/reveal")
    def reveal(sid: str, request: RevealRequest):
        try:
            entry = store.get(sid)
        except KeyError:
            raise HTTPException(status_code=404, detail="unknown or expired session")
        with entry.lock:
            entry.session = entry.session.reveal(request.attribute)
            return {"session_id": sid, "graph_id": entry.graph_id,
                    **entry.session.view()}

    static_path = Path(static_dir) if static_dir else None
    if static_path is None:
        bundled = Path(__file__).resolve().parents[2] / "frontend" / "dist"
        static_path = bundled if bundled.is_dir() else None
    if static_path and static_path.is_dir():
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=static_path, html=True), name="ui")

    return app
