"""HTTP session service backing the explorer UI.

Sessions are in-memory only; requests within one session are serialized
by a per-session lock, and the state always equals the replay of the
recorded history from the framed initial quiver.
"""

from __future__ import annotations

import threading
import uuid

from fastapi import FastAPI, Request, Response
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from . import jsonio
from .corpus import corpus
from .errors import BadVertex, QmutError, SignIncoherent
from .loops import MutationLoop, partition_qseries, run_ice_trace
from .quiver import Quiver, VertexSign, framed, mutate_ice, reddening_end, vertex_sign


class Session:
    def __init__(self, quiver: Quiver):
        self.id = uuid.uuid4().hex[:12]
        self.initial = quiver
        self.ice = framed(quiver)
        self.history: list[dict] = []
        self.lock = threading.Lock()

    def state(self) -> dict:
        signs = []
        for v in range(1, self.initial.n + 1):
            try:
                signs.append(
                    "green" if vertex_sign(self.ice, v) is VertexSign.GREEN else "red"
                )
            except SignIncoherent:
                signs.append("incoherent")
        phi = reddening_end(self.ice, self.initial)
        return {
            "id": self.id,
            "ice_quiver": self.ice.to_json(),
            "signs": signs,
            "history": list(self.history),
            "reddening": list(phi.image) if phi else None,
        }

    def mutate(self, vertex: int) -> None:
        sign = vertex_sign(self.ice, vertex)
        self.ice = mutate_ice(self.ice, vertex)
        self.history.append(
            {"vertex": vertex, "eps": 1 if sign is VertexSign.GREEN else -1}
        )

    def undo(self) -> None:
        if not self.history:
            raise BadVertex("history is empty")
        self.history.pop()
        ice = framed(self.initial)
        for step in self.history:
            ice = mutate_ice(ice, step["vertex"])
        self.ice = ice


def _jresp(obj, status: int = 200) -> Response:
    return Response(
        content=jsonio.dumps(obj), status_code=status, media_type="application/json"
    )


def create_app() -> FastAPI:
    app = FastAPI(title="qmut session service")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    sessions: dict[str, Session] = {}

    def get_session(sid: str) -> Session | None:
        return sessions.get(sid)

    @app.exception_handler(QmutError)
    async def engine_error(_req, exc):
        return JSONResponse({"error": str(exc)}, status_code=400)

    @app.post("/sessions")
    async def create_session(request: Request):
        payload = await request.json()
        try:
            quiver = Quiver.from_json(payload["quiver"])
        except (KeyError, ValueError) as exc:
            return _jresp({"error": f"bad quiver: {exc}"}, 400)
        session = Session(quiver)
        sessions[session.id] = session
        return _jresp({"id": session.id, "state": session.state()})

    @app.get("/sessions/{sid}")
    async def get_state(sid: str):
        session = get_session(sid)
        if session is None:
            return _jresp({"error": "unknown session"}, 404)
        with session.lock:
            return _jresp(session.state())

    @app.post("/sessions/{sid}/mutate")
    async def post_mutate(sid: str, request: Request):
        session = get_session(sid)
        if session is None:
            return _jresp({"error": "unknown session"}, 404)
        payload = await request.json()
        vertex = payload.get("vertex")
        if not isinstance(vertex, int):
            return _jresp({"error": "vertex must be an integer"}, 400)
        with session.lock:
            try:
                session.mutate(vertex)
            except (BadVertex, SignIncoherent) as exc:
                return _jresp({"error": str(exc)}, 400)
            return _jresp(session.state())

    @app.post("/sessions/{sid}/undo")
    async def post_undo(sid: str):
        session = get_session(sid)
        if session is None:
            return _jresp({"error": "unknown session"}, 404)
        with session.lock:
            try:
                session.undo()
            except BadVertex as exc:
                return _jresp({"error": str(exc)}, 400)
            return _jresp(session.state())

    @app.post("/sessions/{sid}/qseries")
    async def post_qseries(sid: str, request: Request):
        session = get_session(sid)
        if session is None:
            return _jresp({"error": "unknown session"}, 404)
        payload = await request.json()
        degree = payload.get("degree", 4)
        if not isinstance(degree, int) or degree < 0:
            return _jresp({"error": "degree must be a nonnegative integer"}, 400)
        with session.lock:
            phi = reddening_end(session.ice, session.initial)
            if phi is None:
                return _jresp({"error": "session is not at a reddening state"}, 409)
            seq = [step["vertex"] for step in session.history]
            loop = MutationLoop(session.initial, seq, phi)
            series = partition_qseries(loop, degree)
            return _jresp(jsonio.series_payload(series))

    @app.get("/sessions/{sid}/export")
    async def get_export(sid: str):
        session = get_session(sid)
        if session is None:
            return _jresp({"error": "unknown session"}, 404)
        with session.lock:
            seq = [step["vertex"] for step in session.history]
            return _jresp(run_ice_trace(session.initial, seq).to_json())

    @app.get("/corpus")
    async def get_corpus():
        return _jresp([e.to_json() for e in corpus()])

    return app
