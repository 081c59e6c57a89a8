"""HTTP session API (consumed by the web UI and by scripting clients).

Scenarios are posted once and referenced by id; sessions stream observations
against them.  Mutations to one session are serialized behind a per-session
lock, so concurrent observers cannot interleave half-applied updates; reads
and distinct sessions proceed independently.  Nothing survives a restart
except what clients re-post (the export endpoint exists for replay).

Errors are always ``{"error": code, "detail": message}`` with status 400
(bad input), 404 (unknown id), or 409 (conflict, e.g. observing a finished
session).
"""

from __future__ import annotations

import itertools
import math
import threading
from fastapi import Body, FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse

from . import advisor, formats, session, solver
from .model import Scenario
from .session import SessionState, TerminatedSessionError

DEFAULT_ADVICE_DEPTH = 2


class ApiError(Exception):
    def __init__(self, status: int, code: str, detail: str):
        super().__init__(detail)
        self.status = status
        self.code = code
        self.detail = detail


def _advice_payload(advice: advisor.Advice) -> dict:
    return {
        "ranked": [
            {
                "input": entry.input,
                "score": None if math.isinf(entry.score) else entry.score,
                "exact": entry.exact,
            }
            for entry in advice.ranked
        ],
        "depth_used": advice.depth_used,
        "nodes_expanded": advice.nodes_expanded,
        "mode": advice.mode,
        "truncated": advice.truncated,
        "fallback": advice.fallback,
    }


class _Store:
    """Process-local state: scenarios, sessions, and one lock per session."""

    def __init__(self) -> None:
        self._guard = threading.Lock()
        self._scenario_ids = itertools.count(1)
        self.scenarios: dict[str, Scenario] = {}
        self.sessions: dict[str, SessionState] = {}
        self.session_scenario: dict[str, str] = {}
        self.session_locks: dict[str, threading.Lock] = {}

    def add_scenario(self, scenario: Scenario) -> str:
        with self._guard:
            scenario_id = f"s{next(self._scenario_ids)}"
            self.scenarios[scenario_id] = scenario
            return scenario_id

    def scenario(self, scenario_id: str) -> Scenario:
        scenario = self.scenarios.get(scenario_id)
        if scenario is None:
            raise ApiError(404, "unknown_scenario", f"no scenario {scenario_id!r}")
        return scenario

    def add_session(self, state: SessionState, scenario_id: str) -> None:
        with self._guard:
            self.sessions[state.id] = state
            self.session_scenario[state.id] = scenario_id
            self.session_locks[state.id] = threading.Lock()

    def session(self, session_id: str) -> SessionState:
        state = self.sessions.get(session_id)
        if state is None:
            raise ApiError(404, "unknown_session", f"no session {session_id!r}")
        return state

    def lock(self, session_id: str) -> threading.Lock:
        lock = self.session_locks.get(session_id)
        if lock is None:
            raise ApiError(404, "unknown_session", f"no session {session_id!r}")
        return lock

    def drop_session(self, session_id: str) -> None:
        with self._guard:
            self.sessions.pop(session_id, None)
            self.session_scenario.pop(session_id, None)
            self.session_locks.pop(session_id, None)


def _session_payload(store: _Store, state: SessionState) -> dict:
    scenario = state.scenario
    correct = [n for n in scenario.function_names if n in state.consistent and n in scenario.correct]
    incorrect = [n for n in scenario.function_names if n in state.consistent and n not in scenario.correct]
    producible = {
        i: scenario.producible_outputs(state.consistent, i) if state.consistent else []
        for i in scenario.inputs
    }
    return {
        "session_id": state.id,
        "scenario_id": store.session_scenario.get(state.id),
        "status": state.status.value,
        "history": [[i, o] for i, o in state.history],
        "consistent": {"correct": correct, "incorrect": incorrect},
        "violation": list(state.violation) if state.violation else None,
        "heuristic_value": advisor.heuristic_value(scenario, state.consistent)
        if state.consistent
        else None,
        "inputs": list(scenario.inputs),
        "outputs": list(scenario.outputs),
        "unused_inputs": list(state.unused_inputs),
        "producible": producible,
        "created": state.created,
        "updated": state.updated,
    }


def create_app(ui_dir: str | None = None) -> FastAPI:
    app = FastAPI(title="adaptest session API")
    store = _Store()

    @app.exception_handler(ApiError)
    async def _api_error(_request: Request, exc: ApiError) -> JSONResponse:
        return JSONResponse({"error": exc.code, "detail": exc.detail}, status_code=exc.status)

    @app.exception_handler(RequestValidationError)
    async def _validation_error(_request: Request, exc: RequestValidationError) -> JSONResponse:
        return JSONResponse({"error": "bad_request", "detail": str(exc)}, status_code=400)

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok"}

    @app.post("/scenarios")
    def post_scenario(payload: dict = Body(...)) -> dict:
        try:
            scenario, k = formats.document_to_scenario(payload)
        except formats.FormatError as exc:
            raise ApiError(400, "invalid_scenario", str(exc)) from exc
        scenario_id = store.add_scenario(scenario)
        return {
            "scenario_id": scenario_id,
            "k": k,
            "counts": {
                "functions": len(scenario.functions),
                "correct": len(scenario.correct),
                "inputs": len(scenario.inputs),
                "outputs": len(scenario.outputs),
            },
        }

    @app.get("/scenarios/{scenario_id}")
    def get_scenario(scenario_id: str) -> dict:
        scenario = store.scenario(scenario_id)
        return {"scenario_id": scenario_id, "document": formats.scenario_to_document(scenario)}

    @app.get("/scenarios/{scenario_id}/strategy")
    def get_strategy(scenario_id: str, k: int | None = None) -> dict:
        scenario = store.scenario(scenario_id)
        depth = k if k is not None else solver.optimize(scenario)
        if depth is None:
            raise ApiError(409, "infeasible", "no adaptive strategy can force a verdict")
        try:
            tree = solver.extract_strategy(scenario, depth)
        except solver.NoStrategyError as exc:
            raise ApiError(409, "infeasible", str(exc)) from exc
        return {"k": depth, "tree": formats.tree_to_document(tree)}

    @app.post("/sessions")
    def post_session(payload: dict = Body(...)) -> dict:
        scenario_id = payload.get("scenario_id")
        if not isinstance(scenario_id, str):
            raise ApiError(400, "bad_request", "body must contain a 'scenario_id' string")
        scenario = store.scenario(scenario_id)
        state = session.create_session(scenario)
        store.add_session(state, scenario_id)
        return _session_payload(store, state)

    @app.get("/sessions/{session_id}")
    def get_session(session_id: str) -> dict:
        return _session_payload(store, store.session(session_id))

    @app.post("/sessions/{session_id}/observe")
    def post_observe(session_id: str, payload: dict = Body(...)) -> dict:
        input_symbol = payload.get("input")
        output_symbol = payload.get("output")
        if not isinstance(input_symbol, str) or not isinstance(output_symbol, str):
            raise ApiError(400, "bad_request", "body must contain 'input' and 'output' strings")
        with store.lock(session_id):
            state = store.session(session_id)
            try:
                new_state = session.observe(state, input_symbol, output_symbol)
            except TerminatedSessionError as exc:
                raise ApiError(409, "session_finished", str(exc)) from exc
            except ValueError as exc:
                raise ApiError(400, "bad_request", str(exc)) from exc
            store.sessions[session_id] = new_state
        return _session_payload(store, new_state)

    @app.get("/sessions/{session_id}/advice")
    def get_advice(
        session_id: str,
        mode: str = advisor.MODE_EXACT,
        depth: int = DEFAULT_ADVICE_DEPTH,
        budget: int | None = None,
    ) -> dict:
        state = store.session(session_id)
        try:
            advice = session.recommend(state, mode=mode, depth=depth, budget=budget)
        except TerminatedSessionError as exc:
            raise ApiError(409, "session_finished", str(exc)) from exc
        except ValueError as exc:
            raise ApiError(400, "bad_request", str(exc)) from exc
        return _advice_payload(advice)

    @app.get("/sessions/{session_id}/feasibility")
    def get_feasibility(session_id: str) -> dict:
        state = store.session(session_id)
        try:
            remaining = session.feasibility(state)
        except TerminatedSessionError as exc:
            raise ApiError(409, "session_finished", str(exc)) from exc
        if remaining is None:
            return {"infeasible": True}
        return {"min_tests": remaining}

    @app.get("/sessions/{session_id}/export")
    def get_export(session_id: str) -> dict:
        state = store.session(session_id)
        return {
            "session_id": state.id,
            "scenario_id": store.session_scenario.get(session_id),
            "history": [[i, o] for i, o in state.history],
            "status": state.status.value,
        }

    @app.delete("/sessions/{session_id}")
    def delete_session(session_id: str) -> dict:
        with store.lock(session_id):
            store.session(session_id)  # 404 if already gone
            store.drop_session(session_id)
        return {"deleted": session_id}

    if ui_dir is not None:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=ui_dir, html=True), name="ui")

    return app
