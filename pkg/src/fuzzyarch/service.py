"""HTTP facade for what-if queries against a loaded model.

Constraints and weights travel in each request; the stored model only
changes through PUT /model and POST /tactics/apply, both guarded by an
optimistic revision counter.
"""
from __future__ import annotations

import json
import threading
from typing import Any, Optional

from fastapi import FastAPI, Query, Request, Response
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse, PlainTextResponse
from pydantic import BaseModel, Field

from .cli import default_weights, result_document
from .fuzzy import LinguisticLevel, level_to_fuzzy, membership
from .goal_model import GraphError, Tactic, apply_tactic, export_dot, natural_key
from .model_io import Model, ModelError, parse_model, write_model
from .ranking import (
    EmptyFeasibleSetError,
    crisp_rank,
    divergence_report,
    feasible_set,
    rank,
    tightest_constraints,
)
from .space import BACKENDS, ConstraintSet, score_space, space_size


class RankRequest(BaseModel):
    weights: dict[str, float] = Field(default_factory=dict)
    goal_thresholds: Optional[dict[str, float]] = None
    budget: Optional[float] = None
    k: Optional[float] = None
    backend: Optional[str] = None
    top: int = 10


class TacticRequest(BaseModel):
    tactic: str
    params: dict[str, Any] = Field(default_factory=dict)
    base_revision: Optional[int] = None


class SessionState:
    """Current model plus a revision counter; writes are serialized."""

    def __init__(self, model: Model):
        self._lock = threading.Lock()
        self._model = model
        self._revision = 1

    def snapshot(self) -> tuple[Model, int]:
        with self._lock:
            return self._model, self._revision

    def replace(self, model: Model, base_revision: Optional[int]) -> int:
        with self._lock:
            if base_revision is not None and base_revision != self._revision:
                raise StaleRevisionError(self._revision)
            self._model = model
            self._revision += 1
            return self._revision


class StaleRevisionError(Exception):
    def __init__(self, current: int):
        super().__init__(f"stale base revision; current is {current}")
        self.current = current


def _resolve_query(model: Model, req: RankRequest):
    weights = default_weights(model)
    weights.update({str(g): float(w) for g, w in req.weights.items()})
    thresholds = (dict(model.constraints.goal_thresholds)
                  if req.goal_thresholds is None else
                  {str(g): float(t) for g, t in req.goal_thresholds.items()})
    budget = model.constraints.cost_budget if req.budget is None else req.budget
    constraints = ConstraintSet(goal_thresholds=thresholds, cost_budget=budget)
    k = model.settings.k if req.k is None else req.k
    backend = req.backend or model.settings.backend
    if backend not in BACKENDS:
        raise ModelError(f"unknown backend {backend!r}")
    return weights, constraints, k, backend


def create_app(model: Model) -> FastAPI:
    app = FastAPI(title="fuzzyarch", version="0.1.0")
    app.add_middleware(CORSMiddleware, allow_origins=["*"],
                       allow_methods=["*"], allow_headers=["*"])
    state = SessionState(model)
    app.state.session = state

    @app.exception_handler(ModelError)
    async def model_error(request: Request, exc: ModelError):
        return JSONResponse(status_code=400, content={"error": str(exc)})

    @app.exception_handler(GraphError)
    async def graph_error(request: Request, exc: GraphError):
        return JSONResponse(status_code=400, content={"error": str(exc)})

    @app.exception_handler(StaleRevisionError)
    async def stale_revision(request: Request, exc: StaleRevisionError):
        return JSONResponse(status_code=409,
                            content={"error": str(exc),
                                     "current_revision": exc.current})

    @app.get("/model")
    def get_model():
        current, revision = state.snapshot()
        return {"revision": revision,
                "model": json.loads(write_model(current))}

    @app.put("/model")
    def put_model(body: dict, base_revision: Optional[int] = None):
        new_model = parse_model(json.dumps(body.get("model", body)))
        revision = state.replace(new_model, base_revision)
        return {"revision": revision}

    @app.get("/space/size")
    def get_size():
        current, revision = state.snapshot()
        return {"size": space_size(current.graph), "revision": revision}

    @app.post("/rank")
    def post_rank(req: RankRequest):
        current, revision = state.snapshot()
        weights, constraints, k, backend = _resolve_query(current, req)
        scored = score_space(current.graph, current.matrix, weights, backend,
                             current.settings.universe_hi,
                             current.settings.normalize)
        result = feasible_set(current.graph, current.matrix, constraints,
                              weights, backend, scored=scored)
        if not result.feasible:
            return JSONResponse(status_code=422, content={
                "error": "no feasible architecture",
                "counts": {"total": result.total,
                           "ruled_out": result.ruled_out, "feasible": 0},
                "tightest": tightest_constraints(scored, constraints,
                                                 current.graph),
                "revision": revision})
        ranked = rank(result.feasible, k, weights, constraints, backend)
        doc = result_document(current, ranked, result.total,
                              result.ruled_out, req.top)
        doc["revision"] = revision
        return doc

    @app.post("/compare")
    def post_compare(req: RankRequest):
        current, revision = state.snapshot()
        weights, constraints, k, _ = _resolve_query(current, req)
        scored = score_space(current.graph, current.matrix, weights,
                             "fuzzy_sum", current.settings.universe_hi,
                             current.settings.normalize)
        result = feasible_set(current.graph, current.matrix, constraints,
                              weights, "fuzzy_sum", scored=scored)
        if not result.feasible:
            return JSONResponse(status_code=422, content={
                "error": "no feasible architecture",
                "tightest": tightest_constraints(scored, constraints,
                                                 current.graph),
                "revision": revision})
        ranked = rank(result.feasible, k, weights, constraints, "fuzzy_sum")
        crisp = crisp_rank(result.feasible, current.matrix, weights)
        report = divergence_report(ranked, crisp)
        return {
            "revision": revision,
            "headline": {
                "crisp_winner_fuzzy_rank": report.crisp_winner_fuzzy_rank,
                "fuzzy_winner_crisp_rank": report.fuzzy_winner_crisp_rank,
                "spearman_rho": report.spearman_rho,
            },
            "fuzzy_top": [
                {"rank": row.rank, "index": row.scored.architecture.index,
                 "ch": row.chen_index,
                 "selection": {d: row.scored.architecture.selection[d]
                               for d in sorted(row.scored.architecture.selection,
                                               key=natural_key)}}
                for row in ranked.rows[:req.top]],
            "crisp_top": [
                {"rank": pos, "index": idx, "score": score}
                for idx, score, pos in crisp[:req.top]],
        }

    @app.post("/tactics/apply")
    def post_tactic(req: TacticRequest):
        current, _ = state.snapshot()
        try:
            tactic = Tactic(req.tactic)
        except ValueError:
            raise GraphError(f"unknown tactic {req.tactic!r}")
        graph = apply_tactic(current.graph, tactic, req.params)
        new_model = Model(graph=graph, matrix=current.matrix,
                          constraints=current.constraints,
                          settings=current.settings, name=current.name,
                          notes=current.notes)
        revision = state.replace(new_model, req.base_revision)
        return {"revision": revision}

    @app.get("/membership")
    def get_membership(level: str = Query(...), x: float = Query(...)):
        current, revision = state.snapshot()
        try:
            lvl = LinguisticLevel.parse(level)
        except ValueError as exc:
            raise ModelError(str(exc))
        shape = level_to_fuzzy(lvl, current.settings.universe_hi)
        return {"level": lvl.name, "x": x,
                "membership": membership(shape, x), "revision": revision}

    @app.get("/export/dot")
    def get_dot():
        current, _ = state.snapshot()
        return PlainTextResponse(export_dot(current.graph))

    return app
