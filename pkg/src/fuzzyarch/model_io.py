"""Model-file format: a UTF-8 JSON document bundling the goal model, the
contribution matrix, constraints and engine settings.

Serialization is canonical (id-sorted lists, sorted keys, plain repr
floats) so structurally equal models produce identical bytes.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from typing import Any, Optional

from .fuzzy import DEFAULT_UNIVERSE_HI, FuzzyNumber, LinguisticLevel
from .goal_model import (
    AlternativeNode,
    Consequence,
    DecisionNode,
    Direction,
    GoalModelGraph,
    GoalNode,
    GoalSpec,
    Likelihood,
    ObstacleNode,
    ResolutionStatus,
    natural_key,
    validate,
)
from .space import ConstraintSet, ContributionMatrix, matrix_from_graph

FORMAT_VERSION = 1


class ModelError(ValueError):
    """Malformed or referentially broken model document."""

    def __init__(self, message: str, location: str = ""):
        super().__init__(f"{location}: {message}" if location else message)
        self.location = location


@dataclass(frozen=True)
class Settings:
    universe_hi: float = DEFAULT_UNIVERSE_HI
    k: float = 1.0
    backend: str = "fuzzy_sum"
    normalize: bool = False


@dataclass(frozen=True)
class Model:
    graph: GoalModelGraph
    matrix: ContributionMatrix
    constraints: ConstraintSet
    settings: Settings
    name: str = ""
    notes: tuple[str, ...] = ()


def _quad(value: Any, location: str) -> FuzzyNumber:
    if (not isinstance(value, (list, tuple)) or len(value) != 4
            or not all(isinstance(v, (int, float)) for v in value)):
        raise ModelError(f"expected a quadruple [a, b, c, d], got {value!r}",
                         location)
    try:
        return FuzzyNumber(*map(float, value))
    except ValueError as exc:
        raise ModelError(str(exc), location) from None


def _contribution(value: Any, location: str) -> LinguisticLevel | FuzzyNumber:
    if isinstance(value, str):
        try:
            return LinguisticLevel.parse(value)
        except ValueError as exc:
            raise ModelError(str(exc), location) from None
    return _quad(value, location)


def parse_model(data: bytes | str) -> Model:
    """Parse and fully validate a model document."""
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise ModelError(f"invalid JSON: {exc.msg}",
                         f"line {exc.lineno}, column {exc.colno}") from None
    if not isinstance(doc, dict):
        raise ModelError("document root must be an object")
    if doc.get("format_version") != FORMAT_VERSION:
        raise ModelError(
            f"unsupported format_version {doc.get('format_version')!r}")

    settings_doc = doc.get("settings", {})
    settings = Settings(
        universe_hi=float(settings_doc.get("universe_hi", DEFAULT_UNIVERSE_HI)),
        k=float(settings_doc.get("k", 1.0)),
        backend=str(settings_doc.get("backend", "fuzzy_sum")),
        normalize=bool(settings_doc.get("normalize", False)))
    if settings.backend not in ("fuzzy_sum", "mamdani"):
        raise ModelError(f"unknown backend {settings.backend!r}", "settings")

    goals = []
    for i, g in enumerate(doc.get("goals", [])):
        loc = f"goals[{i}]"
        try:
            direction = Direction(g.get("direction", "maximize"))
        except ValueError:
            raise ModelError(f"unknown direction {g.get('direction')!r}", loc) \
                from None
        spec = None
        if g.get("spec"):
            unknown = set(g["spec"]) - {"definition", "quality_variable",
                                        "sample_space", "objective_function"}
            if unknown:
                raise ModelError(f"unknown spec fields {sorted(unknown)}", loc)
            spec = GoalSpec(**g["spec"])
        goals.append(GoalNode(
            id=str(g["id"]), name=str(g.get("name", "")),
            category=str(g.get("category", "")), direction=direction,
            weight=int(g.get("weight", 1)), spec=spec,
            threshold=(float(g["threshold"])
                       if g.get("threshold") is not None else None),
            threshold_note=str(g.get("threshold_note", "")),
            responsible_agent=str(g.get("responsible_agent", ""))))

    obstacles = []
    refines_obstacle = []
    obstructs = []
    for i, o in enumerate(doc.get("obstacles", [])):
        loc = f"obstacles[{i}]"
        try:
            likelihood = (Likelihood.parse(o["likelihood"])
                          if o.get("likelihood") else None)
            consequence = (Consequence.parse(o["consequence"])
                           if o.get("consequence") else None)
            status = ResolutionStatus(o.get("status", "open"))
        except ValueError as exc:
            raise ModelError(str(exc), loc) from None
        obstacles.append(ObstacleNode(
            id=str(o["id"]), name=str(o.get("name", "")),
            likelihood=likelihood, consequence=consequence,
            resolution_status=status))
        if o.get("parent"):
            refines_obstacle.append((str(o["id"]), str(o["parent"])))
        for gid in o.get("obstructs", []):
            obstructs.append((str(o["id"]), str(gid)))

    decisions = []
    operationalises = []
    resolves = []
    for i, d in enumerate(doc.get("decisions", [])):
        decisions.append(DecisionNode(
            id=str(d["id"]), name=str(d.get("name", "")),
            kind=str(d.get("kind", "operationalisation"))))
        for gid in d.get("operationalises", []):
            operationalises.append((str(d["id"]), str(gid)))
        for oid in d.get("resolves", []):
            resolves.append((str(d["id"]), str(oid)))

    alternatives = []
    for i, a in enumerate(doc.get("alternatives", [])):
        loc = f"alternatives[{i}]"
        contributions = {
            str(gid): _contribution(value, f"{loc}.contributions.{gid}")
            for gid, value in a.get("contributions", {}).items()}
        crisp = {str(gid): float(value)
                 for gid, value in a.get("crisp_contributions", {}).items()}
        cost = (_quad(a["cost"], f"{loc}.cost")
                if a.get("cost") is not None else None)
        alternatives.append(AlternativeNode(
            id=str(a["id"]), name=str(a.get("name", "")),
            decision=str(a["decision"]), contributions=contributions,
            crisp_contributions=crisp, cost=cost))

    refines_goal = [(g.id, str(doc_g["parent"]))
                    for g, doc_g in zip(goals, doc.get("goals", []))
                    if doc_g.get("parent")]

    graph = GoalModelGraph(
        goals=tuple(goals), obstacles=tuple(obstacles),
        decisions=tuple(decisions), alternatives=tuple(alternatives),
        root_goal=doc.get("root_goal"),
        refines_goal=tuple(refines_goal),
        refines_obstacle=tuple(refines_obstacle),
        obstructs=tuple(obstructs),
        operationalises=tuple(operationalises),
        resolves=tuple(resolves))
    problems = validate(graph)
    if problems:
        raise ModelError("; ".join(problems))

    thresholds = {g.id: g.threshold for g in goals if g.threshold is not None}
    budget = doc.get("cost_budget")
    constraints = ConstraintSet(
        goal_thresholds=thresholds,
        cost_budget=float(budget) if budget is not None else None)
    matrix = matrix_from_graph(graph, settings.universe_hi)
    return Model(graph=graph, matrix=matrix, constraints=constraints,
                 settings=settings, name=str(doc.get("name", "")),
                 notes=tuple(doc.get("notes", [])))


def _goal_doc(model: Model, goal: GoalNode) -> dict:
    parents = {child: parent for child, parent in model.graph.refines_goal}
    out: dict[str, Any] = {
        "id": goal.id, "name": goal.name, "category": goal.category,
        "direction": goal.direction.value, "weight": goal.weight,
    }
    if goal.id in parents:
        out["parent"] = parents[goal.id]
    if goal.spec is not None:
        out["spec"] = {
            "definition": goal.spec.definition,
            "quality_variable": goal.spec.quality_variable,
            "sample_space": goal.spec.sample_space,
            "objective_function": goal.spec.objective_function,
        }
    if goal.threshold is not None:
        out["threshold"] = goal.threshold
    if goal.threshold_note:
        out["threshold_note"] = goal.threshold_note
    if goal.responsible_agent:
        out["responsible_agent"] = goal.responsible_agent
    return out


def write_model(model: Model) -> bytes:
    """Canonical UTF-8 JSON serialization of a model."""
    graph = model.graph
    obstructs: dict[str, list[str]] = {}
    for oid, gid in graph.obstructs:
        obstructs.setdefault(oid, []).append(gid)
    obstacle_parents = {child: parent for child, parent in graph.refines_obstacle}
    operationalises: dict[str, list[str]] = {}
    for did, gid in graph.operationalises:
        operationalises.setdefault(did, []).append(gid)
    resolves: dict[str, list[str]] = {}
    for did, oid in graph.resolves:
        resolves.setdefault(did, []).append(oid)

    def contribution_doc(alt: AlternativeNode, gid: str):
        value = alt.contributions[gid]
        if isinstance(value, LinguisticLevel):
            return value.name
        return list(value.quadruple())

    doc: dict[str, Any] = {
        "format_version": FORMAT_VERSION,
        "name": model.name,
        "settings": {
            "universe_hi": model.settings.universe_hi,
            "k": model.settings.k,
            "backend": model.settings.backend,
            "normalize": model.settings.normalize,
        },
        "root_goal": graph.root_goal,
        "goals": [_goal_doc(model, g)
                  for g in sorted(graph.goals, key=lambda n: natural_key(n.id))],
        "obstacles": [
            {
                "id": o.id, "name": o.name,
                **({"likelihood": o.likelihood.label()} if o.likelihood else {}),
                **({"consequence": o.consequence.label()} if o.consequence else {}),
                "status": o.resolution_status.value,
                **({"parent": obstacle_parents[o.id]}
                   if o.id in obstacle_parents else {}),
                "obstructs": sorted(obstructs.get(o.id, []), key=natural_key),
            }
            for o in sorted(graph.obstacles, key=lambda n: natural_key(n.id))],
        "decisions": [
            {
                "id": d.id, "name": d.name, "kind": d.kind,
                "operationalises": sorted(operationalises.get(d.id, []),
                                          key=natural_key),
                "resolves": sorted(resolves.get(d.id, []), key=natural_key),
            }
            for d in sorted(graph.decisions, key=lambda n: natural_key(n.id))],
        "alternatives": [
            {
                "id": a.id, "name": a.name, "decision": a.decision,
                "contributions": {gid: contribution_doc(a, gid)
                                  for gid in sorted(a.contributions,
                                                    key=natural_key)},
                **({"crisp_contributions": {
                    gid: a.crisp_contributions[gid]
                    for gid in sorted(a.crisp_contributions, key=natural_key)}}
                   if a.crisp_contributions else {}),
                **({"cost": list(a.cost.quadruple())} if a.cost else {}),
            }
            for a in sorted(graph.alternatives, key=lambda n: natural_key(n.id))],
        "cost_budget": model.constraints.cost_budget,
        "notes": list(model.notes),
    }
    return (json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False)
            + "\n").encode("utf-8")


def load_model(path) -> Model:
    with open(path, "rb") as fh:
        return parse_model(fh.read())


def exemplar_path() -> str:
    """Path of the bundled big-data adoption exemplar model."""
    return str(resources.files("fuzzyarch") / "fixtures" / "exemplar.json")


def divergence_path() -> str:
    """Path of the constructed fuzzy-vs-crisp divergence instance."""
    return str(resources.files("fuzzyarch") / "fixtures" / "divergence.json")
