"""Goal-obstacle graph: goals, obstacles, decisions, alternatives, the
qualitative risk matrix and the eight obstacle-resolution tactics.

Graphs are immutable values; tactics are pure rewrites returning a new
graph, which keeps an audit trail of what-if explorations cheap.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from enum import Enum, IntEnum
from functools import cached_property
from typing import Mapping, Optional

from .fuzzy import FuzzyNumber, LinguisticLevel


class Likelihood(IntEnum):
    RARE = 0
    UNLIKELY = 1
    POSSIBLE = 2
    LIKELY = 3
    ALMOST_CERTAIN = 4

    @classmethod
    def parse(cls, text: str) -> "Likelihood":
        key = re.sub(r"[\s_-]+", "_", text.strip()).upper()
        try:
            return cls[key]
        except KeyError:
            raise ValueError(f"unknown likelihood {text!r}") from None

    def label(self) -> str:
        return self.name.replace("_", " ").title()


class Consequence(IntEnum):
    INSIGNIFICANT = 0
    MINOR = 1
    MODERATE = 2
    MAJOR = 3
    CATASTROPHIC = 4

    @classmethod
    def parse(cls, text: str) -> "Consequence":
        try:
            return cls[text.strip().upper()]
        except KeyError:
            raise ValueError(f"unknown consequence {text!r}") from None

    def label(self) -> str:
        return self.name.title()


class RiskLevel(IntEnum):
    """L < M < H < E < V (very extreme)."""

    L = 0
    M = 1
    H = 2
    E = 3
    V = 4


# Rows: likelihood Rare..AlmostCertain; columns: Insignificant..Catastrophic.
_RISK_MATRIX = {
    Likelihood.ALMOST_CERTAIN: "H H E E V",
    Likelihood.LIKELY: "M H H E V",
    Likelihood.POSSIBLE: "L M H E E",
    Likelihood.UNLIKELY: "L L M H E",
    Likelihood.RARE: "L L M H H",
}
RISK_MATRIX: dict[tuple[Likelihood, Consequence], RiskLevel] = {
    (lik, cons): RiskLevel[cell]
    for lik, row in _RISK_MATRIX.items()
    for cons, cell in zip(Consequence, row.split())
}


def assess_risk(likelihood: Likelihood, consequence: Consequence) -> RiskLevel:
    """5x5 qualitative risk lookup (likelihood x consequence severity)."""
    return RISK_MATRIX[(likelihood, consequence)]


class Direction(str, Enum):
    MAXIMIZE = "maximize"
    MINIMIZE = "minimize"


class ResolutionStatus(str, Enum):
    OPEN = "open"
    RESOLVED = "resolved"
    ACCEPTED = "accepted"


class Tactic(str, Enum):
    SUBSTITUTE_GOAL = "substitute_goal"
    SUBSTITUTE_PLATFORM = "substitute_platform"
    PREVENT_OBSTACLE = "prevent_obstacle"
    REDUCE_OBSTACLE = "reduce_obstacle"
    WEAKEN_GOAL = "weaken_goal"
    RESTORE_GOAL = "restore_goal"
    MITIGATE_OBSTACLE = "mitigate_obstacle"
    DO_NOTHING = "do_nothing"


OPERATIONALISATION = "operationalisation"


class GraphError(ValueError):
    """Structural problem that prevents an operation on the graph."""


class IncompleteAssessmentError(GraphError):
    """Obstacle lacks likelihood/consequence attributes."""


@dataclass(frozen=True)
class GoalSpec:
    definition: str = ""
    quality_variable: str = ""
    sample_space: str = ""
    objective_function: str = ""


@dataclass(frozen=True)
class GoalNode:
    id: str
    name: str
    category: str = ""
    direction: Direction = Direction.MAXIMIZE
    weight: int = 1
    spec: Optional[GoalSpec] = None
    threshold: Optional[float] = None  # score-scale constraint Crt_g
    threshold_note: str = ""           # original quality-variable units
    responsible_agent: str = ""


@dataclass(frozen=True)
class ObstacleNode:
    id: str
    name: str
    likelihood: Optional[Likelihood] = None
    consequence: Optional[Consequence] = None
    resolution_status: ResolutionStatus = ResolutionStatus.OPEN


@dataclass(frozen=True)
class DecisionNode:
    id: str
    name: str
    kind: str = OPERATIONALISATION  # or a Tactic value


@dataclass(frozen=True)
class AlternativeNode:
    id: str
    name: str
    decision: str
    contributions: Mapping[str, LinguisticLevel | FuzzyNumber] = field(
        default_factory=dict)
    crisp_contributions: Mapping[str, float] = field(default_factory=dict)
    cost: Optional[FuzzyNumber] = None


@dataclass(frozen=True)
class GoalModelGraph:
    goals: tuple[GoalNode, ...] = ()
    obstacles: tuple[ObstacleNode, ...] = ()
    decisions: tuple[DecisionNode, ...] = ()
    alternatives: tuple[AlternativeNode, ...] = ()
    root_goal: Optional[str] = None
    refines_goal: tuple[tuple[str, str], ...] = ()      # (child, parent)
    refines_obstacle: tuple[tuple[str, str], ...] = ()  # (child, parent)
    obstructs: tuple[tuple[str, str], ...] = ()         # (obstacle, goal)
    operationalises: tuple[tuple[str, str], ...] = ()   # (decision, goal)
    resolves: tuple[tuple[str, str], ...] = ()          # (decision, obstacle)

    @cached_property
    def goal_by_id(self) -> dict[str, GoalNode]:
        return {g.id: g for g in self.goals}

    @cached_property
    def obstacle_by_id(self) -> dict[str, ObstacleNode]:
        return {o.id: o for o in self.obstacles}

    @cached_property
    def decision_by_id(self) -> dict[str, DecisionNode]:
        return {d.id: d for d in self.decisions}

    @cached_property
    def alternative_by_id(self) -> dict[str, AlternativeNode]:
        return {a.id: a for a in self.alternatives}

    @cached_property
    def alternatives_of(self) -> dict[str, tuple[AlternativeNode, ...]]:
        out: dict[str, list[AlternativeNode]] = {d.id: [] for d in self.decisions}
        for a in self.alternatives:
            out.setdefault(a.decision, []).append(a)
        return {k: tuple(sorted(v, key=lambda a: natural_key(a.id)))
                for k, v in out.items()}


def natural_key(identifier: str):
    """Sort key splitting digit runs so g2 < g10."""
    return tuple(int(p) if p.isdigit() else p
                 for p in re.split(r"(\d+)", identifier))


def _find_cycle(edges: list[tuple[str, str]]) -> Optional[list[str]]:
    adjacency: dict[str, list[str]] = {}
    for child, parent in edges:
        adjacency.setdefault(child, []).append(parent)
    state: dict[str, int] = {}

    def visit(node: str, trail: list[str]) -> Optional[list[str]]:
        state[node] = 1
        trail.append(node)
        for nxt in adjacency.get(node, ()):
            if state.get(nxt) == 1:
                return trail[trail.index(nxt):] + [nxt]
            if state.get(nxt, 0) == 0:
                found = visit(nxt, trail)
                if found:
                    return found
        trail.pop()
        state[node] = 2
        return None

    for start in sorted(adjacency, key=natural_key):
        if state.get(start, 0) == 0:
            found = visit(start, [])
            if found:
                return found
    return None


def validate(graph: GoalModelGraph) -> list[str]:
    """All invariant violations as human-readable diagnostics; [] iff valid."""
    diags: list[str] = []
    seen: dict[str, str] = {}
    for kind, nodes in (("goal", graph.goals), ("obstacle", graph.obstacles),
                        ("decision", graph.decisions),
                        ("alternative", graph.alternatives)):
        for node in nodes:
            if node.id in seen:
                diags.append(f"duplicate id {node.id!r} ({seen[node.id]} and {kind})")
            else:
                seen[node.id] = kind
    goal_ids = {g.id for g in graph.goals}
    obstacle_ids = {o.id for o in graph.obstacles}
    decision_ids = {d.id for d in graph.decisions}
    for g in graph.goals:
        if not 1 <= g.weight <= 10:
            diags.append(f"goal {g.id}: weight {g.weight} outside [1, 10]")
    if graph.root_goal is not None and graph.root_goal not in goal_ids:
        diags.append(f"root goal {graph.root_goal!r} does not exist")
    for a in graph.alternatives:
        if a.decision not in decision_ids:
            diags.append(f"alternative {a.id}: unknown owning decision {a.decision!r}")
        for gid in a.contributions:
            if gid not in goal_ids:
                diags.append(f"alternative {a.id}: contribution to unknown goal {gid!r}")
        for gid in a.crisp_contributions:
            if gid not in goal_ids:
                diags.append(f"alternative {a.id}: crisp contribution to unknown goal {gid!r}")
    for label, edges, src_ids, dst_ids in (
            ("refines(goal)", graph.refines_goal, goal_ids, goal_ids),
            ("refines(obstacle)", graph.refines_obstacle, obstacle_ids, obstacle_ids),
            ("obstructs", graph.obstructs, obstacle_ids, goal_ids),
            ("operationalises", graph.operationalises, decision_ids, goal_ids),
            ("resolves", graph.resolves, decision_ids, obstacle_ids)):
        for src, dst in edges:
            if src not in src_ids:
                diags.append(f"{label} edge {src}->{dst}: unknown source {src!r}")
            if dst not in dst_ids:
                diags.append(f"{label} edge {src}->{dst}: unknown target {dst!r}")
    for label, edges in (("goal", list(graph.refines_goal)),
                         ("obstacle", list(graph.refines_obstacle))):
        cycle = _find_cycle(edges)
        if cycle:
            diags.append(f"{label} refinement cycle: {' -> '.join(cycle)}")
    for d in graph.decisions:
        if d.kind != OPERATIONALISATION and d.kind not in {t.value for t in Tactic}:
            diags.append(f"decision {d.id}: unknown kind {d.kind!r}")
    return diags


def obstacle_risk(obstacle: ObstacleNode) -> RiskLevel:
    if obstacle.likelihood is None or obstacle.consequence is None:
        raise IncompleteAssessmentError(
            f"obstacle {obstacle.id} lacks likelihood/consequence")
    return assess_risk(obstacle.likelihood, obstacle.consequence)


def severe_obstacles(graph: GoalModelGraph,
                     threshold: RiskLevel = RiskLevel.H) -> list[ObstacleNode]:
    """Obstacles at or above the risk threshold, worst first."""
    assessed = [(obstacle_risk(o), o) for o in graph.obstacles]
    hits = [(risk, o) for risk, o in assessed if risk >= threshold]
    hits.sort(key=lambda pair: (-int(pair[0]), natural_key(pair[1].id)))
    return [o for _, o in hits]


def _require_goal(graph: GoalModelGraph, gid: str) -> GoalNode:
    try:
        return graph.goal_by_id[gid]
    except KeyError:
        raise GraphError(f"unknown goal {gid!r}") from None


def _require_obstacle(graph: GoalModelGraph, oid: str) -> ObstacleNode:
    try:
        return graph.obstacle_by_id[oid]
    except KeyError:
        raise GraphError(f"unknown obstacle {oid!r}") from None


def _replace_goal(graph: GoalModelGraph, goal: GoalNode) -> GoalModelGraph:
    goals = tuple(goal if g.id == goal.id else g for g in graph.goals)
    return replace(graph, goals=goals)


def _replace_obstacle(graph: GoalModelGraph,
                      obstacle: ObstacleNode) -> GoalModelGraph:
    obstacles = tuple(obstacle if o.id == obstacle.id else o
                      for o in graph.obstacles)
    return replace(graph, obstacles=obstacles)


def _check_new_id(graph: GoalModelGraph, new_id: str):
    taken = (set(graph.goal_by_id) | set(graph.obstacle_by_id)
             | set(graph.decision_by_id) | set(graph.alternative_by_id))
    if new_id in taken:
        raise GraphError(f"id {new_id!r} already in use")


def _add_resolving_decision(graph: GoalModelGraph, tactic: Tactic,
                            params: dict) -> GoalModelGraph:
    obstacle = _require_obstacle(graph, params["obstacle"])
    decision_def = params["decision"]
    alternative_defs = params.get("alternatives", [])
    _check_new_id(graph, decision_def["id"])
    decision = DecisionNode(id=decision_def["id"], name=decision_def["name"],
                            kind=tactic.value)
    new_alternatives = []
    for alt in alternative_defs:
        _check_new_id(graph, alt["id"])
        new_alternatives.append(AlternativeNode(
            id=alt["id"], name=alt["name"], decision=decision.id,
            contributions=dict(alt.get("contributions", {})),
            crisp_contributions=dict(alt.get("crisp_contributions", {})),
            cost=alt.get("cost")))
    graph = replace(
        graph,
        decisions=graph.decisions + (decision,),
        alternatives=graph.alternatives + tuple(new_alternatives),
        resolves=graph.resolves + ((decision.id, obstacle.id),))
    if tactic in (Tactic.RESTORE_GOAL, Tactic.MITIGATE_OBSTACLE):
        goal_def = params["goal"]
        _check_new_id(graph, goal_def["id"])
        goal = GoalNode(id=goal_def["id"], name=goal_def["name"],
                        category=goal_def.get("category", ""),
                        direction=Direction(goal_def.get("direction", "maximize")),
                        weight=int(goal_def.get("weight", 1)))
        edges = graph.operationalises + ((decision.id, goal.id),)
        refines = graph.refines_goal
        if graph.root_goal:
            refines = refines + ((goal.id, graph.root_goal),)
        graph = replace(graph, goals=graph.goals + (goal,),
                        operationalises=edges, refines_goal=refines)
    if tactic is Tactic.REDUCE_OBSTACLE and params.get("downgrade_likelihood"):
        if obstacle.likelihood is None:
            raise GraphError(f"obstacle {obstacle.id} has no likelihood to reduce")
        lowered = Likelihood(max(int(obstacle.likelihood) - 1, 0))
        obstacle = replace(obstacle, likelihood=lowered)
    graph = _replace_obstacle(
        graph, replace(obstacle, resolution_status=ResolutionStatus.RESOLVED))
    return graph


def apply_tactic(graph: GoalModelGraph, tactic: Tactic | str,
                 params: dict) -> GoalModelGraph:
    """Apply one of the eight resolution tactics; returns a new graph."""
    tactic = Tactic(tactic)
    if tactic is Tactic.DO_NOTHING:
        obstacle = _require_obstacle(graph, params["obstacle"])
        return _replace_obstacle(
            graph, replace(obstacle, resolution_status=ResolutionStatus.ACCEPTED))
    if tactic is Tactic.SUBSTITUTE_GOAL:
        goal = _require_goal(graph, params["goal"])
        spec_def = params.get("spec", {})
        updated = replace(goal,
                          name=params.get("name", goal.name),
                          spec=GoalSpec(**spec_def) if spec_def else goal.spec)
        graph = _replace_goal(graph, updated)
        if "obstacle" in params:
            obstacle = _require_obstacle(graph, params["obstacle"])
            obstructs = tuple(e for e in graph.obstructs
                              if e != (obstacle.id, goal.id))
            graph = replace(graph, obstructs=obstructs)
            graph = _replace_obstacle(
                graph,
                replace(obstacle, resolution_status=ResolutionStatus.RESOLVED))
        return graph
    if tactic is Tactic.SUBSTITUTE_PLATFORM:
        goal = _require_goal(graph, params["goal"])
        graph = _replace_goal(
            graph, replace(goal, responsible_agent=params["agent"]))
        if "obstacle" in params:
            obstacle = _require_obstacle(graph, params["obstacle"])
            graph = _replace_obstacle(
                graph,
                replace(obstacle, resolution_status=ResolutionStatus.RESOLVED))
        return graph
    if tactic is Tactic.WEAKEN_GOAL:
        goal = _require_goal(graph, params["goal"])
        spec = goal.spec or GoalSpec()
        if "objective_function" in params:
            spec = replace(spec, objective_function=params["objective_function"])
        updated = replace(goal, spec=spec,
                          threshold=params.get("threshold", goal.threshold),
                          threshold_note=params.get("threshold_note",
                                                    goal.threshold_note))
        return _replace_goal(graph, updated)
    if tactic in (Tactic.PREVENT_OBSTACLE, Tactic.REDUCE_OBSTACLE,
                  Tactic.RESTORE_GOAL, Tactic.MITIGATE_OBSTACLE):
        return _add_resolving_decision(graph, tactic, params)
    raise GraphError(f"unsupported tactic {tactic}")


_DOT_SHAPES = {
    "root": "doubleoctagon",
    "goal": "parallelogram",
    "obstacle": "hexagon",
    "decision": "box",
    "alternative": "ellipse",
}


def _dot_escape(text: str) -> str:
    return text.replace("\\", "\\\\").replace('"', '\\"')


def export_dot(graph: GoalModelGraph) -> str:
    """Deterministic GraphViz rendering of the five element kinds."""
    problems = validate(graph)
    if problems:
        raise GraphError("cannot export invalid graph: " + "; ".join(problems))
    lines = ["digraph goal_model {", "  rankdir=BT;"]
    for g in sorted(graph.goals, key=lambda n: natural_key(n.id)):
        shape = _DOT_SHAPES["root" if g.id == graph.root_goal else "goal"]
        lines.append(f'  "{g.id}" [shape={shape}, label="{_dot_escape(g.id + ". " + g.name)}"];')
    for o in sorted(graph.obstacles, key=lambda n: natural_key(n.id)):
        lines.append(f'  "{o.id}" [shape={_DOT_SHAPES["obstacle"]}, '
                     f'label="{_dot_escape(o.id + ". " + o.name)}"];')
    for d in sorted(graph.decisions, key=lambda n: natural_key(n.id)):
        lines.append(f'  "{d.id}" [shape={_DOT_SHAPES["decision"]}, '
                     f'label="{_dot_escape(d.id + ". " + d.name)}"];')
    for a in sorted(graph.alternatives, key=lambda n: natural_key(n.id)):
        lines.append(f'  "{a.id}" [shape={_DOT_SHAPES["alternative"]}, '
                     f'label="{_dot_escape(a.id + ". " + a.name)}"];')
    edge_groups = (
        ("refines", graph.refines_goal),
        ("refines", graph.refines_obstacle),
        ("obstructs", graph.obstructs),
        ("operationalises", graph.operationalises),
        ("resolves", graph.resolves),
        ("implements", tuple((a.id, a.decision) for a in graph.alternatives)),
    )
    for label, edges in edge_groups:
        for src, dst in sorted(edges, key=lambda e: (natural_key(e[0]),
                                                     natural_key(e[1]))):
            lines.append(f'  "{src}" -> "{dst}" [label="{label}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
