"""Solution-space enumeration, architecture scoring and constraint checks.

An architecture picks exactly one alternative per decision that owns any;
its per-goal score is the fuzzy sum (or Mamdani aggregate) of the selected
alternatives' contributions, and its total is the weight-scaled fuzzy sum
over goals.
"""
from __future__ import annotations

import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Iterator, Mapping, Optional

from .fuzzy import (
    DEFAULT_UNIVERSE_HI,
    FuzzyLike,
    FuzzyNumber,
    LinguisticLevel,
    SampledFuzzySet,
    fuzzy_add,
    fuzzy_scale,
    level_to_fuzzy,
    mamdani_aggregate,
    value_centroid,
)
from .goal_model import Direction, GoalModelGraph, GraphError, natural_key

FUZZY_SUM = "fuzzy_sum"
MAMDANI = "mamdani"
BACKENDS = (FUZZY_SUM, MAMDANI)


class MissingCostError(GraphError):
    """A selected alternative carries no cost."""


class MissingWeightError(GraphError):
    """A goal has no weight, or the weight is out of range."""


@dataclass(frozen=True)
class Architecture:
    """One alternative per alternative-owning decision."""

    selection: Mapping[str, str]  # decision id -> alternative id
    index: int

    def selected(self) -> tuple[str, ...]:
        return tuple(self.selection.values())


@dataclass(frozen=True)
class ContributionMatrix:
    """Per (goal, alternative) impact, fuzzy plus optional crisp/label views."""

    fuzzy: Mapping[tuple[str, str], FuzzyNumber]
    crisp: Mapping[tuple[str, str], float] = field(default_factory=dict)
    labels: Mapping[tuple[str, str], LinguisticLevel] = field(default_factory=dict)


def matrix_from_graph(graph: GoalModelGraph,
                      universe_hi: float = DEFAULT_UNIVERSE_HI) -> ContributionMatrix:
    fuzzy: dict[tuple[str, str], FuzzyNumber] = {}
    crisp: dict[tuple[str, str], float] = {}
    labels: dict[tuple[str, str], LinguisticLevel] = {}
    for alt in graph.alternatives:
        for gid, value in alt.contributions.items():
            if isinstance(value, LinguisticLevel):
                labels[(gid, alt.id)] = value
                fuzzy[(gid, alt.id)] = level_to_fuzzy(value, universe_hi)
            else:
                fuzzy[(gid, alt.id)] = value
        for gid, value in alt.crisp_contributions.items():
            crisp[(gid, alt.id)] = float(value)
    return ContributionMatrix(fuzzy=fuzzy, crisp=crisp, labels=labels)


@dataclass(frozen=True)
class ConstraintSet:
    """Per-goal score thresholds plus a cost budget; directions come from
    each goal's maximize/minimize field."""

    goal_thresholds: Mapping[str, float] = field(default_factory=dict)
    cost_budget: Optional[float] = None

    def __post_init__(self):
        if self.cost_budget is not None and self.cost_budget < 0:
            raise ValueError("cost budget must be >= 0")


@dataclass(frozen=True)
class Feasibility:
    goal_verdicts: Mapping[str, bool]
    cost_ok: bool
    feasible: bool


@dataclass(frozen=True)
class ScoredArchitecture:
    architecture: Architecture
    goal_scores: Mapping[str, FuzzyLike]
    total: FuzzyLike
    cost: FuzzyNumber
    feasibility: Optional[Feasibility] = None

    def with_feasibility(self, feasibility: Feasibility) -> "ScoredArchitecture":
        return replace(self, feasibility=feasibility)


def covered_decisions(graph: GoalModelGraph) -> list[str]:
    """Decisions owning at least one alternative, in natural id order.

    Bare tactic markers without alternatives contribute factor 1 and are
    excluded from selections.
    """
    owners = {a.decision for a in graph.alternatives}
    return sorted(owners, key=natural_key)


def space_size(graph: GoalModelGraph) -> int:
    return math.prod(len(graph.alternatives_of[d])
                     for d in covered_decisions(graph))


def enumerate_architectures(graph: GoalModelGraph) -> Iterator[Architecture]:
    """Lexicographic, streaming enumeration of the whole solution space."""
    decisions = covered_decisions(graph)
    choice_lists = [[a.id for a in graph.alternatives_of[d]] for d in decisions]
    for index, picks in enumerate(itertools.product(*choice_lists)):
        yield Architecture(selection=dict(zip(decisions, picks)), index=index)


def goal_score(arch: Architecture, goal_id: str, matrix: ContributionMatrix,
               backend: str = FUZZY_SUM,
               universe_hi: float = DEFAULT_UNIVERSE_HI,
               normalize: bool = False) -> FuzzyLike:
    """Aggregate contribution of the selected alternatives to one goal.

    Alternatives without an entry for the goal contribute (0, 0, 0, 0).
    """
    if backend == FUZZY_SUM:
        total = FuzzyNumber.zero()
        contributing = 0
        for alt_id in arch.selected():
            entry = matrix.fuzzy.get((goal_id, alt_id))
            if entry is not None:
                total = fuzzy_add(total, entry)
                contributing += 1
        if normalize and contributing > 1:
            total = fuzzy_scale(total, 1.0 / contributing)
        return total
    if backend == MAMDANI:
        antecedents = [(matrix.labels[(goal_id, alt_id)], None)
                       for alt_id in arch.selected()
                       if (goal_id, alt_id) in matrix.labels]
        if not antecedents:
            return FuzzyNumber.zero()
        return mamdani_aggregate(antecedents, universe_hi)
    raise ValueError(f"unknown backend {backend!r}")


def _nearest_level(x: float, universe_hi: float) -> LinguisticLevel:
    from .fuzzy import membership
    return max(LinguisticLevel,
               key=lambda lvl: membership(level_to_fuzzy(lvl, universe_hi), x))


def total_score(arch: Architecture, weights: Mapping[str, float],
                matrix: ContributionMatrix, backend: str = FUZZY_SUM,
                universe_hi: float = DEFAULT_UNIVERSE_HI,
                normalize: bool = False) -> FuzzyLike:
    """Weighted aggregate of the per-goal scores over all goals."""
    for gid, weight in weights.items():
        if not 1 <= weight <= 10:
            raise MissingWeightError(f"goal {gid}: weight {weight} outside [1, 10]")
    if backend == FUZZY_SUM:
        total = FuzzyNumber.zero()
        for gid in sorted(weights, key=natural_key):
            score = goal_score(arch, gid, matrix, backend, universe_hi, normalize)
            total = fuzzy_add(total, fuzzy_scale(score, weights[gid]))
        return total
    if backend == MAMDANI:
        antecedents = []
        for gid in sorted(weights, key=natural_key):
            score = goal_score(arch, gid, matrix, backend, universe_hi, normalize)
            x = value_centroid(score)
            antecedents.append((_nearest_level(x, universe_hi), x))
        if not antecedents:
            return FuzzyNumber.zero()
        return mamdani_aggregate(antecedents, universe_hi)
    raise ValueError(f"unknown backend {backend!r}")


def cost_of(arch: Architecture, graph: GoalModelGraph) -> FuzzyNumber:
    total = FuzzyNumber.zero()
    for alt_id in arch.selected():
        alt = graph.alternative_by_id[alt_id]
        if alt.cost is None:
            raise MissingCostError(f"alternative {alt.id} has no cost")
        total = fuzzy_add(total, alt.cost)
    return total


def check_constraints(scored: ScoredArchitecture, constraints: ConstraintSet,
                      graph: GoalModelGraph) -> Feasibility:
    """Defuzzified (centroid) comparison against thresholds and budget."""
    verdicts: dict[str, bool] = {}
    for gid, threshold in constraints.goal_thresholds.items():
        if gid not in graph.goal_by_id:
            raise GraphError(f"constraint references unknown goal {gid!r}")
        direction = graph.goal_by_id[gid].direction
        value = value_centroid(scored.goal_scores[gid]) if gid in scored.goal_scores \
            else 0.0
        if direction is Direction.MAXIMIZE:
            verdicts[gid] = value >= threshold
        else:
            verdicts[gid] = value <= threshold
    cost_ok = True
    if constraints.cost_budget is not None:
        cost_ok = value_centroid(scored.cost) <= constraints.cost_budget
    return Feasibility(goal_verdicts=verdicts, cost_ok=cost_ok,
                       feasible=cost_ok and all(verdicts.values()))


def score_architecture(arch: Architecture, graph: GoalModelGraph,
                       matrix: ContributionMatrix,
                       weights: Mapping[str, float],
                       backend: str = FUZZY_SUM,
                       universe_hi: float = DEFAULT_UNIVERSE_HI,
                       normalize: bool = False) -> ScoredArchitecture:
    goal_scores = {gid: goal_score(arch, gid, matrix, backend, universe_hi,
                                   normalize)
                   for gid in weights}
    if backend == FUZZY_SUM:
        total = FuzzyNumber.zero()
        for gid in sorted(weights, key=natural_key):
            total = fuzzy_add(total, fuzzy_scale(goal_scores[gid], weights[gid]))
    else:
        total = total_score(arch, weights, matrix, backend, universe_hi,
                            normalize)
    return ScoredArchitecture(architecture=arch, goal_scores=goal_scores,
                              total=total, cost=cost_of(arch, graph))


def score_space(graph: GoalModelGraph, matrix: ContributionMatrix,
                weights: Mapping[str, float], backend: str = FUZZY_SUM,
                universe_hi: float = DEFAULT_UNIVERSE_HI,
                normalize: bool = False,
                workers: int = 1) -> list[ScoredArchitecture]:
    """Score every architecture; output order matches enumeration order
    regardless of worker count."""
    architectures = list(enumerate_architectures(graph))

    def score(arch: Architecture) -> ScoredArchitecture:
        return score_architecture(arch, graph, matrix, weights, backend,
                                  universe_hi, normalize)

    if workers <= 1:
        return [score(arch) for arch in architectures]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        scored = list(pool.map(score, architectures, chunksize=256))
    scored.sort(key=lambda s: s.architecture.index)
    return scored
