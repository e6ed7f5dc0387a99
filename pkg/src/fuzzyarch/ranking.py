"""Constraint filtering, Chen ranking, exhaustive optimization and the
fuzzy-vs-crisp divergence report.

The optimization is an exact exhaustive search over the cross-product
space: candidates are scored once, filtered by the defuzzified
constraints, and ordered by the joint ranking index.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence

from scipy import stats

from .fuzzy import DEFAULT_UNIVERSE_HI, chen_indices
from .goal_model import GoalModelGraph, GraphError, natural_key
from .space import (
    FUZZY_SUM,
    Architecture,
    ConstraintSet,
    ContributionMatrix,
    ScoredArchitecture,
    check_constraints,
    score_space,
    space_size,
)


class EmptyFeasibleSetError(GraphError):
    """No architecture satisfies the constraints.

    Carries, per constraint, the best achievable defuzzified value so the
    caller can see which constraints bind tightest.
    """

    def __init__(self, message: str, tightest: dict):
        super().__init__(message)
        self.tightest = tightest


@dataclass(frozen=True)
class FeasibleResult:
    feasible: list[ScoredArchitecture]
    total: int
    ruled_out: int

    @property
    def remaining(self) -> int:
        return self.total - self.ruled_out


@dataclass(frozen=True)
class RankedRow:
    rank: int
    scored: ScoredArchitecture
    chen_index: float


@dataclass(frozen=True)
class RankedResult:
    rows: list[RankedRow]
    k: float
    weights: Mapping[str, float]
    constraints: ConstraintSet
    backend: str


@dataclass(frozen=True)
class DivergenceReport:
    rank_pairs: list[tuple[int, int, int]]  # (architecture index, fuzzy, crisp)
    crisp_winner_fuzzy_rank: int
    fuzzy_winner_crisp_rank: int
    spearman_rho: float


def tightest_constraints(scored: Sequence[ScoredArchitecture],
                         constraints: ConstraintSet,
                         graph: GoalModelGraph) -> dict:
    """Best achievable defuzzified value per constraint, vs its threshold."""
    from .fuzzy import value_centroid
    from .goal_model import Direction
    out: dict = {"goals": {}, "cost_budget": None}
    for gid, threshold in constraints.goal_thresholds.items():
        direction = graph.goal_by_id[gid].direction
        values = [value_centroid(s.goal_scores.get(gid, s.total)) if gid in s.goal_scores else 0.0
                  for s in scored]
        best = (max(values) if direction is Direction.MAXIMIZE else min(values)) \
            if values else 0.0
        out["goals"][gid] = {"threshold": threshold,
                             "direction": direction.value,
                             "best_achievable": best}
    if constraints.cost_budget is not None:
        costs = [value_centroid(s.cost) for s in scored]
        out["cost_budget"] = {"budget": constraints.cost_budget,
                              "min_achievable": min(costs) if costs else 0.0}
    return out


def feasible_set(graph: GoalModelGraph, matrix: ContributionMatrix,
                 constraints: ConstraintSet, weights: Mapping[str, float],
                 backend: str = FUZZY_SUM,
                 universe_hi: float = DEFAULT_UNIVERSE_HI,
                 normalize: bool = False, workers: int = 1,
                 scored: Optional[Sequence[ScoredArchitecture]] = None
                 ) -> FeasibleResult:
    """Score the whole space and keep the constraint-satisfying part.

    Pass a pre-scored space via `scored` to re-filter under new
    constraints without re-scoring.
    """
    if scored is None:
        scored = score_space(graph, matrix, weights, backend, universe_hi,
                             normalize, workers)
    feasible = []
    for s in scored:
        verdict = check_constraints(s, constraints, graph)
        if verdict.feasible:
            feasible.append(s.with_feasibility(verdict))
    total = len(scored)
    return FeasibleResult(feasible=feasible, total=total,
                          ruled_out=total - len(feasible))


def rank(feasible: Sequence[ScoredArchitecture], k: float = 1.0,
         weights: Mapping[str, float] | None = None,
         constraints: ConstraintSet | None = None,
         backend: str = FUZZY_SUM) -> RankedResult:
    """Order candidates by CH^k descending, ties by enumeration index."""
    if not feasible:
        raise EmptyFeasibleSetError("no feasible architectures to rank", {})
    indices = chen_indices([s.total for s in feasible], k)
    order = sorted(range(len(feasible)),
                   key=lambda i: (-indices[i], feasible[i].architecture.index))
    rows = [RankedRow(rank=pos + 1, scored=feasible[i], chen_index=indices[i])
            for pos, i in enumerate(order)]
    return RankedResult(rows=rows, k=k, weights=dict(weights or {}),
                        constraints=constraints or ConstraintSet(),
                        backend=backend)


def optimum(graph: GoalModelGraph, matrix: ContributionMatrix,
            constraints: ConstraintSet, weights: Mapping[str, float],
            k: float = 1.0, backend: str = FUZZY_SUM,
            universe_hi: float = DEFAULT_UNIVERSE_HI,
            normalize: bool = False, workers: int = 1) -> ScoredArchitecture:
    """Exhaustive-search argmax of the total value under the constraints."""
    scored = score_space(graph, matrix, weights, backend, universe_hi,
                         normalize, workers)
    result = feasible_set(graph, matrix, constraints, weights, backend,
                          universe_hi, normalize, workers, scored=scored)
    if not result.feasible:
        raise EmptyFeasibleSetError(
            f"all {result.total} architectures violate the constraints",
            tightest_constraints(scored, constraints, graph))
    ranked = rank(result.feasible, k, weights, constraints, backend)
    return ranked.rows[0].scored


def crisp_score(arch: Architecture, matrix: ContributionMatrix,
                weights: Mapping[str, float]) -> float:
    """Weighted additive sum of the crisp contribution entries."""
    total = 0.0
    for gid, weight in weights.items():
        for alt_id in arch.selected():
            entry = matrix.crisp.get((gid, alt_id))
            if entry is None:
                if (gid, alt_id) in matrix.fuzzy:
                    raise GraphError(
                        f"missing crisp entry for goal {gid!r}, "
                        f"alternative {alt_id!r}")
                continue  # no contribution at all counts as zero
            total += weight * entry
    return total


def crisp_rank(feasible: Sequence[ScoredArchitecture],
               matrix: ContributionMatrix,
               weights: Mapping[str, float]) -> list[tuple[int, float, int]]:
    """(architecture index, crisp score, rank) triples, best first."""
    scores = [(s.architecture.index,
               crisp_score(s.architecture, matrix, weights)) for s in feasible]
    order = sorted(scores, key=lambda pair: (-pair[1], pair[0]))
    return [(idx, score, pos + 1) for pos, (idx, score) in enumerate(order)]


def divergence_report(fuzzy: RankedResult,
                      crisp: Sequence[tuple[int, float, int]]
                      ) -> DivergenceReport:
    """Align the fuzzy and crisp rankings of the same feasible set.

    The correlation statistic is Spearman's rho over the paired ranks.
    """
    fuzzy_by_index = {row.scored.architecture.index: row.rank
                      for row in fuzzy.rows}
    crisp_by_index = {idx: position for idx, _, position in crisp}
    if set(fuzzy_by_index) != set(crisp_by_index):
        raise GraphError("fuzzy and crisp rankings cover different candidates")
    pairs = sorted((idx, fuzzy_by_index[idx], crisp_by_index[idx])
                   for idx in fuzzy_by_index)
    crisp_winner = next(idx for idx, _, pos in crisp if pos == 1)
    fuzzy_winner = fuzzy.rows[0].scored.architecture.index
    if len(pairs) > 1:
        rho = float(stats.spearmanr([p[1] for p in pairs],
                                    [p[2] for p in pairs]).statistic)
    else:
        rho = 1.0
    return DivergenceReport(
        rank_pairs=pairs,
        crisp_winner_fuzzy_rank=fuzzy_by_index[crisp_winner],
        fuzzy_winner_crisp_rank=crisp_by_index[fuzzy_winner],
        spearman_rho=rho)
