import pytest

from fuzzyarch.ranking import (
    EmptyFeasibleSetError,
    crisp_rank,
    crisp_score,
    divergence_report,
    feasible_set,
    optimum,
    rank,
)
from fuzzyarch.space import Architecture, ConstraintSet, score_space


class TestFeasibleSet:
    def test_unconstrained_keeps_everything(self, exemplar, exemplar_weights,
                                            exemplar_scored):
        result = feasible_set(exemplar.graph, exemplar.matrix, ConstraintSet(),
                              exemplar_weights, scored=exemplar_scored)
        assert result.total == 10800
        assert result.ruled_out == 0
        assert result.remaining == 10800

    def test_zero_budget_rules_out_everything(self, exemplar, exemplar_weights,
                                              exemplar_scored):
        result = feasible_set(exemplar.graph, exemplar.matrix,
                              ConstraintSet(cost_budget=0.0),
                              exemplar_weights, scored=exemplar_scored)
        assert result.remaining == 0
        assert result.ruled_out == 10800

    def test_tighter_budget_is_subset(self, exemplar, exemplar_weights,
                                      exemplar_scored):
        loose = feasible_set(exemplar.graph, exemplar.matrix,
                             ConstraintSet(cost_budget=30000.0),
                             exemplar_weights, scored=exemplar_scored)
        tight = feasible_set(exemplar.graph, exemplar.matrix,
                             ConstraintSet(cost_budget=20000.0),
                             exemplar_weights, scored=exemplar_scored)
        loose_ids = {s.architecture.index for s in loose.feasible}
        tight_ids = {s.architecture.index for s in tight.feasible}
        assert tight_ids <= loose_ids


class TestRank:
    def test_exemplar_full_ranking(self, exemplar_scored):
        ranked = rank(exemplar_scored)
        assert [row.rank for row in ranked.rows[:3]] == [1, 2, 3]
        assert len(ranked.rows) == 10800
        indices = [row.chen_index for row in ranked.rows]
        assert indices == sorted(indices, reverse=True)

    def test_empty_input_raises(self):
        with pytest.raises(EmptyFeasibleSetError):
            rank([])

    def test_tie_broken_by_enumeration_index(self, exemplar_scored):
        ranked = rank(exemplar_scored)
        for first, second in zip(ranked.rows, ranked.rows[1:]):
            if first.chen_index == second.chen_index:
                assert (first.scored.architecture.index
                        < second.scored.architecture.index)

    def test_stable_across_calls(self, exemplar_scored):
        once = rank(exemplar_scored)
        twice = rank(exemplar_scored)
        assert [r.scored.architecture.index for r in once.rows] \
            == [r.scored.architecture.index for r in twice.rows]


class TestOptimum:
    def test_matches_rank_one(self, exemplar, exemplar_weights,
                              exemplar_scored):
        ranked = rank(exemplar_scored)
        best = optimum(exemplar.graph, exemplar.matrix, ConstraintSet(),
                       exemplar_weights)
        assert best.architecture.index \
            == ranked.rows[0].scored.architecture.index

    def test_infeasible_reports_tightest(self, exemplar, exemplar_weights):
        with pytest.raises(EmptyFeasibleSetError) as err:
            optimum(exemplar.graph, exemplar.matrix,
                    ConstraintSet(cost_budget=1.0), exemplar_weights)
        info = err.value.tightest
        assert info["cost_budget"]["budget"] == 1.0
        assert info["cost_budget"]["min_achievable"] > 1.0


class TestCrisp:
    def test_single_alternative_single_goal(self, exemplar):
        arch = Architecture(selection={"d3": "a8"}, index=0)
        assert crisp_score(arch, exemplar.matrix, {"g1": 1.0}) == 2.7

    def test_weighted_sum(self, exemplar):
        arch = Architecture(selection={"d3": "a8"}, index=0)
        assert crisp_score(arch, exemplar.matrix, {"g1": 2.0, "g3": 1.0}) \
            == pytest.approx(2 * 2.7 + 4.3)

    def test_goal_without_entries_scores_zero(self, exemplar):
        arch = Architecture(selection={"d3": "a8"}, index=0)
        assert crisp_score(arch, exemplar.matrix, {"g7": 3.0}) == 0.0

    def test_crisp_rank_descending(self, exemplar, exemplar_weights,
                                   exemplar_scored):
        triples = crisp_rank(exemplar_scored[:100], exemplar.matrix,
                             exemplar_weights)
        scores = [score for _, score, _ in triples]
        assert scores == sorted(scores, reverse=True)
        assert [pos for _, _, pos in triples] == list(range(1, 101))


class TestDivergence:
    def test_constructed_instance_flips_winner(self, divergence_model):
        model = divergence_model
        weights = {"g1": 1.0}
        scored = score_space(model.graph, model.matrix, weights,
                             universe_hi=model.settings.universe_hi)
        fuzzy = rank(scored, weights=weights)
        crisp = crisp_rank(scored, model.matrix, weights)
        report = divergence_report(fuzzy, crisp)
        assert report.crisp_winner_fuzzy_rank == 2
        assert report.fuzzy_winner_crisp_rank == 2
        assert report.spearman_rho == pytest.approx(-1.0)

    def test_divergence_winner_identities(self, divergence_model):
        model = divergence_model
        weights = {"g1": 1.0}
        scored = score_space(model.graph, model.matrix, weights,
                             universe_hi=model.settings.universe_hi)
        fuzzy = rank(scored, weights=weights)
        crisp = crisp_rank(scored, model.matrix, weights)
        fuzzy_winner = fuzzy.rows[0].scored.architecture
        crisp_winner_idx = crisp[0][0]
        assert fuzzy_winner.selection == {"d1": "a2"}
        assert scored[crisp_winner_idx].architecture.selection == {"d1": "a1"}

    def test_agreeing_rankings_rho_one(self, exemplar, exemplar_weights,
                                       exemplar_scored):
        fuzzy = rank(exemplar_scored[:50], weights=exemplar_weights)
        same = [(row.scored.architecture.index, 0.0, row.rank)
                for row in fuzzy.rows]
        report = divergence_report(fuzzy, same)
        assert report.spearman_rho == pytest.approx(1.0)
        assert report.crisp_winner_fuzzy_rank == 1
