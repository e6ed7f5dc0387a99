import json

import pytest

from fuzzyarch.fuzzy import FuzzyNumber, LinguisticLevel
from fuzzyarch.model_io import (
    ModelError,
    divergence_path,
    exemplar_path,
    load_model,
    parse_model,
    write_model,
)


def minimal_doc():
    return {
        "format_version": 1,
        "name": "tiny",
        "root_goal": "g1",
        "goals": [
            {"id": "g1", "name": "root"},
            {"id": "g2", "name": "leaf", "parent": "g1"},
        ],
        "decisions": [{"id": "d1", "name": "pick", "operationalises": ["g2"]}],
        "alternatives": [
            {"id": "a1", "name": "first", "decision": "d1",
             "contributions": {"g2": "H"},
             "cost": [90, 100, 100, 120]},
            {"id": "a2", "name": "second", "decision": "d1",
             "contributions": {"g2": [1, 2, 2, 3]},
             "cost": [90, 100, 100, 120]},
        ],
    }


class TestParse:
    def test_minimal_document(self):
        model = parse_model(json.dumps(minimal_doc()))
        assert model.name == "tiny"
        assert model.graph.root_goal == "g1"
        assert model.matrix.labels[("g2", "a1")] is LinguisticLevel.H
        assert model.matrix.fuzzy[("g2", "a2")] == FuzzyNumber(1, 2, 2, 3)

    def test_invalid_json_reports_position(self):
        with pytest.raises(ModelError, match="line 1"):
            parse_model("{not json")

    def test_wrong_format_version(self):
        doc = minimal_doc()
        doc["format_version"] = 99
        with pytest.raises(ModelError, match="format_version"):
            parse_model(json.dumps(doc))

    def test_bad_contribution_located(self):
        doc = minimal_doc()
        doc["alternatives"][0]["contributions"]["g2"] = "XXL"
        with pytest.raises(ModelError, match=r"alternatives\[0\]"):
            parse_model(json.dumps(doc))

    def test_bad_quadruple_located(self):
        doc = minimal_doc()
        doc["alternatives"][1]["contributions"]["g2"] = [3, 2, 2, 1]
        with pytest.raises(ModelError, match=r"alternatives\[1\]"):
            parse_model(json.dumps(doc))

    def test_dangling_reference_rejected(self):
        doc = minimal_doc()
        doc["decisions"][0]["operationalises"] = ["g9"]
        with pytest.raises(ModelError, match="g9"):
            parse_model(json.dumps(doc))

    def test_unknown_backend_rejected(self):
        doc = minimal_doc()
        doc["settings"] = {"backend": "neural"}
        with pytest.raises(ModelError, match="backend"):
            parse_model(json.dumps(doc))


class TestBundledFixtures:
    def test_exemplar_counts(self, exemplar):
        graph = exemplar.graph
        assert len(graph.goals) == 8  # root plus seven leaf goals
        assert len(graph.decisions) == 14
        assert len(graph.alternatives) == 32

    def test_exemplar_constraints_and_settings(self, exemplar):
        assert exemplar.settings.universe_hi == 6.0
        assert exemplar.settings.backend == "fuzzy_sum"

    def test_exemplar_crisp_parallel_view(self, exemplar):
        assert exemplar.matrix.crisp[("g1", "a8")] == 2.7

    def test_divergence_universe(self, divergence_model):
        assert divergence_model.settings.universe_hi == 8.0
        assert len(divergence_model.graph.alternatives) == 2


class TestRoundTrip:
    def test_write_then_parse_is_identity(self, exemplar):
        written = write_model(exemplar)
        again = parse_model(written)
        assert write_model(again) == written

    def test_bundled_file_is_canonical(self):
        for path in (exemplar_path(), divergence_path()):
            with open(path, "rb") as fh:
                raw = fh.read()
            assert write_model(parse_model(raw)) == raw

    def test_round_trip_preserves_graph(self, exemplar):
        again = parse_model(write_model(exemplar))
        assert again.graph == exemplar.graph
        assert again.constraints == exemplar.constraints
        assert again.settings == exemplar.settings

    def test_load_model(self):
        model = load_model(exemplar_path())
        assert model.graph.root_goal == "g0"
