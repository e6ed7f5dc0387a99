import pytest

from fuzzyarch import load_model
from fuzzyarch.model_io import divergence_path, exemplar_path


@pytest.fixture(scope="session")
def exemplar():
    return load_model(exemplar_path())


@pytest.fixture(scope="session")
def divergence_model():
    return load_model(divergence_path())


@pytest.fixture(scope="session")
def exemplar_weights(exemplar):
    from fuzzyarch.cli import default_weights
    return default_weights(exemplar)


@pytest.fixture(scope="session")
def exemplar_scored(exemplar, exemplar_weights):
    from fuzzyarch.space import score_space
    return score_space(exemplar.graph, exemplar.matrix, exemplar_weights)
