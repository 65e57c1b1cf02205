import pytest

from skate.engine import Engine


@pytest.fixture(scope="session")
def engine() -> Engine:
    return Engine.from_config()


@pytest.fixture(scope="session")
def ontology(engine):
    return engine.ontology


@pytest.fixture(scope="session")
def store(engine):
    return engine.store


@pytest.fixture(scope="session")
def recognizer(engine):
    return engine.recognizer
