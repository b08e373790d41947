import pytest

from twoeig.graphs.named_graphs import named_graph
from twoeig.services.record_store import InMemoryRecordStore, record_store
from twoeig.utils.settings import SearchParams


@pytest.fixture
def fast_params() -> SearchParams:
    """A small search budget for tests that only need the pipeline to run."""
    return SearchParams(
        max_iterations=1500,
        restarts=20,
        census_restarts=5,
        escalation_restarts=10,
        seed=0,
    )


@pytest.fixture
def store() -> InMemoryRecordStore:
    return InMemoryRecordStore()


@pytest.fixture(autouse=True)
def clear_shared_store():
    # The HTTP app and default pipelines share this singleton
    record_store.clear()
    yield
    record_store.clear()


@pytest.fixture
def g2p():
    return named_graph("G2p")


@pytest.fixture
def q3():
    return named_graph("Q3")
