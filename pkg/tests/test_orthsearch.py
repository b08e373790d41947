import time

import numpy as np
import pytest

from twoeig.graphs.graph import Graph, complete_bipartite, complete_graph, cycle_graph, double_candle
from twoeig.graphs.named_graphs import named_graph
from twoeig.matrices.certify import orthogonality_residual, pattern_match, verify_certificate
from twoeig.matrices.orthsearch import (
    _initial_point,
    _residual,
    certify_q2,
    closed_form_certificate,
    project_orthogonal,
    search_orthogonal,
)
from twoeig.utils.errors import InvalidParameterError, NotConnectedError
from twoeig.utils.settings import SearchParams

CERTIFIED_BY_SEARCH = ["Q3", "S1", "S2", "S3", "G3_1", "G3_3", "G3_4", "G3_plus_edge", "G4_plus_edge"]


def test_projection_is_symmetric_orthogonal():
    rng = np.random.default_rng(1)
    a = rng.normal(size=(6, 6))
    q = project_orthogonal(a + a.T)
    assert np.allclose(q, q.T)
    assert np.allclose(q @ q, np.eye(6), atol=1e-12)


def test_projection_balances_zero_eigenvalues():
    q = project_orthogonal(np.zeros((4, 4)))
    assert np.allclose(q @ q, np.eye(4))
    assert np.trace(q) == pytest.approx(0.0)


@pytest.mark.parametrize("name", CERTIFIED_BY_SEARCH)
def test_search_certifies_q2_graphs(name):
    g = named_graph(name)
    started = time.perf_counter()
    outcome = search_orthogonal(g, SearchParams(seed=0))
    assert outcome.success, outcome.failure
    cert = outcome.certificate
    assert cert.source == "search"
    assert cert.report.verified
    assert cert.report.orthogonality_residual <= 1e-9
    assert cert.report.distinct_count == 2
    assert pattern_match(cert.matrix(), g)
    assert time.perf_counter() - started < 60


@pytest.mark.parametrize("g", [complete_bipartite(2, 3), named_graph("G3_2")], ids=["K2,3", "G3_2"])
def test_search_fails_where_q_exceeds_two(g):
    params = SearchParams(seed=0)
    started = time.perf_counter()
    outcome = search_orthogonal(g, params)
    assert not outcome.success
    assert outcome.failure.reason in ("no-convergence", "degenerate-pattern")
    assert outcome.failure.restarts == params.restarts
    assert time.perf_counter() - started < 60


@pytest.mark.parametrize("g", [complete_bipartite(2, 3), named_graph("G3_2")], ids=["K2,3", "G3_2"])
def test_failed_search_reports_no_worse_than_its_starts(g):
    params = SearchParams(seed=0, restarts=4, max_iterations=300)
    mask = np.eye(g.n)
    for i, j in g.edges():
        mask[i, j] = mask[j, i] = 1.0
    starts = [
        _residual(_initial_point(g, mask, np.random.default_rng(params.seed + r)))
        for r in range(params.restarts)
    ]
    outcome = search_orthogonal(g, params)
    assert not outcome.success
    assert outcome.failure.best_residual <= min(starts)


def test_search_is_deterministic_across_workers(fast_params):
    g = complete_graph(4)
    serial = search_orthogonal(g, fast_params)
    threaded = search_orthogonal(g, fast_params.model_copy(update={"workers": 3}))
    assert serial.success and threaded.success
    assert serial.restart_index == threaded.restart_index
    assert np.allclose(serial.certificate.float_entries, threaded.certificate.float_entries)


def test_search_without_ssp(fast_params):
    outcome = search_orthogonal(complete_graph(4), fast_params, check_ssp=False)
    assert outcome.success
    assert outcome.certificate.report.ssp_status is None


def test_search_certificate_replays(fast_params):
    outcome = search_orthogonal(complete_graph(2), fast_params)
    assert outcome.success
    replayed = verify_certificate(outcome.certificate)
    assert replayed.verified
    assert orthogonality_residual(replayed.matrix()) <= 1e-9


def test_search_validates_input():
    with pytest.raises(InvalidParameterError):
        search_orthogonal(complete_graph(1))
    with pytest.raises(NotConnectedError):
        search_orthogonal(Graph.from_edges(4, [(0, 1), (2, 3)]))


def test_closed_form_for_candles():
    g = double_candle(5).relabel([9, 0, 8, 1, 7, 2, 6, 3, 5, 4])
    cert = closed_form_certificate(g)
    assert cert.source == "closed-form"
    assert cert.verified
    assert cert.report.orthogonality_exact


@pytest.mark.parametrize("name,matrix", [("G3_plus_edge", "M1"), ("G4_plus_edge", "M2")])
def test_closed_form_for_printed_matrices(name, matrix):
    g = named_graph(name)
    cert = closed_form_certificate(g.relabel(list(reversed(range(g.n)))))
    assert cert.source == f"named:{matrix}"
    assert cert.verified


def test_closed_form_absent():
    assert closed_form_certificate(named_graph("Q3")) is None


def test_certify_prefers_closed_form(fast_params):
    outcome = certify_q2(cycle_graph(4), fast_params)
    assert outcome.success
    assert outcome.certificate.source == "closed-form"
    assert outcome.restart_index is None


def test_certify_falls_back_to_search(fast_params):
    outcome = certify_q2(complete_graph(4), fast_params)
    assert outcome.success
    assert outcome.certificate.source == "search"
