import networkx as nx
import pytest

from twoeig.graphs.graph import complete_graph, cycle_graph, double_candle
from twoeig.graphs.graph6 import graph6_encode
from twoeig.graphs.isomorphism import canonical_graph6, find_spanning_embedding
from twoeig.graphs.named_graphs import named_graph
from twoeig.matrices.orthsearch import closed_form_certificate, search_orthogonal
from twoeig.services.census import (
    census_report,
    enumerate_connected,
    graphs_by_edge_count,
    records_for,
    ssp_closure,
    theorem_contradictions,
)
from twoeig.services.records import ClassificationRecord, replay_record
from twoeig.utils.errors import InvalidParameterError
from twoeig.utils.settings import SearchParams


def _certified_record(g, certificate, provenance="search"):
    return ClassificationRecord(
        graph6=graph6_encode(g), n=g.n, edges=g.edge_count,
        verdict="Certified", provenance=provenance, certificate=certificate,
    )


# --- enumeration ---

def test_level_sizes_for_four_vertices():
    assert [len(level) for level in graphs_by_edge_count(4)] == [1, 1, 2, 3, 2, 1, 1]


@pytest.mark.parametrize("n", range(1, 7))
def test_connected_counts_match_atlas(n):
    atlas = sum(1 for h in nx.graph_atlas_g() if h.number_of_nodes() == n and nx.is_connected(h))
    assert len(list(enumerate_connected(n))) == atlas


def test_six_vertex_split_by_edges():
    graphs = list(enumerate_connected(6))
    assert len(graphs) == 112
    assert sum(1 for g in graphs if g.edge_count <= 8) == 60
    assert sum(1 for g in graphs if g.edge_count >= 9) == 52


def test_enumeration_is_ordered_and_canonical():
    graphs = list(enumerate_connected(5, max_edges=7))
    keys = [(g.edge_count, graph6_encode(g)) for g in graphs]
    assert keys == sorted(keys)
    assert all(canonical_graph6(g) == graph6_encode(g) for g in graphs)
    assert max(g.edge_count for g in graphs) == 7


@pytest.mark.parametrize("n", [0, 9])
def test_enumeration_range(n):
    with pytest.raises(InvalidParameterError):
        next(graphs_by_edge_count(n))


# --- SSP closure ---

def test_closure_of_five_vertex_candle(g2p):
    seed = _certified_record(g2p, closed_form_certificate(g2p), provenance="closed-form")
    assert seed.ssp_certified
    closure = ssp_closure([seed], 5)
    assert len(closure) == 5
    assert canonical_graph6(complete_graph(5)) in closure
    assert canonical_graph6(named_graph("K5-e")) in closure


def test_closure_of_search_seeds():
    seeds = []
    for name in ("S1", "S2", "S3"):
        g = named_graph(name)
        outcome = search_orthogonal(g, SearchParams(seed=0))
        assert outcome.success
        record = _certified_record(g, outcome.certificate)
        assert record.ssp_certified
        seeds.append(record)
    closure = ssp_closure(seeds, 6)
    assert len(closure) == 20
    for name in ("G3_1", "G3_2", "G3_3", "G3_4"):
        assert canonical_graph6(named_graph(name)) not in closure


def test_closure_rejects_bad_seeds(g2p):
    no_ssp = _certified_record(double_candle(3), closed_form_certificate(double_candle(3)))
    assert not no_ssp.ssp_certified
    with pytest.raises(InvalidParameterError):
        ssp_closure([no_ssp], 6)
    seed = _certified_record(g2p, closed_form_certificate(g2p))
    with pytest.raises(InvalidParameterError):
        ssp_closure([seed], 6)


# --- contradictions ---

def test_fabricated_record_contradicts():
    c6 = cycle_graph(6)
    record = ClassificationRecord(graph6=graph6_encode(c6), n=6, edges=6, verdict="Certified", provenance="search")
    problems = theorem_contradictions([record], 6, [])
    assert any("< 8 edges" in p for p in problems)
    assert any("combinatorially orthogonal" in p for p in problems)


def test_excluded_candle_at_bound_contradicts():
    g3 = double_candle(3)
    record = ClassificationRecord(graph6=graph6_encode(g3), n=6, edges=8, verdict="Excluded", provenance="sieve")
    assert theorem_contradictions([record], 6, []) == [
        f"{record.graph6}: double-candle(3) at the edge bound is Excluded"
    ]


# --- census ---

@pytest.mark.parametrize("n,tag", [
    (3, "single-candle(1)"),
    (4, "double-candle(2)"),
    (5, "single-candle(2)"),
    (6, "double-candle(3)"),
])
def test_extremal_census(n, tag, fast_params, store):
    report = census_report(n, fast_params, store=store)
    assert report.contradictions == []
    assert [entry.tag for entry in report.certified_at_bound] == [tag]
    for record in report.records:
        if record.edges <= report.minimum_edges and record.extremal_tag is None:
            assert record.verdict == "Excluded"
    assert all(replay_record(r) for r in report.records)
    assert report.total == sum(b.Excluded + b.Certified + b.Undetermined for b in report.buckets)


def test_five_vertex_census_matches_g2p_supergraphs(fast_params, store, g2p):
    report = census_report(5, fast_params, store=store)
    assert report.undetermined == []
    for record in report.records:
        spans = find_spanning_embedding(g2p, record.graph()) is not None
        assert (record.verdict == "Certified") == spans, record.graph6


def test_records_for_canonicalizes(fast_params, store):
    report = census_report(4, fast_params, store=store)
    record = records_for(report, graph6_encode(cycle_graph(4).relabel([3, 1, 0, 2])))
    assert record.verdict == "Certified"
    assert record.extremal_tag == "double-candle(2)"
    assert records_for(report, graph6_encode(complete_graph(5))) is None


@pytest.mark.slow
def test_six_vertex_census():
    report = census_report(6, SearchParams())
    certified = [r for r in report.certified() if r.edges >= 9]
    assert len(certified) == 23
    assert report.undetermined == []
    assert report.contradictions == []
    for name in ("G3_1", "G3_3", "G3_4"):
        assert records_for(report, graph6_encode(named_graph(name))).verdict == "Certified"
    g3_2 = records_for(report, graph6_encode(named_graph("G3_2")))
    assert g3_2.verdict == "Excluded"
    assert "unique-path" in [r.rule for r in g3_2.reports]


@pytest.mark.slow
def test_seven_vertex_census():
    report = census_report(7, SearchParams())
    assert report.contradictions == []
    assert [entry.tag for entry in report.certified_at_bound] == ["single-candle(3)"]


@pytest.mark.slow
def test_eight_vertex_census_at_the_bound():
    report = census_report(8, SearchParams(), max_edges=12)
    assert report.contradictions == []
    assert report.undetermined == []
    assert sorted(entry.tag for entry in report.certified_at_bound) == ["Q3", "double-candle(4)"]
