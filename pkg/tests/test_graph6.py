import random

import networkx as nx
import pytest

from twoeig.graphs.graph import Graph, complete_graph, cycle_graph, double_candle, path_graph
from twoeig.graphs.graph6 import HEADER, graph6_decode, graph6_encode
from twoeig.graphs.isomorphism import (
    canonical_form,
    canonical_graph6,
    find_isomorphism,
    find_spanning_embedding,
    is_isomorphic,
    is_spanning_subgraph,
)
from twoeig.graphs.named_graphs import named_graph
from twoeig.utils.errors import Graph6ParseError


def _to_networkx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def _random_graph(rng: random.Random, n: int, p: float) -> Graph:
    return Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])


@pytest.mark.parametrize("n", [1, 2, 5, 8, 13, 64, 70])
def test_encode_matches_networkx(n):
    rng = random.Random(n)
    g = _random_graph(rng, n, 0.4)
    expected = nx.to_graph6_bytes(_to_networkx(g), header=False).decode("ascii").strip()
    assert graph6_encode(g) == expected


@pytest.mark.parametrize("text", ["Cr", "DQc", "E?bw", "G?bBf_"])
def test_decode_matches_networkx(text):
    g = graph6_decode(text)
    oracle = nx.from_graph6_bytes(text.encode("ascii"))
    assert g.n == oracle.number_of_nodes()
    assert sorted(g.edges()) == sorted(tuple(sorted(e)) for e in oracle.edges())


def test_header_is_optional():
    g = cycle_graph(4)
    assert graph6_encode(g, header=True) == HEADER + graph6_encode(g)
    assert graph6_decode(HEADER + graph6_encode(g)).adj == g.adj


@pytest.mark.parametrize("text,offset", [
    ("", 0),
    ("C!", 1),
    (HEADER + "C!", len(HEADER) + 1),
    ("Cr?", 2),
    ("B@", 1),
    ("?", 0),
    ("~?", 2),
    ("  C!", 3),
    ("\tB@", 2),
])
def test_parse_errors_report_offset(text, offset):
    with pytest.raises(Graph6ParseError) as info:
        graph6_decode(text)
    assert info.value.offset == offset


def test_surrounding_whitespace_is_ignored():
    assert graph6_decode("  Cr\n").adj == graph6_decode("Cr").adj


def test_networkx_conversion_keeps_edges():
    g = named_graph("Q3")
    h = g.to_networkx()
    assert h.number_of_edges() == 12
    assert Graph.from_networkx(h) == g
    relabeled = nx.relabel_nodes(h, {v: f"v{v}" for v in h})
    assert Graph.from_networkx(relabeled) == g


def test_canonical_form_is_labeling_invariant():
    rng = random.Random(7)
    for _ in range(30):
        g = _random_graph(rng, rng.randint(3, 9), 0.5)
        perm = list(range(g.n))
        rng.shuffle(perm)
        assert canonical_graph6(g) == canonical_graph6(g.relabel(perm))


def test_canonical_form_separates_non_isomorphic():
    rng = random.Random(11)
    graphs = [_random_graph(rng, 7, 0.45) for _ in range(40)]
    for i, a in enumerate(graphs):
        for b in graphs[i + 1:]:
            same = canonical_graph6(a) == canonical_graph6(b)
            assert same == nx.is_isomorphic(_to_networkx(a), _to_networkx(b))


def test_canonical_form_graph_matches_order():
    g = path_graph(5)
    form = canonical_form(g)
    assert form.graph6 == graph6_encode(form.graph)
    assert sorted(form.order) == list(range(5))
    assert is_isomorphic(form.graph, g)


def test_canonical_form_on_vertex_transitive_graphs():
    q3 = named_graph("Q3")
    rng = random.Random(3)
    perm = list(range(8))
    rng.shuffle(perm)
    assert canonical_graph6(q3) == canonical_graph6(q3.relabel(perm))


def test_find_isomorphism_maps_edges():
    g = double_candle(4)
    perm = [5, 2, 7, 0, 1, 6, 3, 4]
    h = g.relabel(perm)
    phi = find_isomorphism(g, h)
    assert phi is not None
    assert all(h.has_edge(phi[u], phi[v]) for u, v in g.edges())


def test_find_isomorphism_rejects():
    assert find_isomorphism(cycle_graph(6), double_candle(3)) is None
    assert find_isomorphism(path_graph(4), path_graph(5)) is None


def test_spanning_embedding():
    phi = find_spanning_embedding(double_candle(3), named_graph("G3_plus_edge"))
    assert phi is not None
    host = named_graph("G3_plus_edge")
    assert all(host.has_edge(phi[u], phi[v]) for u, v in double_candle(3).edges())

    assert is_spanning_subgraph(named_graph("G2p"), complete_graph(5))
    # an odd cycle never sits inside a bipartite graph
    assert not is_spanning_subgraph(cycle_graph(5), named_graph("K2,3"))
    assert not is_spanning_subgraph(cycle_graph(4), path_graph(5))
