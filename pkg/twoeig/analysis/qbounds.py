"""
Lower bounds on q(G) and the necessary-condition sieve for q(G) = 2.

Every rule returns a BoundReport whose witness can be replayed on its own by
replay_bound_report. The sieve only ever excludes; it never asserts q = 2.
"""
from itertools import combinations
from typing import List, Literal, Optional, Tuple

import networkx as nx
from pydantic import BaseModel, Field

from twoeig.graphs.graph import Graph, double_candle, iter_bits, single_candle
from twoeig.graphs.isomorphism import is_isomorphic
from twoeig.graphs.named_graphs import named_graph
from twoeig.utils.errors import InvalidParameterError
from twoeig.utils.logger import get_logger

logger = get_logger(__name__)

Rule = Literal[
    "unique-path",
    "independence",
    "common-neighbors",
    "not-2-connected",
    "edge-count",
    "degree-edge",
    "comb-orth",
    "trivial",
]


class Witness(BaseModel):
    vertices: List[int] = Field(default_factory=list, description="Pair, independent set, cut vertex or 2-path.")
    distance: Optional[int] = Field(None, description="d(x, y) for unique-path.")
    path: Optional[List[int]] = Field(None, description="The unique shortest path for unique-path.")
    edges: Optional[int] = Field(None, description="|E(G)| for the edge rules.")
    required: Optional[int] = Field(None, description="Edge count the rule requires.")


class BoundReport(BaseModel):
    lower_bound: int = Field(..., ge=1)
    rule: Rule
    fires: bool = Field(..., description="True when the rule rules out q(G) = 2.")
    witness: Witness = Field(default_factory=Witness)


class CandleTag(BaseModel):
    kind: Literal["double", "single"]
    k: int

    def label(self) -> str:
        return f"{self.kind}-candle({self.k})"


class EdgeBoundResult(BaseModel):
    report: BoundReport
    extremal_tag: Optional[str] = None


class SieveVerdict(BaseModel):
    """
    Excluded iff some firing report has lower_bound >= 3, or the edge-count rule
    fires, or the graph is edgeless. The last case is reported as `trivial` with
    lower_bound 1: q(K1) = 1, which rules out q = 2 from below.
    """
    status: Literal["Excluded", "Possible"]
    reports: List[BoundReport] = Field(default_factory=list, description="Reports of the rules that fired.")
    rules_checked: List[Rule] = Field(default_factory=list)
    extremal_tag: Optional[str] = None


def _bitcount(mask: int) -> int:
    return bin(mask).count("1")


# --- Shortest-path multiplicity ---

def shortest_path_counts(g: Graph, source: int) -> Tuple[List[int], List[int]]:
    """
    BFS distances from source (-1 if unreachable) and the number of shortest
    paths to each vertex, saturating at 2.
    """
    distance = [-1] * g.n
    count = [0] * g.n
    distance[source] = 0
    count[source] = 1
    frontier = [source]
    while frontier:
        nxt = []
        for u in frontier:
            for w in iter_bits(g.adj[u]):
                if distance[w] < 0:
                    distance[w] = distance[u] + 1
                    nxt.append(w)
                if distance[w] == distance[u] + 1:
                    count[w] = min(2, count[w] + count[u])
        frontier = nxt
    return distance, count


def _unique_shortest_path(g: Graph, x: int, y: int, distance: List[int]) -> List[int]:
    path = [y]
    while path[-1] != x:
        v = path[-1]
        path.append(next(u for u in iter_bits(g.adj[v]) if distance[u] == distance[v] - 1))
    return path[::-1]


def unique_path_bound(g: Graph) -> BoundReport:
    g.require_connected("unique_path_bound")
    best: Optional[Tuple[int, int, int]] = None
    best_distance: List[int] = []
    for x in range(g.n):
        distance, count = shortest_path_counts(g, x)
        for y in range(x + 1, g.n):
            if count[y] == 1 and (best is None or distance[y] > best[0]):
                best = (distance[y], x, y)
                best_distance = distance
    if best is None:
        return BoundReport(lower_bound=1, rule="unique-path", fires=False)
    d, x, y = best
    witness = Witness(vertices=[x, y], distance=d, path=_unique_shortest_path(g, x, y, best_distance))
    return BoundReport(lower_bound=d + 1, rule="unique-path", fires=d + 1 >= 3, witness=witness)


# --- Independence ---

def _clique_cover_size(g: Graph, candidates: int) -> int:
    cliques: List[int] = []
    for v in iter_bits(candidates):
        for idx, clique in enumerate(cliques):
            if g.adj[v] & clique == clique:
                cliques[idx] = clique | (1 << v)
                break
        else:
            cliques.append(1 << v)
    return len(cliques)


def maximum_independent_set(g: Graph) -> List[int]:
    """Exact alpha(G) by branch and bound with a greedy clique-cover upper bound."""
    best = [0]

    def branch(chosen: int, candidates: int) -> None:
        if not candidates:
            if _bitcount(chosen) > _bitcount(best[0]):
                best[0] = chosen
            return
        if _bitcount(chosen) + _clique_cover_size(g, candidates) <= _bitcount(best[0]):
            return
        v = max(iter_bits(candidates), key=lambda u: (_bitcount(g.adj[u] & candidates), -u))
        branch(chosen | (1 << v), candidates & ~(g.adj[v] | (1 << v)))
        branch(chosen, candidates & ~(1 << v))

    branch(0, (1 << g.n) - 1)
    return list(iter_bits(best[0]))


def independence_bound(g: Graph) -> BoundReport:
    g.require_connected("independence_bound")
    independent = maximum_independent_set(g)
    if len(independent) > g.n // 2:
        return BoundReport(lower_bound=3, rule="independence", fires=True, witness=Witness(vertices=independent))
    return BoundReport(lower_bound=1, rule="independence", fires=False, witness=Witness(vertices=independent))


# --- Common neighbors ---

def _pairwise_common_union(g: Graph, members: List[int]) -> int:
    union = 0
    for u, v in combinations(members, 2):
        union |= g.adj[u] & g.adj[v]
    return union


def _every_member_shares(g: Graph, members: List[int]) -> bool:
    return all(
        any(g.adj[u] & g.adj[v] for v in members if v != u)
        for u in members
    )


def default_max_set_size(n: int) -> int:
    return n if n <= 10 else 4


def common_neighbors_bound(g: Graph, max_set_size: Optional[int] = None) -> BoundReport:
    """
    Looks for an independent set {u_1..u_k}, k <= max_set_size, where every
    member shares a neighbor with another member yet the pairwise common
    neighborhoods cover fewer than k vertices.
    """
    if max_set_size is None:
        max_set_size = default_max_set_size(g.n)
    if max_set_size < 2:
        raise InvalidParameterError(f"max_set_size must be at least 2, got {max_set_size}")
    if g.n < 3:
        raise InvalidParameterError(f"common_neighbors_bound needs n >= 3, got {g.n}")
    g.require_connected("common_neighbors_bound")

    found: List[List[int]] = []

    def extend(members: List[int], forbidden: int, start: int) -> bool:
        if len(members) >= 2 and _every_member_shares(g, members):
            if _bitcount(_pairwise_common_union(g, members)) < len(members):
                found.append(list(members))
                return True
        if len(members) == max_set_size:
            return False
        for v in range(start, g.n):
            if forbidden >> v & 1:
                continue
            members.append(v)
            if extend(members, forbidden | g.adj[v] | (1 << v), v + 1):
                return True
            members.pop()
        return False

    extend([], 0, 0)
    if found:
        return BoundReport(lower_bound=3, rule="common-neighbors", fires=True, witness=Witness(vertices=found[0]))
    return BoundReport(lower_bound=1, rule="common-neighbors", fires=False)


# --- Connectivity ---

def cut_vertices(g: Graph) -> List[int]:
    return sorted(nx.articulation_points(g.to_networkx()))


def two_connectivity_check(g: Graph) -> BoundReport:
    g.require_connected("two_connectivity_check")
    cuts = cut_vertices(g) if g.n >= 3 else []
    if cuts:
        return BoundReport(lower_bound=3, rule="not-2-connected", fires=True, witness=Witness(vertices=[cuts[0]]))
    return BoundReport(lower_bound=1, rule="not-2-connected", fires=False)


# --- Edge counts and extremal graphs ---

def minimum_edges(n: int) -> int:
    """Fewest edges of a connected q = 2 graph on n >= 3 vertices."""
    return 2 * n - 4 if n % 2 == 0 else 2 * n - 3


def is_candle(g: Graph) -> Optional[CandleTag]:
    n = g.n
    if n % 2 == 0 and n >= 4:
        k = n // 2
        if g.edge_count == 4 * k - 4 and sorted(g.degrees()) == sorted(double_candle(k).degrees()):
            if is_isomorphic(g, double_candle(k)):
                return CandleTag(kind="double", k=k)
    elif n % 2 == 1 and n >= 3:
        k = (n - 1) // 2
        if g.edge_count == 4 * k - 1 and sorted(g.degrees()) == sorted(single_candle(k).degrees()):
            if is_isomorphic(g, single_candle(k)):
                return CandleTag(kind="single", k=k)
    return None


def extremal_tag(g: Graph) -> Optional[str]:
    tag = is_candle(g)
    if tag is not None:
        return tag.label()
    if g.n == 8 and g.edge_count == 12 and is_isomorphic(g, named_graph("Q3")):
        return "Q3"
    return None


def edge_bound_check(g: Graph) -> EdgeBoundResult:
    if g.n < 3:
        raise InvalidParameterError(f"edge_bound_check needs n >= 3, got {g.n}")
    g.require_connected("edge_bound_check")
    required = minimum_edges(g.n)
    witness = Witness(edges=g.edge_count, required=required)
    if g.edge_count < required:
        return EdgeBoundResult(report=BoundReport(lower_bound=3, rule="edge-count", fires=True, witness=witness))
    if g.edge_count == required:
        tag = extremal_tag(g)
        return EdgeBoundResult(
            report=BoundReport(lower_bound=3 if tag is None else 1, rule="edge-count", fires=tag is None, witness=witness),
            extremal_tag=tag,
        )
    return EdgeBoundResult(report=BoundReport(lower_bound=1, rule="edge-count", fires=False, witness=witness))


def degree_edge_bound(g: Graph) -> BoundReport:
    """|E| >= 2n - 2 - deg(v) for every v; the minimum-degree vertex is the strongest."""
    g.require_connected("degree_edge_bound")
    v = min(range(g.n), key=lambda u: (g.degree(u), u))
    required = 2 * g.n - 2 - g.degree(v)
    witness = Witness(vertices=[v], edges=g.edge_count, required=required)
    fires = g.n >= 3 and g.edge_count < required
    return BoundReport(lower_bound=3 if fires else 1, rule="degree-edge", fires=fires, witness=witness)


def two_path_violation(g: Graph) -> Optional[Tuple[int, int, int]]:
    """A 2-path x-u-y on no C3 or C4: x, y non-adjacent with N(x) & N(y) = {u}."""
    for x in range(g.n):
        for y in range(x + 1, g.n):
            if g.has_edge(x, y):
                continue
            common = g.adj[x] & g.adj[y]
            if _bitcount(common) == 1:
                return x, common.bit_length() - 1, y
    return None


def comb_orth_rule(g: Graph) -> BoundReport:
    violation = two_path_violation(g)
    if violation is None:
        return BoundReport(lower_bound=1, rule="comb-orth", fires=False)
    return BoundReport(lower_bound=3, rule="comb-orth", fires=True, witness=Witness(vertices=list(violation)))


# --- Sieve ---

def q2_sieve(g: Graph) -> SieveVerdict:
    g.require_connected("q2_sieve")
    if g.edge_count == 0:
        report = BoundReport(lower_bound=1, rule="trivial", fires=True, witness=Witness(edges=0))
        return SieveVerdict(status="Excluded", reports=[report], rules_checked=["trivial"])

    reports = [unique_path_bound(g), independence_bound(g), degree_edge_bound(g), comb_orth_rule(g)]
    tag = None
    if g.n >= 3:
        reports.append(common_neighbors_bound(g))
        reports.append(two_connectivity_check(g))
        edge_result = edge_bound_check(g)
        reports.append(edge_result.report)
        tag = edge_result.extremal_tag

    firing = [r for r in reports if r.fires]
    status = "Excluded" if firing else "Possible"
    logger.debug(f"q2_sieve: n={g.n}, |E|={g.edge_count} -> {status} {[r.rule for r in firing]}")
    return SieveVerdict(
        status=status,
        reports=firing,
        rules_checked=["trivial"] + [r.rule for r in reports],
        extremal_tag=tag,
    )


# --- Witness replay ---

def replay_bound_report(g: Graph, report: BoundReport) -> bool:
    """
    Re-derives a firing report from its witness alone. Non-firing reports
    carry no obligation and replay as True.
    """
    if not report.fires:
        return True
    w = report.witness
    try:
        if report.rule == "trivial":
            return g.edge_count == 0
        if report.rule == "unique-path":
            x, y = w.vertices
            distance, count = shortest_path_counts(g, x)
            return distance[y] == w.distance and count[y] == 1 and report.lower_bound == w.distance + 1 >= 3
        if report.rule == "independence":
            return g.is_independent(w.vertices) and len(set(w.vertices)) > g.n // 2
        if report.rule == "common-neighbors":
            members = w.vertices
            return (
                len(set(members)) == len(members) >= 2
                and g.is_independent(members)
                and _every_member_shares(g, members)
                and _bitcount(_pairwise_common_union(g, members)) < len(members)
            )
        if report.rule == "not-2-connected":
            (v,) = w.vertices
            return v in cut_vertices(g)
        if report.rule == "edge-count":
            required = minimum_edges(g.n)
            if w.edges != g.edge_count or w.required != required:
                return False
            return g.edge_count < required or (g.edge_count == required and extremal_tag(g) is None)
        if report.rule == "degree-edge":
            (v,) = w.vertices
            return w.edges == g.edge_count and g.edge_count < 2 * g.n - 2 - g.degree(v)
        if report.rule == "comb-orth":
            x, u, y = w.vertices
            return not g.has_edge(x, y) and g.adj[x] & g.adj[y] == 1 << u
    except (ValueError, IndexError, TypeError) as e:
        logger.warning(f"replay_bound_report: malformed {report.rule} witness: {e}")
        return False
    return False
