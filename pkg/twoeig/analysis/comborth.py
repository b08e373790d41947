"""
Combinatorial orthogonality and quadrangularity: support tests, the A(G)+I
criterion, the 2-path cycle properties p(2,4) and p(2,<=4), condensable
vertices and condensation search, and the edge bounds that go with them.
"""
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Union

import numpy as np
from pydantic import BaseModel, Field

from twoeig.graphs.graph import Graph, iter_bits
from twoeig.graphs.graph6 import graph6_decode, graph6_encode
from twoeig.graphs.isomorphism import canonical_graph6, is_isomorphic
from twoeig.matrices.exact import ExactMatrix, FloatMatrix
from twoeig.utils.errors import BudgetExceededError, InvalidParameterError, PropertyVacuousError
from twoeig.utils.logger import get_logger

logger = get_logger(__name__)

DEFAULT_CONDENSE_STEPS = 100_000


def _bitcount(mask: int) -> int:
    return bin(mask).count("1")


def _support(vector: Sequence) -> int:
    mask = 0
    for i, x in enumerate(vector):
        if x != 0:
            mask |= 1 << i
    return mask


def _pairwise_ok(supports: List[int]) -> bool:
    return all(_bitcount(a & b) != 1 for a, b in combinations(supports, 2))


# --- Support tests ---

def comb_orth_vectors(x: Sequence, y: Sequence) -> bool:
    """Supports meet in a count other than one. Zero means exactly zero."""
    if len(x) != len(y):
        raise InvalidParameterError(f"vector lengths differ: {len(x)} vs {len(y)}")
    return _bitcount(_support(x) & _support(y)) != 1


def is_comb_orth_matrix(a: Union[ExactMatrix, FloatMatrix, np.ndarray, Sequence[Sequence]]) -> bool:
    if isinstance(a, ExactMatrix):
        rows = [list(row) for row in a.entries]
    elif isinstance(a, FloatMatrix):
        rows = a.to_lists()
    else:
        rows = [list(row) for row in a]
    n = len(rows)
    if any(len(row) != n for row in rows):
        raise InvalidParameterError("is_comb_orth_matrix needs a square matrix")
    row_supports = [_support(row) for row in rows]
    column_supports = [_support([rows[i][j] for i in range(n)]) for j in range(n)]
    return _pairwise_ok(row_supports) and _pairwise_ok(column_supports)


def adjacency_plus_identity(g: Graph) -> List[List[int]]:
    return [[1 if i == j or g.has_edge(i, j) else 0 for j in range(g.n)] for i in range(g.n)]


def pattern_allows_comb_orth(g: Graph) -> bool:
    """S(G) holds a combinatorially orthogonal matrix iff A(G)+I is one."""
    return is_comb_orth_matrix(adjacency_plus_identity(g))


# --- 2-path properties ---

def has_two_path(g: Graph) -> bool:
    return any(g.degree(v) >= 2 for v in range(g.n))


def p2_cycle_property(g: Graph, allow_triangles: bool) -> bool:
    """
    p(2,4): every 2-path x-u-y lies on a C4, i.e. x and y have a second common
    neighbor. p(2,<=4) (allow_triangles) also accepts x ~ y.
    """
    if not has_two_path(g):
        raise PropertyVacuousError("graph has no path of length 2")
    for u in range(g.n):
        for x, y in combinations(list(iter_bits(g.adj[u])), 2):
            if allow_triangles and g.has_edge(x, y):
                continue
            if _bitcount(g.adj[x] & g.adj[y]) < 2:
                return False
    return True


def quadrangular_check(g: Graph) -> bool:
    return all(
        _bitcount(g.adj[x] & g.adj[y]) != 1
        for x, y in combinations(range(g.n), 2)
    )


# --- Condensation ---

def is_condensable(g: Graph, x: int) -> bool:
    if g.degree(x) != 2:
        return False
    u, v = g.neighbors(x)
    return g.adj[u] == g.adj[v] and g.degree(u) >= 3


def condensable_vertices(g: Graph) -> List[int]:
    return [x for x in range(g.n) if is_condensable(g, x)]


class CondensationStep(BaseModel):
    graph6: str = Field(..., description="Graph before the removal.")
    removed: int = Field(..., description="Condensable vertex removed, in this graph's labels.")


class CondensationTrace(BaseModel):
    steps: List[CondensationStep] = Field(default_factory=list)
    terminal: str = Field(..., description="graph6 of the final graph, isomorphic to the target.")


def condense_to(g: Graph, target: Graph, max_steps: int = DEFAULT_CONDENSE_STEPS) -> Optional[CondensationTrace]:
    """
    Depth-first search over removals of condensable vertices for a graph
    isomorphic to target. None means the whole choice tree was exhausted;
    running out of max_steps node expansions raises BudgetExceededError.
    """
    if max_steps < 1:
        raise InvalidParameterError(f"max_steps must be positive, got {max_steps}")
    dead_ends: Dict[str, bool] = {}
    expansions = [0]

    def search(h: Graph) -> Optional[List[CondensationStep]]:
        if h.n == target.n:
            return [] if is_isomorphic(h, target) else None
        if h.n < target.n:
            return None
        key = canonical_graph6(h)
        if key in dead_ends:
            return None
        expansions[0] += 1
        if expansions[0] > max_steps:
            raise BudgetExceededError(f"condense_to exceeded {max_steps} expansions")
        for x in condensable_vertices(h):
            rest = search(h.without_vertex(x))
            if rest is not None:
                return [CondensationStep(graph6=graph6_encode(h), removed=x)] + rest
        dead_ends[key] = True
        return None

    steps = search(g)
    if steps is None:
        logger.debug(f"condense_to: no condensation of {graph6_encode(g)} reaches the target")
        return None
    terminal = g
    for step in steps:
        terminal = terminal.without_vertex(step.removed)
    return CondensationTrace(steps=steps, terminal=graph6_encode(terminal))


def replay_condensation(trace: CondensationTrace, start: Graph, target: Graph) -> bool:
    """Re-checks each removal and that the chain starts at start and ends isomorphic to target."""
    current = start
    for step in trace.steps:
        if graph6_decode(step.graph6).adj != current.adj or not is_condensable(current, step.removed):
            return False
        current = current.without_vertex(step.removed)
    return graph6_encode(current) == trace.terminal and is_isomorphic(current, target)


# --- Edge bounds ---

class BoundCheck(BaseModel):
    statement: str
    hypothesis_holds: bool
    bound_holds: bool
    required_edges: float
    at_boundary: bool


class EdgeBoundsReport(BaseModel):
    n: int
    edges: int
    checks: List[BoundCheck]


def _check(statement: str, hypothesis: bool, edges: int, required: float) -> BoundCheck:
    return BoundCheck(
        statement=statement,
        hypothesis_holds=hypothesis,
        bound_holds=edges >= required,
        required_edges=required,
        at_boundary=edges == required,
    )


def comb_edge_bounds_check(g: Graph) -> EdgeBoundsReport:
    """
    (hypothesis, bound) pairs for the three combinatorial edge bounds; a
    hypothesis that holds with a failing bound is a counterexample.
    """
    g.require_connected("comb_edge_bounds_check")
    n, edges = g.n, g.edge_count
    two_path = has_two_path(g)
    p2_leq4 = two_path and p2_cycle_property(g, allow_triangles=True)
    excluded = g.n == 1 or (g.n == 4 and g.edge_count == 6)
    nonbipartite_quadrangular = not excluded and quadrangular_check(g) and not g.is_bipartite()
    checks = [
        _check("p(2,<=4) => |E| >= 2n-4", p2_leq4, edges, 2 * n - 4),
        _check("non-bipartite quadrangular, not K1/K4 => |E| >= 2n-1", nonbipartite_quadrangular, edges, 2 * n - 1),
        _check("comb. orth. A in S(G), n >= 2 => |E| >= (3/2)n-2",
               n >= 2 and pattern_allows_comb_orth(g), edges, 1.5 * n - 2),
    ]
    return EdgeBoundsReport(n=n, edges=edges, checks=checks)
