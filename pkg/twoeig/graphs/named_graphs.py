"""
Named graphs of the candle drawings, transcribed once into edge tables.

Vertex order is fixed here and every certificate/pattern check is positional
against it:

- Candle-derived entries (G3, G4, G3_plus_edge, G4_plus_edge, G2p) use drawn
  labels minus one: label 1 -> vertex 0, label 2 -> vertex 1, ...
- The six-vertex drawings (G3_1..G3_4, S1..S3) number the drawn nodes 0..5 in
  the order they are drawn; for the hexagon drawings that is counterclockwise
  starting from the rightmost node.
- Q3 is the cube on bit strings: u ~ v iff u XOR v is a power of two.

Parametric names: P<n>, C<n>, K<n>, K<m>,<n> (underscores and braces are
ignored, so "K_{2,3}" and "K2,3" are the same name).
"""
import re
from typing import Dict, List, Tuple

from twoeig.graphs.graph import (
    Graph,
    complete_bipartite,
    complete_graph,
    cycle_graph,
    double_candle,
    path_graph,
    single_candle,
)
from twoeig.utils.errors import InvalidParameterError
from twoeig.utils.logger import get_logger

logger = get_logger(__name__)

# Hexagon 0..5 with chords {1,4} and {2,5}; isomorphic to G3.
_HEXAGON_G3 = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (2, 5), (4, 1)]

NAMED_EDGE_TABLE: Dict[str, Tuple[int, List[Tuple[int, int]]]] = {
    "Q3": (8, [(u, u ^ (1 << b)) for u in range(8) for b in range(3) if u < u ^ (1 << b)]),
    # G3 plus the edge joining the two vertices of N_1(1) (labels 2, 3); support of M1.
    "G3_plus_edge": (6, double_candle(3).edges() + [(1, 2)]),
    # G4 plus the edge joining the two vertices of N_2(1) (labels 4, 5); support of M2.
    "G4_plus_edge": (8, double_candle(4).edges() + [(3, 4)]),
    "G3_1": (6, _HEXAGON_G3 + [(1, 5)]),
    "G3_2": (6, _HEXAGON_G3 + [(1, 3)]),
    "G3_3": (6, _HEXAGON_G3 + [(3, 0)]),
    "G3_4": (6, _HEXAGON_G3 + [(1, 5), (2, 4)]),
    "S1": (6, [(0, 1), (2, 0), (0, 5), (1, 2), (1, 4), (2, 3), (3, 5), (4, 3), (4, 5)]),
    "S2": (6, [(0, 2), (0, 4), (1, 2), (1, 3), (1, 4), (5, 2), (5, 3), (5, 4), (2, 3), (4, 3)]),
    "S3": (6, [(0, 1), (0, 2), (0, 3), (1, 3), (1, 2), (4, 2), (4, 3), (5, 2), (5, 3), (5, 4)]),
    "G3": (6, double_candle(3).edges()),
    "G4": (8, double_candle(4).edges()),
    "G2p": (5, single_candle(2).edges()),
    "K6-C4": (6, [e for e in complete_graph(6).edges() if e not in {(0, 1), (1, 2), (2, 3), (0, 3)}]),
    "K5-e": (5, [e for e in complete_graph(5).edges() if e != (0, 1)]),
}

_PARAMETRIC = re.compile(r"^([PCK])(\d+)(?:,(\d+))?$")


def named_graph(name: str) -> Graph:
    """
    Looks up a drawn graph or builds a parametric family member.
    """
    logger.debug(f"named_graph: resolving '{name}'")
    if name in NAMED_EDGE_TABLE:
        n, edges = NAMED_EDGE_TABLE[name]
        return Graph.from_edges(n, edges)

    key = name.replace("_", "").replace("{", "").replace("}", "").replace(" ", "")
    match = _PARAMETRIC.match(key)
    if match:
        family, first, second = match.group(1), int(match.group(2)), match.group(3)
        if second is not None:
            if family != "K":
                raise InvalidParameterError(f"only K takes two parameters: '{name}'")
            return complete_bipartite(first, int(second))
        builders = {"P": path_graph, "C": cycle_graph, "K": complete_graph}
        return builders[family](first)

    logger.warning(f"named_graph: unknown name '{name}'")
    raise InvalidParameterError(f"unknown graph name '{name}'")


def known_names() -> List[str]:
    return sorted(NAMED_EDGE_TABLE) + ["P<n>", "C<n>", "K<n>", "K<m>,<n>"]
