"""
Simple undirected graphs on vertices 0..n-1, stored as one adjacency bitset per
vertex, plus the candle generators, vertex duplication and distance partitions.

Candle labels are 1-based in the drawings; drawn label L is index L - 1.
In that labeling a double-ended candle G_k is the block chain
{1} | {2,3} | {4,5} | ... | {2k-2, 2k-1} | {2k} with consecutive blocks
completely joined; the single-ended candle G'_k ends in the adjacent pair
{2k, 2k+1} instead of {2k}.
"""
from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple

import networkx as nx

from twoeig.utils.errors import InvalidParameterError, NotConnectedError


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Graph:
    """
    Immutable simple graph. `adj[v]` is the bitset of N(v).
    """
    n: int
    adj: Tuple[int, ...]

    def __post_init__(self):
        if self.n < 1:
            raise InvalidParameterError(f"a graph needs at least one vertex, got n={self.n}")
        if len(self.adj) != self.n:
            raise InvalidParameterError("adjacency list length does not match n")
        full = (1 << self.n) - 1
        for v, mask in enumerate(self.adj):
            if mask & ~full:
                raise InvalidParameterError(f"vertex {v} has a neighbor outside 0..{self.n - 1}")
            if mask >> v & 1:
                raise InvalidParameterError(f"self-loop at vertex {v}")
            for u in iter_bits(mask):
                if not self.adj[u] >> v & 1:
                    raise InvalidParameterError(f"adjacency is not symmetric at {{{u},{v}}}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Tuple[int, int]]) -> "Graph":
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidParameterError(f"edge {{{u},{v}}} outside 0..{n - 1}")
            if u == v:
                raise InvalidParameterError(f"self-loop at vertex {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, tuple(adj))

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, (0,) * n)

    @classmethod
    def from_networkx(cls, h: nx.Graph) -> "Graph":
        """Vertices are renumbered 0..n-1 in h's node order."""
        h = nx.convert_node_labels_to_integers(h)
        return cls.from_edges(h.number_of_nodes(), h.edges())

    def to_networkx(self) -> nx.Graph:
        h = nx.Graph()
        h.add_nodes_from(range(self.n))
        h.add_edges_from(self.edges())
        return h

    # --- Basic queries ---

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbors(self, v: int) -> List[int]:
        return list(iter_bits(self.adj[v]))

    def closed_neighborhood(self, v: int) -> int:
        return self.adj[v] | (1 << v)

    def degree(self, v: int) -> int:
        return bin(self.adj[v]).count("1")

    def degrees(self) -> List[int]:
        return [self.degree(v) for v in range(self.n)]

    def min_degree(self) -> int:
        return min(self.degrees())

    @property
    def edge_count(self) -> int:
        return sum(self.degrees()) // 2

    def edges(self) -> List[Tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in iter_bits(self.adj[u]) if u < v]

    def non_edges(self) -> List[Tuple[int, int]]:
        return [(u, v) for u, v in combinations(range(self.n), 2) if not self.has_edge(u, v)]

    def common_neighbors(self, u: int, v: int) -> int:
        return self.adj[u] & self.adj[v]

    def is_independent(self, vertices: Iterable[int]) -> bool:
        mask = 0
        for v in vertices:
            mask |= 1 << v
        return all(not (self.adj[v] & mask) for v in iter_bits(mask))

    def component_of(self, v: int, removed: int = 0) -> int:
        """Bitset of the component containing v in the graph minus the `removed` bitset."""
        seen = 1 << v
        frontier = seen
        while frontier:
            nxt = 0
            for u in iter_bits(frontier):
                nxt |= self.adj[u]
            nxt &= ~seen & ~removed
            seen |= nxt
            frontier = nxt
        return seen

    def is_connected(self) -> bool:
        return self.component_of(0) == (1 << self.n) - 1

    def is_bipartite(self) -> bool:
        color = [-1] * self.n
        for s in range(self.n):
            if color[s] >= 0:
                continue
            color[s] = 0
            queue = deque([s])
            while queue:
                u = queue.popleft()
                for w in iter_bits(self.adj[u]):
                    if color[w] < 0:
                        color[w] = 1 - color[u]
                        queue.append(w)
                    elif color[w] == color[u]:
                        return False
        return True

    # --- Derived graphs ---

    def with_edges(self, edges: Iterable[Tuple[int, int]]) -> "Graph":
        adj = list(self.adj)
        for u, v in edges:
            if u == v:
                raise InvalidParameterError(f"self-loop at vertex {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return Graph(self.n, tuple(adj))

    def without_vertex(self, x: int) -> "Graph":
        """G - x, with the vertices above x shifted down by one."""
        if not 0 <= x < self.n:
            raise InvalidParameterError(f"vertex {x} out of range 0..{self.n - 1}")
        low = (1 << x) - 1
        adj = []
        for v in range(self.n):
            if v == x:
                continue
            mask = self.adj[v]
            adj.append((mask & low) | ((mask >> (x + 1)) << x))
        return Graph(self.n - 1, tuple(adj))

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Vertex v of self becomes vertex perm[v] of the result."""
        if sorted(perm) != list(range(self.n)):
            raise InvalidParameterError("relabeling is not a permutation of the vertices")
        adj = [0] * self.n
        for v in range(self.n):
            mask = 0
            for u in iter_bits(self.adj[v]):
                mask |= 1 << perm[u]
            adj[perm[v]] = mask
        return Graph(self.n, tuple(adj))

    def complement(self) -> "Graph":
        full = (1 << self.n) - 1
        return Graph(self.n, tuple(full & ~(self.adj[v] | (1 << v)) for v in range(self.n)))

    def require_connected(self, operation: str) -> None:
        if not self.is_connected():
            raise NotConnectedError(f"{operation} requires a connected graph")

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"


# --- Elementary families ---

def path_graph(n: int) -> Graph:
    if n < 1:
        raise InvalidParameterError(f"P_n needs n >= 1, got {n}")
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise InvalidParameterError(f"C_n needs n >= 3, got {n}")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    if n < 1:
        raise InvalidParameterError(f"K_n needs n >= 1, got {n}")
    return Graph.from_edges(n, combinations(range(n), 2))


def complete_bipartite(m: int, n: int) -> Graph:
    if m < 1 or n < 1:
        raise InvalidParameterError(f"K_{{m,n}} needs m, n >= 1, got {m}, {n}")
    return Graph.from_edges(m + n, [(i, m + j) for i in range(m) for j in range(n)])


# --- Duplication ---

def duplicate(g: Graph, v: int, joined: bool) -> Graph:
    """
    dup(G, v) (joined=False) or jdup(G, v) (joined=True). The new vertex is n.
    """
    if not 0 <= v < g.n:
        raise InvalidParameterError(f"vertex {v} out of range 0..{g.n - 1}")
    new_mask = g.closed_neighborhood(v) if joined else g.adj[v]
    u = g.n
    adj = [mask | ((new_mask >> w & 1) << u) for w, mask in enumerate(g.adj)]
    adj.append(new_mask)
    return Graph(g.n + 1, tuple(adj))


def duplicate_sequence(g: Graph, vertices: Sequence[int], joined: bool) -> Graph:
    """dup(G, L) / jdup(G, L): duplicate each vertex of L in turn."""
    for v in vertices:
        g = duplicate(g, v, joined)
    return g


# --- Candles ---

def _candle_blocks(k: int, single: bool) -> List[List[int]]:
    blocks = [[0]]
    for i in range(1, k):
        blocks.append([2 * i - 1, 2 * i])
    blocks.append([2 * k - 1, 2 * k] if single else [2 * k - 1])
    return blocks


def _block_chain(blocks: List[List[int]], joined_tail: bool) -> Graph:
    n = sum(len(b) for b in blocks)
    edges = [(u, v) for left, right in zip(blocks, blocks[1:]) for u in left for v in right]
    if joined_tail:
        edges.append(tuple(blocks[-1]))
    return Graph.from_edges(n, edges)


def double_candle(k: int) -> Graph:
    """Double-ended candle G_k on 2k vertices (G_2 = C_4)."""
    if k < 2:
        raise InvalidParameterError(f"double_candle needs k >= 2, got {k}")
    return _block_chain(_candle_blocks(k, single=False), joined_tail=False)


def single_candle(k: int) -> Graph:
    """Single-ended candle G'_k on 2k + 1 vertices (G'_1 = K_3)."""
    if k < 1:
        raise InvalidParameterError(f"single_candle needs k >= 1, got {k}")
    return _block_chain(_candle_blocks(k, single=True), joined_tail=True)


def candle_levels(k: int, kind: str) -> List[List[int]]:
    """Distance levels N_i(1) of a candle, as vertex indices."""
    if kind not in ("double", "single"):
        raise InvalidParameterError(f"candle kind must be 'double' or 'single', got {kind!r}")
    minimum = 2 if kind == "double" else 1
    if k < minimum:
        raise InvalidParameterError(f"{kind} candle needs k >= {minimum}, got {k}")
    return _candle_blocks(k, single=(kind == "single"))


def augmented_candles(k: int, kind: str) -> Iterator[Graph]:
    """
    Every graph obtained from G_k (kind='double') or G'_k (kind='single') by
    adding a subset of the missing pairs inside the levels N_i(1).
    The empty subset (the candle itself) comes first.
    """
    base = double_candle(k) if kind == "double" else single_candle(k) if kind == "single" else None
    if base is None:
        raise InvalidParameterError(f"candle kind must be 'double' or 'single', got {kind!r}")
    pairs = [tuple(level) for level in candle_levels(k, kind)
             if len(level) == 2 and not base.has_edge(*level)]
    for size in range(len(pairs) + 1):
        for chosen in combinations(pairs, size):
            yield base.with_edges(chosen)


# --- Distance partitions ---

@dataclass(frozen=True)
class DistancePartition:
    """
    BFS levels N_0(v), ..., N_ecc(v) of a connected graph with predecessor and
    successor counts per vertex.
    """
    root: int
    levels: Tuple[Tuple[int, ...], ...]
    predecessor_counts: Tuple[int, ...]
    successor_counts: Tuple[int, ...]
    distance: Tuple[int, ...]

    @property
    def eccentricity(self) -> int:
        return len(self.levels) - 1

    @property
    def distance_sequence(self) -> Tuple[int, ...]:
        return tuple(len(level) for level in self.levels)

    @property
    def truncated_distance_sequence(self) -> Tuple[int, ...]:
        return self.distance_sequence[:-1]

    def internal_edges(self, g: Graph, i: int) -> List[Tuple[int, int]]:
        level = self.levels[i]
        return [(u, v) for u, v in combinations(level, 2) if g.has_edge(u, v)]

    def level_is_independent(self, g: Graph, i: int) -> bool:
        return not self.internal_edges(g, i)


def distance_partition(g: Graph, v: int) -> DistancePartition:
    if not 0 <= v < g.n:
        raise InvalidParameterError(f"vertex {v} out of range 0..{g.n - 1}")
    g.require_connected("distance_partition")
    distance = [-1] * g.n
    distance[v] = 0
    levels = [[v]]
    while True:
        nxt = set()
        for u in levels[-1]:
            for w in iter_bits(g.adj[u]):
                if distance[w] < 0:
                    distance[w] = len(levels)
                    nxt.add(w)
        if not nxt:
            break
        levels.append(sorted(nxt))
    predecessors = [0] * g.n
    successors = [0] * g.n
    for u in range(g.n):
        for w in iter_bits(g.adj[u]):
            if distance[w] == distance[u] - 1:
                predecessors[u] += 1
            elif distance[w] == distance[u] + 1:
                successors[u] += 1
    return DistancePartition(
        root=v,
        levels=tuple(tuple(level) for level in levels),
        predecessor_counts=tuple(predecessors),
        successor_counts=tuple(successors),
        distance=tuple(distance),
    )


def bfs_distances(g: Graph, source: int) -> List[Optional[int]]:
    """Distances from `source`; None for unreachable vertices. Works on disconnected graphs."""
    distance: List[Optional[int]] = [None] * g.n
    distance[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for w in iter_bits(g.adj[u]):
            if distance[w] is None:
                distance[w] = distance[u] + 1
                queue.append(w)
    return distance
