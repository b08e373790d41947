"""
Canonical labeling, isomorphism mappings and spanning-subgraph containment for
small graphs.

Canonical labeling refines the vertex partition by neighbor counts (equitable
refinement), then individualizes vertices of the first smallest non-singleton
cell and recurses. The canonical form is the largest adjacency code over the
leaves. Two prunings keep the tree small: interchangeable twins in a cell are
branched on once, and a child is skipped when an automorphism found so far
(fixing the current prefix) maps it to an already explored child.
"""
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from twoeig.graphs.graph import Graph, iter_bits
from twoeig.graphs.graph6 import graph6_encode

Partition = List[List[int]]


def _refine(g: Graph, cells: Partition) -> Partition:
    """Split cells by neighbor counts into every cell until the partition is equitable."""
    while True:
        cell_masks = []
        for cell in cells:
            mask = 0
            for v in cell:
                mask |= 1 << v
            cell_masks.append(mask)
        new_cells: Partition = []
        changed = False
        for cell in cells:
            if len(cell) == 1:
                new_cells.append(cell)
                continue
            keyed: Dict[Tuple[int, ...], List[int]] = {}
            for v in cell:
                key = tuple(bin(g.adj[v] & m).count("1") for m in cell_masks)
                keyed.setdefault(key, []).append(v)
            if len(keyed) > 1:
                changed = True
                for key in sorted(keyed):
                    new_cells.append(keyed[key])
            else:
                new_cells.append(cell)
        cells = new_cells
        if not changed:
            return cells


def _initial_partition(g: Graph) -> Partition:
    by_degree: Dict[int, List[int]] = {}
    for v in range(g.n):
        by_degree.setdefault(g.degree(v), []).append(v)
    return [by_degree[d] for d in sorted(by_degree)]


def _individualize(cells: Partition, index: int, v: int) -> Partition:
    cell = cells[index]
    rest = [u for u in cell if u != v]
    return cells[:index] + [[v], rest] + cells[index + 1:]


def _code(g: Graph, order: Sequence[int]) -> int:
    """Upper triangle of the relabeled adjacency matrix, as an integer."""
    code = 0
    for j in range(1, g.n):
        vj = order[j]
        for i in range(j):
            code = (code << 1) | (g.adj[order[i]] >> vj & 1)
    return code


def _twin_representatives(g: Graph, cell: List[int]) -> List[int]:
    """One vertex per class of twins (same neighborhood outside the pair)."""
    reps: List[int] = []
    for v in cell:
        for u in reps:
            both = (1 << u) | (1 << v)
            if g.adj[u] & ~both == g.adj[v] & ~both:
                break
        else:
            reps.append(v)
    return reps


class _Find:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra


@dataclass(frozen=True)
class CanonicalForm:
    code: int
    order: Tuple[int, ...]   # order[i] = input vertex placed at canonical position i
    graph: Graph
    graph6: str


class _Canonizer:
    def __init__(self, g: Graph):
        self.g = g
        self.best_code = -1
        self.best_order: Optional[List[int]] = None
        self.automorphisms: List[List[int]] = []

    def run(self) -> None:
        self._search(_refine(self.g, _initial_partition(self.g)), [])

    def _leaf(self, cells: Partition) -> None:
        order = [cell[0] for cell in cells]
        code = _code(self.g, order)
        if code > self.best_code:
            self.best_code = code
            self.best_order = order
        elif code == self.best_code:
            # best_order[i] -> order[i] preserves adjacency
            perm = [0] * self.g.n
            for a, b in zip(self.best_order, order):
                perm[a] = b
            if any(perm[v] != v for v in range(self.g.n)):
                self.automorphisms.append(perm)

    def _orbits_fixing(self, prefix: List[int]) -> _Find:
        orbits = _Find(self.g.n)
        for perm in self.automorphisms:
            if all(perm[v] == v for v in prefix):
                for v in range(self.g.n):
                    orbits.union(v, perm[v])
        return orbits

    def _search(self, cells: Partition, prefix: List[int]) -> None:
        if len(cells) == self.g.n:
            self._leaf(cells)
            return
        index = min(
            (i for i, cell in enumerate(cells) if len(cell) > 1),
            key=lambda i: (len(cells[i]), i),
        )
        explored: List[int] = []
        for v in _twin_representatives(self.g, cells[index]):
            if explored:
                orbits = self._orbits_fixing(prefix)
                if any(orbits.find(v) == orbits.find(u) for u in explored):
                    continue
            explored.append(v)
            child = _refine(self.g, _individualize(cells, index, v))
            self._search(child, prefix + [v])


def canonical_form(g: Graph) -> CanonicalForm:
    canonizer = _Canonizer(g)
    canonizer.run()
    order = canonizer.best_order
    perm = [0] * g.n
    for position, v in enumerate(order):
        perm[v] = position
    canonical = g.relabel(perm)
    return CanonicalForm(
        code=canonizer.best_code,
        order=tuple(order),
        graph=canonical,
        graph6=graph6_encode(canonical),
    )


def canonical_graph6(g: Graph) -> str:
    return canonical_form(g).graph6


def find_isomorphism(g: Graph, h: Graph) -> Optional[List[int]]:
    """
    A bijection phi with phi[v] = image in h of vertex v of g, or None.
    """
    if g.n != h.n or g.edge_count != h.edge_count:
        return None
    if sorted(g.degrees()) != sorted(h.degrees()):
        return None
    cg = canonical_form(g)
    ch = canonical_form(h)
    if cg.code != ch.code:
        return None
    phi = [0] * g.n
    for vg, vh in zip(cg.order, ch.order):
        phi[vg] = vh
    return phi


def is_isomorphic(g: Graph, h: Graph) -> bool:
    return find_isomorphism(g, h) is not None


def find_spanning_embedding(sub: Graph, host: Graph) -> Optional[List[int]]:
    """
    An injective phi with every edge {u,v} of `sub` mapped onto an edge of
    `host`, on equal vertex counts (spanning containment), or None.
    """
    if sub.n != host.n or sub.edge_count > host.edge_count:
        return None
    n = sub.n
    sub_deg = sub.degrees()
    host_deg = host.degrees()
    for a, b in zip(sorted(sub_deg, reverse=True), sorted(host_deg, reverse=True)):
        if a > b:
            return None

    # Map high-degree, well-connected vertices first.
    order: List[int] = []
    placed = 0
    remaining = set(range(n))
    while remaining:
        v = max(remaining, key=lambda u: (bin(sub.adj[u] & placed).count("1"), sub_deg[u], -u))
        order.append(v)
        placed |= 1 << v
        remaining.discard(v)

    phi = [-1] * n
    used = 0

    def extend(depth: int) -> bool:
        nonlocal used
        if depth == n:
            return True
        v = order[depth]
        required = 0
        for u in iter_bits(sub.adj[v]):
            if phi[u] >= 0:
                required |= 1 << phi[u]
        for w in range(n):
            if used >> w & 1 or host_deg[w] < sub_deg[v]:
                continue
            if host.adj[w] & required != required:
                continue
            phi[v] = w
            used |= 1 << w
            if extend(depth + 1):
                return True
            used &= ~(1 << w)
            phi[v] = -1
        return False

    return list(phi) if extend(0) else None


def is_spanning_subgraph(sub: Graph, host: Graph) -> bool:
    return find_spanning_embedding(sub, host) is not None
