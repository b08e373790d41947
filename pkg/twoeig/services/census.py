"""
Exhaustive census of small connected graphs.

Graphs are generated level by level in the number of edges: every graph
with m + 1 edges arises from one with m edges by adding a non-edge, and
duplicates are rejected by canonical graph6. Classification then runs in
increasing edge order so that SSP seeds found early spread to the denser
graphs that contain them.
"""
import sys
from typing import Dict, Iterable, Iterator, List, Optional, Set

from pydantic import BaseModel, Field
from tqdm import tqdm

from twoeig.analysis.comborth import condensable_vertices, condense_to, pattern_allows_comb_orth
from twoeig.analysis.qbounds import extremal_tag, minimum_edges
from twoeig.graphs.graph import Graph, cycle_graph, double_candle
from twoeig.graphs.graph6 import graph6_decode
from twoeig.graphs.isomorphism import canonical_form, find_spanning_embedding, is_isomorphic
from twoeig.graphs.named_graphs import named_graph
from twoeig.services.orchestrator import ClassificationPipeline
from twoeig.services.record_store import InMemoryRecordStore
from twoeig.services.records import ClassificationRecord
from twoeig.utils.errors import BudgetExceededError, ContradictionError, InvalidParameterError
from twoeig.utils.logger import get_logger
from twoeig.utils.settings import SearchParams

logger = get_logger(__name__)

MAX_CENSUS_N = 8


def _progress(iterable: Iterable, desc: str, enabled: bool, total: Optional[int] = None):
    return tqdm(iterable, desc=desc, total=total, disable=not (enabled and sys.stderr.isatty()), file=sys.stderr)


# --- Enumeration ---

def _augment(level: Dict[str, Graph]) -> Dict[str, Graph]:
    nxt: Dict[str, Graph] = {}
    for g in level.values():
        for e in g.non_edges():
            form = canonical_form(g.with_edges([e]))
            if form.graph6 not in nxt:
                nxt[form.graph6] = form.graph
    return nxt


def graphs_by_edge_count(n: int, max_edges: Optional[int] = None, progress: bool = False) -> Iterator[Dict[str, Graph]]:
    """Yields, for m = 0, 1, ..., one canonical representative per class with m edges."""
    if not 1 <= n <= MAX_CENSUS_N:
        raise InvalidParameterError(f"census n must be in 1..{MAX_CENSUS_N}, got {n}")
    top = n * (n - 1) // 2 if max_edges is None else min(max_edges, n * (n - 1) // 2)
    empty = canonical_form(Graph.empty(n))
    level = {empty.graph6: empty.graph}
    for m in _progress(range(top + 1), f"enumerate n={n}", progress, total=top + 1):
        yield dict(sorted(level.items()))
        if m < top:
            level = _augment(level)


def enumerate_connected(n: int, max_edges: Optional[int] = None, progress: bool = False) -> Iterator[Graph]:
    """One canonical connected graph per isomorphism class, ordered by (edges, graph6)."""
    for level in graphs_by_edge_count(n, max_edges, progress):
        for g in level.values():
            if g.is_connected():
                yield g


# --- SSP closure ---

def ssp_closure(seeds: List[ClassificationRecord], n: int) -> Set[str]:
    """
    Canonical graph6 of every graph on n vertices that contains some seed as
    a spanning subgraph. Seeds must carry a verified certificate with SSP.
    """
    closure: Set[str] = set()
    frontier: Dict[str, Graph] = {}
    for seed in seeds:
        if not (seed.ssp_certified and seed.certificate.verified):
            raise InvalidParameterError(f"seed {seed.graph6} has no verified SSP certificate")
        if seed.n != n:
            raise InvalidParameterError(f"seed {seed.graph6} has {seed.n} vertices, expected {n}")
        form = canonical_form(seed.graph())
        frontier[form.graph6] = form.graph
    while frontier:
        closure.update(frontier)
        nxt = {k: g for k, g in _augment(frontier).items() if k not in closure}
        frontier = nxt
    return closure


# --- Report ---

class ExtremalEntry(BaseModel):
    graph6: str
    tag: Optional[str]


class EdgeBucket(BaseModel):
    edges: int
    Excluded: int = 0
    Certified: int = 0
    Undetermined: int = 0


class CensusReport(BaseModel):
    n: int
    max_edges: Optional[int] = None
    total: int
    buckets: List[EdgeBucket]
    provenance: Dict[str, int] = Field(default_factory=dict)
    minimum_edges: Optional[int] = Field(None, description="2n-4 (n even) or 2n-3 (n odd) for n >= 3.")
    certified_at_bound: List[ExtremalEntry] = Field(default_factory=list)
    seeds: List[str] = Field(default_factory=list, description="SSP-certified graphs used for closure.")
    undetermined: List[str] = Field(default_factory=list)
    contradictions: List[str] = Field(default_factory=list)
    records: List[ClassificationRecord] = Field(default_factory=list)

    def certified(self) -> List[ClassificationRecord]:
        return [r for r in self.records if r.verdict == "Certified"]


def _c4_condensation_contradiction(g: Graph) -> Optional[str]:
    # A q = 2 graph condensing to C4 must be a double candle
    if not condensable_vertices(g):
        return None
    try:
        trace = condense_to(g, cycle_graph(4))
    except BudgetExceededError:
        return None
    if trace is None:
        return None
    if g.n % 2 == 0 and is_isomorphic(g, double_candle(g.n // 2)):
        return None
    return "condenses to C4 but is not a double candle"


def theorem_contradictions(records: List[ClassificationRecord], n: int, seeds: List[ClassificationRecord]) -> List[str]:
    """Records disagreeing with a proven statement about q(G) = 2."""
    problems: List[str] = []
    seed_graphs = [s.graph() for s in seeds]
    g5_single = named_graph("G2p") if n == 5 else None
    for record in records:
        g = record.graph()
        certified = record.verdict == "Certified"
        if n >= 3 and certified:
            bound = minimum_edges(n)
            if record.edges < bound:
                problems.append(f"{record.graph6}: certified with {record.edges} < {bound} edges")
            elif record.edges == bound and extremal_tag(g) is None:
                problems.append(f"{record.graph6}: certified at the edge bound but not Q3 or a candle")
        if n >= 3 and not certified and record.edges == minimum_edges(n) and extremal_tag(g) is not None:
            problems.append(f"{record.graph6}: {extremal_tag(g)} at the edge bound is {record.verdict}")
        if certified:
            if not pattern_allows_comb_orth(g):
                problems.append(f"{record.graph6}: certified but A(G)+I is not combinatorially orthogonal")
            if n > 4 and record.edges <= 1.5 * n - 2:
                problems.append(f"{record.graph6}: certified with |E| <= (3/2)n - 2")
            message = _c4_condensation_contradiction(g)
            if message:
                problems.append(f"{record.graph6}: {message}")
            if g5_single is not None and find_spanning_embedding(g5_single, g) is None:
                problems.append(f"{record.graph6}: certified on 5 vertices without containing G2'")
        if record.verdict == "Excluded":
            for seed in seed_graphs:
                if find_spanning_embedding(seed, g) is not None:
                    problems.append(f"{record.graph6}: excluded but spans an SSP seed")
                    break
    return problems


def census_report(
    n: int,
    params: Optional[SearchParams] = None,
    max_edges: Optional[int] = None,
    store: Optional[InMemoryRecordStore] = None,
    progress: bool = False,
    raise_on_contradiction: bool = False,
) -> CensusReport:
    """
    Classifies every connected graph on n vertices (up to max_edges edges)
    and checks the results against the edge-bound characterization.
    """
    store = store if store is not None else InMemoryRecordStore()
    pipeline = ClassificationPipeline(params, store=store, census_mode=True)
    graphs = list(enumerate_connected(n, max_edges, progress))
    logger.info(f"Census n={n}: {len(graphs)} connected graphs to classify")

    records: List[ClassificationRecord] = []
    for g in _progress(graphs, f"classify n={n}", progress):
        records.append(pipeline.classify(g, canonical=False))

    buckets: Dict[int, EdgeBucket] = {}
    provenance: Dict[str, int] = {}
    for record in records:
        bucket = buckets.setdefault(record.edges, EdgeBucket(edges=record.edges))
        setattr(bucket, record.verdict, getattr(bucket, record.verdict) + 1)
        if record.provenance:
            provenance[record.provenance] = provenance.get(record.provenance, 0) + 1

    bound = minimum_edges(n) if n >= 3 else None
    at_bound = [
        ExtremalEntry(graph6=r.graph6, tag=r.extremal_tag)
        for r in records if r.verdict == "Certified" and r.edges == bound
    ]
    seeds = store.seeds(n)
    contradictions = theorem_contradictions(records, n, seeds)
    report = CensusReport(
        n=n,
        max_edges=max_edges,
        total=len(records),
        buckets=[buckets[m] for m in sorted(buckets)],
        provenance=provenance,
        minimum_edges=bound,
        certified_at_bound=at_bound,
        seeds=[s.graph6 for s in seeds],
        undetermined=[r.graph6 for r in records if r.verdict == "Undetermined"],
        contradictions=contradictions,
        records=records,
    )
    logger.info(
        f"Census n={n}: {provenance}, undetermined={len(report.undetermined)}, "
        f"contradictions={len(contradictions)}"
    )
    if contradictions:
        for line in contradictions:
            logger.error(f"Contradiction: {line}")
        if raise_on_contradiction:
            raise ContradictionError(f"{len(contradictions)} census records contradict proven statements")
    return report


def records_for(report: CensusReport, graph6: str) -> Optional[ClassificationRecord]:
    key = canonical_form(graph6_decode(graph6)).graph6
    return next((r for r in report.records if r.graph6 == key), None)
