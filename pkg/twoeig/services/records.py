from typing import List, Literal, Optional, Union

from pydantic import BaseModel, Field

from twoeig.analysis.qbounds import BoundReport, replay_bound_report
from twoeig.graphs.graph import Graph
from twoeig.graphs.graph6 import graph6_decode
from twoeig.matrices.certify import Certificate, verify_certificate
from twoeig.matrices.orthsearch import SearchFailure
from twoeig.utils.errors import TwoEigError
from twoeig.utils.logger import get_logger

logger = get_logger(__name__)

Verdict = Literal["Excluded", "Certified", "Undetermined"]
Provenance = Literal["sieve", "closed-form", "search", "ssp-closure"]


class ClosureWitness(BaseModel):
    """An SSP certificate of a spanning subgraph, and where its vertices land."""
    seed_certificate: Certificate
    embedding: List[int] = Field(..., description="embedding[v] = vertex of this graph hosting seed vertex v.")


class ClassificationRecord(BaseModel):
    """
    Census verdict for one graph. Everything needed to re-check the verdict
    travels with the record.
    """
    graph6: str
    n: int
    edges: int
    verdict: Verdict
    provenance: Optional[Provenance] = None
    reports: List[BoundReport] = Field(default_factory=list, description="Firing sieve rules (Excluded).")
    certificate: Optional[Certificate] = None
    closure: Optional[ClosureWitness] = None
    search_failure: Optional[SearchFailure] = None
    extremal_tag: Optional[str] = None

    def graph(self) -> Graph:
        return graph6_decode(self.graph6)

    @property
    def ssp_certified(self) -> bool:
        """Certified by a matrix of its own that has the Strong Spectral Property."""
        return (
            self.verdict == "Certified"
            and self.certificate is not None
            and self.certificate.report is not None
            and bool(self.certificate.report.ssp_status)
        )


def _replay_closure(g: Graph, closure: ClosureWitness) -> bool:
    seed = verify_certificate(closure.seed_certificate, check_ssp=True)
    if not seed.verified or not seed.report.ssp_status:
        return False
    seed_graph = seed.graph()
    phi = closure.embedding
    if seed_graph.n != g.n or sorted(phi) != list(range(g.n)):
        return False
    return all(g.has_edge(phi[u], phi[v]) for u, v in seed_graph.edges())


def replay_record(record: Union[ClassificationRecord, str, dict]) -> bool:
    """
    Re-verifies a record from its serialized content only: witnesses of
    Excluded records, certificates of Certified ones. Undetermined records
    assert nothing and replay trivially.
    """
    if isinstance(record, str):
        record = ClassificationRecord.model_validate_json(record)
    elif isinstance(record, dict):
        record = ClassificationRecord.model_validate(record)
    try:
        g = record.graph()
        if g.n != record.n or g.edge_count != record.edges:
            return False
        if record.verdict == "Excluded":
            return bool(record.reports) and all(replay_bound_report(g, r) for r in record.reports)
        if record.verdict == "Certified":
            if record.provenance == "ssp-closure":
                return record.closure is not None and _replay_closure(g, record.closure)
            if record.certificate is None:
                return False
            if graph6_decode(record.certificate.graph6).adj != g.adj:
                return False
            return verify_certificate(record.certificate, check_ssp=False).verified
        return True
    except TwoEigError as e:
        logger.warning(f"replay_record: {record.graph6} failed to replay: {e}")
        return False
