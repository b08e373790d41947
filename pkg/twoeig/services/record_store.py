from threading import Lock
from typing import Dict, List, Optional

from twoeig.graphs.graph import Graph
from twoeig.graphs.isomorphism import find_spanning_embedding
from twoeig.services.records import ClassificationRecord, ClosureWitness
from twoeig.utils.errors import InvalidParameterError
from twoeig.utils.logger import get_logger

logger = get_logger(__name__)


class InMemoryRecordStore:
    """
    Classified records keyed by canonical graph6, plus the SSP-certified seeds
    whose spanning supergraphs inherit q = 2.
    """
    def __init__(self):
        self._records: Dict[str, ClassificationRecord] = {}
        self._seeds: List[ClassificationRecord] = []
        self._lock = Lock()
        logger.info("InMemoryRecordStore initialized.")

    def get_record(self, graph6: str) -> Optional[ClassificationRecord]:
        return self._records.get(graph6)

    def save_record(self, record: ClassificationRecord) -> None:
        with self._lock:
            self._records[record.graph6] = record
        logger.debug(f"Record saved: {record.graph6} -> {record.verdict}")

    def add_seed(self, record: ClassificationRecord) -> None:
        if not record.ssp_certified:
            raise InvalidParameterError(f"seed {record.graph6} carries no SSP certificate")
        with self._lock:
            if all(seed.graph6 != record.graph6 for seed in self._seeds):
                self._seeds.append(record)
                logger.info(f"SSP seed added: {record.graph6} ({record.edges} edges)")

    def seeds(self, n: Optional[int] = None) -> List[ClassificationRecord]:
        return [s for s in self._seeds if n is None or s.n == n]

    def closure_witness(self, g: Graph) -> Optional[ClosureWitness]:
        """A seed spanning g, with its embedding, or None."""
        for seed in self.seeds(g.n):
            if seed.edges > g.edge_count:
                continue
            phi = find_spanning_embedding(seed.graph(), g)
            if phi is not None:
                return ClosureWitness(seed_certificate=seed.certificate, embedding=phi)
        return None

    def all_records(self) -> Dict[str, ClassificationRecord]:
        """Every stored record, keyed by canonical graph6."""
        return self._records

    def clear(self) -> None:
        with self._lock:
            self._records.clear()
            self._seeds.clear()


# Shared by the HTTP app and pipelines built without an explicit store
record_store = InMemoryRecordStore()
