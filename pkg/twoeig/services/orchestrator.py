from typing import Optional

from twoeig.analysis.qbounds import q2_sieve
from twoeig.graphs.graph import Graph
from twoeig.graphs.graph6 import graph6_encode
from twoeig.graphs.isomorphism import canonical_form
from twoeig.matrices.orthsearch import SearchOutcome, closed_form_certificate, search_orthogonal
from twoeig.services.record_store import InMemoryRecordStore, record_store
from twoeig.services.records import ClassificationRecord
from twoeig.utils.logger import get_logger
from twoeig.utils.settings import SearchParams, census_pass

logger = get_logger(__name__)


class ClassificationPipeline:
    """
    Runs the classification steps in sequence.
    Flow: sieve -> closed form -> SSP closure lookup -> search (-> escalation)

    In census mode the search runs with the census restart count first and
    escalates to the larger count only when that pass fails.
    """
    def __init__(
        self,
        params: Optional[SearchParams] = None,
        store: Optional[InMemoryRecordStore] = None,
        census_mode: bool = False,
    ):
        self.params = params or SearchParams()
        self.store = store if store is not None else record_store
        self.census_mode = census_mode
        logger.info(f"ClassificationPipeline initialized (census_mode={census_mode}).")

    def _search(self, g: Graph) -> SearchOutcome:
        if not self.census_mode:
            return search_orthogonal(g, self.params)
        outcome = search_orthogonal(g, census_pass(self.params))
        if outcome.success:
            return outcome
        logger.info(f"Pipeline: escalating search for n={g.n}, |E|={g.edge_count}")
        return search_orthogonal(g, census_pass(self.params, escalation=True))

    def _seed_if_new(self, record: ClassificationRecord, g: Graph) -> None:
        # Only seeds not already spanned by an existing seed
        if record.ssp_certified and self.store.closure_witness(g) is None:
            self.store.add_seed(record)

    def classify(self, g: Graph, canonical: bool = True) -> ClassificationRecord:
        """
        Classifies a connected graph. With canonical=True the record and its
        certificate use the canonical labeling.
        """
        g.require_connected("classify")
        if canonical:
            form = canonical_form(g)
            g, graph6 = form.graph, form.graph6
        else:
            graph6 = graph6_encode(g)
        fields = dict(graph6=graph6, n=g.n, edges=g.edge_count)

        # --- Step 1: Sieve ---
        verdict = q2_sieve(g)
        fields["extremal_tag"] = verdict.extremal_tag
        if verdict.status == "Excluded":
            record = ClassificationRecord(verdict="Excluded", provenance="sieve", reports=verdict.reports, **fields)
            logger.debug(f"Pipeline: {graph6} excluded by {[r.rule for r in verdict.reports]}")
            self.store.save_record(record)
            return record

        # --- Step 2: Closed form ---
        certificate = closed_form_certificate(g)
        if certificate is not None and certificate.verified:
            record = ClassificationRecord(verdict="Certified", provenance="closed-form",
                                          certificate=certificate, **fields)
            self._seed_if_new(record, g)
            self.store.save_record(record)
            return record

        # --- Step 3: SSP closure lookup ---
        closure = self.store.closure_witness(g)
        if closure is not None:
            record = ClassificationRecord(verdict="Certified", provenance="ssp-closure", closure=closure, **fields)
            self.store.save_record(record)
            return record

        # --- Step 4: Search ---
        outcome = self._search(g)
        if outcome.success:
            record = ClassificationRecord(verdict="Certified", provenance="search",
                                          certificate=outcome.certificate, **fields)
            self._seed_if_new(record, g)
        else:
            logger.warning(f"Pipeline: {graph6} undetermined ({outcome.failure.reason})")
            record = ClassificationRecord(verdict="Undetermined", search_failure=outcome.failure, **fields)
        self.store.save_record(record)
        return record
