from typing import Any, Dict, List, Optional

from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel, Field

from twoeig.analysis.comborth import (
    EdgeBoundsReport,
    comb_edge_bounds_check,
    condensable_vertices,
    has_two_path,
    p2_cycle_property,
    pattern_allows_comb_orth,
    quadrangular_check,
)
from twoeig.analysis.qbounds import SieveVerdict, q2_sieve
from twoeig.graphs.graph import Graph
from twoeig.graphs.graph6 import graph6_decode, graph6_encode
from twoeig.graphs.isomorphism import canonical_graph6
from twoeig.matrices.orthsearch import SearchOutcome, certify_q2
from twoeig.services.orchestrator import ClassificationPipeline
from twoeig.services.record_store import record_store
from twoeig.services.records import ClassificationRecord
from twoeig.utils.errors import Graph6ParseError, InvalidParameterError, TwoEigError
from twoeig.utils.logger import get_logger
from twoeig.utils.settings import SearchParams, build_search_params

logger = get_logger(__name__)

# --- App Setup ---
app = FastAPI(
    title="twoeig",
    description="Bounds, certificates and census records for graphs with two distinct eigenvalues.",
    version="1.0.0",
)

app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)

# --- Global Components (Singleton Pattern) ---

try:
    default_params = build_search_params()
    pipeline = ClassificationPipeline(default_params, store=record_store)
    logger.info("Application startup successful. All components initialized.")
except Exception as e:
    logger.critical(f"FATAL: Failed to initialize components: {e}")
    default_params = None
    pipeline = None


# --- Request / Response Models ---

class GraphRequest(BaseModel):
    graph6: str = Field(..., description="graph6 encoding, header optional.")


class SearchRequest(GraphRequest):
    max_iterations: Optional[int] = None
    restarts: Optional[int] = None
    tolerance: Optional[float] = None
    seed: Optional[int] = None
    polish: Optional[bool] = None


class BoundResponse(BaseModel):
    graph6: str
    verdict: SieveVerdict


class CertifyResponse(BaseModel):
    graph6: str
    outcome: SearchOutcome


class ComborthResponse(BaseModel):
    graph6: str
    pattern_allows_comb_orth: bool
    p2_4: Optional[bool] = Field(None, description="None when the graph has no 2-path.")
    p2_leq4: Optional[bool] = None
    quadrangular: bool
    condensable: List[int]
    bounds: Optional[EdgeBoundsReport] = None


def _decode(graph6: str) -> Graph:
    try:
        return graph6_decode(graph6)
    except Graph6ParseError as e:
        raise HTTPException(status_code=422, detail=f"Invalid graph6: {e}")


def _params(request: SearchRequest) -> SearchParams:
    overrides: Dict[str, Any] = request.model_dump(exclude={"graph6"})
    try:
        return build_search_params(overrides=overrides)
    except InvalidParameterError as e:
        raise HTTPException(status_code=422, detail=str(e))


def _run(label: str, fn, *args):
    """Calls fn, mapping library errors to 400 and anything unexpected to 500."""
    try:
        return fn(*args)
    except HTTPException:
        raise
    except TwoEigError as e:
        logger.warning(f"{label}: {e}")
        raise HTTPException(status_code=400, detail=str(e))
    except Exception as e:
        logger.error(f"{label} failed: {e}", exc_info=True)
        raise HTTPException(status_code=500, detail=f"An internal error occurred: {e}")


# --- API Endpoints ---

@app.get("/health", summary="Health Check")
def get_health():
    if pipeline is None:
        return {"status": "unhealthy", "error": "Pipeline failed to initialize."}
    return {"status": "ok"}


@app.post("/bound", summary="Run the q = 2 sieve", response_model=BoundResponse)
def bound(request: GraphRequest):
    g = _decode(request.graph6)
    verdict = _run("bound", q2_sieve, g)
    return BoundResponse(graph6=graph6_encode(g), verdict=verdict)


@app.post("/certify", summary="Certify q = 2", response_model=CertifyResponse)
def certify(request: SearchRequest):
    """
    Tries the closed forms first, then the numerical search. A failed search
    is a normal response with `outcome.failure` set.
    """
    g = _decode(request.graph6)
    outcome = _run("certify", certify_q2, g, _params(request))
    return CertifyResponse(graph6=graph6_encode(g), outcome=outcome)


@app.post("/comborth", summary="Combinatorial orthogonality diagnostics", response_model=ComborthResponse)
def comborth(request: GraphRequest):
    g = _decode(request.graph6)

    def diagnostics() -> ComborthResponse:
        two_path = has_two_path(g)
        return ComborthResponse(
            graph6=graph6_encode(g),
            pattern_allows_comb_orth=pattern_allows_comb_orth(g),
            p2_4=p2_cycle_property(g, allow_triangles=False) if two_path else None,
            p2_leq4=p2_cycle_property(g, allow_triangles=True) if two_path else None,
            quadrangular=quadrangular_check(g),
            condensable=condensable_vertices(g),
            bounds=comb_edge_bounds_check(g) if g.is_connected() else None,
        )

    return _run("comborth", diagnostics)


@app.post("/classify", summary="Classify a connected graph", response_model=ClassificationRecord)
def classify(request: GraphRequest):
    """
    Full pipeline: sieve, closed forms, SSP closure over previously stored
    seeds, numerical search. The record is stored under its canonical graph6.
    """
    if pipeline is None:
        raise HTTPException(status_code=500, detail="Server components failed to initialize.")
    g = _decode(request.graph6)
    return _run("classify", pipeline.classify, g)


@app.get(
    "/records/{graph6}",
    summary="Get a stored record (percent-encode the graph6 path segment)",
    response_model=ClassificationRecord,
)
def get_record(graph6: str):
    """
    Looks up the record of any labeling of the graph. graph6 strings often
    contain `?`, which starts a query string, so clients must percent-encode
    the segment (`?` as `%3F`).
    """
    g = _decode(graph6)
    record = record_store.get_record(canonical_graph6(g))
    if record is None:
        raise HTTPException(status_code=404, detail=f"No record for {graph6}")
    return record


if __name__ == "__main__":
    import uvicorn
    logger.info("Starting server in debug mode...")
    uvicorn.run(app, host="0.0.0.0", port=8000)
