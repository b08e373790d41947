"""
Numerical search for a symmetric orthogonal matrix in S(G).

Each restart alternates two projections: onto symmetric orthogonal matrices
(eigenvalues snapped to +-1) and onto matrices supported on E(G) plus the
diagonal (forbidden entries zeroed). Near convergence a few Gauss-Newton
steps on the pattern coordinates drive max|X^2 - I| down to round-off.
"""
from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional, Tuple

import numpy as np
import scipy.linalg
from pydantic import BaseModel, Field

from twoeig.analysis.qbounds import is_candle
from twoeig.graphs.graph import Graph
from twoeig.graphs.isomorphism import find_isomorphism
from twoeig.graphs.named_graphs import named_graph
from twoeig.matrices.certify import Certificate, candle_graph, candle_matrix, verify_certificate
from twoeig.matrices.exact import FloatMatrix
from twoeig.matrices.named_matrices import (
    NAMED_MATRIX_TABLE,
    named_matrix_exact,
    named_matrix_graph_name,
    named_matrix_scale,
)
from twoeig.utils.errors import InvalidParameterError, NumericError
from twoeig.utils.logger import get_logger
from twoeig.utils.settings import SearchParams

logger = get_logger(__name__)

POLISH_START = 1e-3
POLISH_STEPS = 12
STALL_WINDOW = 250
STALL_RATIO = 0.995


class SearchFailure(BaseModel):
    reason: str = Field(..., description="no-convergence or degenerate-pattern.")
    best_residual: float
    iterations: int
    restarts: int


class SearchOutcome(BaseModel):
    certificate: Optional[Certificate] = None
    failure: Optional[SearchFailure] = None
    restart_index: Optional[int] = Field(None, description="Restart that produced the certificate.")
    iterations: int = Field(0, description="Iterations over all restarts up to the accepted one.")

    @property
    def success(self) -> bool:
        return self.certificate is not None


class _RestartResult(BaseModel):
    index: int
    status: str  # converged | degenerate | stalled | exhausted
    residual: float
    best_residual: float
    iterations: int
    matrix: Optional[List[List[float]]] = None


def _residual(x: np.ndarray) -> float:
    return float(np.max(np.abs(x @ x - np.eye(x.shape[0]))))


def project_orthogonal(x: np.ndarray) -> np.ndarray:
    """Nearest symmetric orthogonal matrix: eigenvalues to sign, ties at 0 balance the counts."""
    try:
        w, v = scipy.linalg.eigh(x)
    except (np.linalg.LinAlgError, scipy.linalg.LinAlgError) as e:
        raise NumericError(f"eigh failed during projection: {e}") from e
    signs = np.sign(w)
    zeros = np.flatnonzero(signs == 0)
    if zeros.size:
        positives = int(np.sum(signs > 0))
        negatives = int(np.sum(signs < 0))
        for idx in zeros:
            if positives <= negatives:
                signs[idx] = 1.0
                positives += 1
            else:
                signs[idx] = -1.0
                negatives += 1
    q = (v * signs) @ v.T
    return (q + q.T) / 2.0


def _pattern_coordinates(g: Graph) -> List[Tuple[int, int]]:
    return [(i, i) for i in range(g.n)] + g.edges()


def _polish(x: np.ndarray, coords: List[Tuple[int, int]], target: float) -> np.ndarray:
    """Gauss-Newton on F(x) = upper triangle of X^2 - I over the pattern coordinates."""
    n = x.shape[0]
    upper = np.triu_indices(n)
    eye = np.eye(n)
    for _ in range(POLISH_STEPS):
        residual = (x @ x - eye)[upper]
        if np.max(np.abs(residual)) <= target:
            break
        columns = []
        for i, j in coords:
            e = np.zeros((n, n))
            e[i, j] = e[j, i] = 1.0
            columns.append((e @ x + x @ e)[upper])
        jacobian = np.column_stack(columns)
        step, *_ = np.linalg.lstsq(jacobian, -residual, rcond=None)
        candidate = x.copy()
        for (i, j), delta in zip(coords, step):
            candidate[i, j] += delta
            if i != j:
                candidate[j, i] = candidate[i, j]
        if _residual(candidate) >= _residual(x):
            break
        x = candidate
    return x


def _initial_point(g: Graph, mask: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    upper = np.triu(rng.uniform(-1.0, 1.0, size=(g.n, g.n)))
    x = upper + np.triu(upper, 1).T
    return x * mask


def _run_restart(g: Graph, mask: np.ndarray, params: SearchParams, index: int) -> _RestartResult:
    rng = np.random.default_rng(params.seed + index)
    coords = _pattern_coordinates(g)
    x = _initial_point(g, mask, rng)
    best = _residual(x)
    window_best = best
    residual = best
    for iteration in range(1, params.max_iterations + 1):
        x = project_orthogonal(x) * mask
        residual = _residual(x)
        if params.polish and residual < POLISH_START:
            x = _polish(x, coords, params.tolerance / 10.0)
            residual = _residual(x)
        best = min(best, residual)
        if residual <= params.tolerance:
            edge_values = [abs(x[i, j]) for i, j in g.edges()]
            if edge_values and min(edge_values) <= params.tolerance:
                logger.debug(f"restart {index}: converged onto a proper subgraph pattern")
                return _RestartResult(index=index, status="degenerate", residual=residual,
                                      best_residual=best, iterations=iteration)
            return _RestartResult(index=index, status="converged", residual=residual, best_residual=best,
                                  iterations=iteration, matrix=x.tolist())
        if iteration % STALL_WINDOW == 0:
            if best > STALL_RATIO * window_best:
                logger.debug(f"restart {index}: stalled at residual {best:.3e} after {iteration} iterations")
                return _RestartResult(index=index, status="stalled", residual=residual,
                                      best_residual=best, iterations=iteration)
            window_best = best
    return _RestartResult(index=index, status="exhausted", residual=residual,
                          best_residual=best, iterations=params.max_iterations)


def _accept(g: Graph, result: _RestartResult, params: SearchParams, check_ssp: bool) -> Optional[Certificate]:
    certificate = Certificate.build(g, FloatMatrix.of(result.matrix), scale=1, source="search")
    certificate = verify_certificate(certificate, tol=params.tolerance, check_ssp=check_ssp)
    return certificate if certificate.verified else None


def search_orthogonal(g: Graph, params: Optional[SearchParams] = None, check_ssp: bool = True) -> SearchOutcome:
    """
    Runs seeded restarts (restart r uses seed + r) in batches of params.workers;
    the lowest-index verified success wins regardless of scheduling.
    """
    params = params or SearchParams()
    if g.n < 2:
        raise InvalidParameterError(f"search_orthogonal needs n >= 2, got {g.n}")
    g.require_connected("search_orthogonal")

    mask = np.eye(g.n)
    for i, j in g.edges():
        mask[i, j] = mask[j, i] = 1.0

    logger.info(f"Search: n={g.n}, |E|={g.edge_count}, restarts={params.restarts}, seed={params.seed}")
    total_iterations = 0
    best_residual = float("inf")
    degenerate = 0
    executor = ThreadPoolExecutor(max_workers=params.workers) if params.workers > 1 else None
    try:
        for start in range(0, params.restarts, params.workers):
            indices = range(start, min(start + params.workers, params.restarts))
            if executor is None:
                batch = [_run_restart(g, mask, params, i) for i in indices]
            else:
                batch = list(executor.map(lambda i: _run_restart(g, mask, params, i), indices))
            for result in batch:
                total_iterations += result.iterations
                best_residual = min(best_residual, result.best_residual)
                if result.status == "degenerate":
                    degenerate += 1
                if result.status != "converged":
                    continue
                certificate = _accept(g, result, params, check_ssp)
                if certificate is None:
                    degenerate += 1
                    continue
                logger.info(
                    f"Search: certified after restart {result.index} ({total_iterations} iterations), "
                    f"ssp={certificate.report.ssp_status}"
                )
                return SearchOutcome(certificate=certificate, restart_index=result.index,
                                     iterations=total_iterations)
    finally:
        if executor is not None:
            executor.shutdown(wait=True)

    reason = "degenerate-pattern" if degenerate else "no-convergence"
    logger.info(f"Search: failed ({reason}), best residual {best_residual:.3e}")
    return SearchOutcome(
        failure=SearchFailure(reason=reason, best_residual=best_residual,
                              iterations=total_iterations, restarts=params.restarts),
        iterations=total_iterations,
    )


def closed_form_certificate(g: Graph, check_ssp: bool = True) -> Optional[Certificate]:
    """A candle matrix or a printed matrix carried onto g's labels, if one applies."""
    tag = is_candle(g)
    if tag is not None:
        phi = find_isomorphism(candle_graph(tag.k, tag.kind), g)
        matrix = candle_matrix(tag.k, tag.kind).relabeled(phi)
        certificate = Certificate.build(g, matrix, scale=2, source="closed-form")
        return verify_certificate(certificate, check_ssp=check_ssp)

    for name in NAMED_MATRIX_TABLE:
        table_graph = named_graph(named_matrix_graph_name(name))
        if table_graph.n != g.n or table_graph.edge_count != g.edge_count:
            continue
        phi = find_isomorphism(table_graph, g)
        if phi is None:
            continue
        matrix = named_matrix_exact(name).relabeled(phi)
        certificate = Certificate.build(g, matrix, scale=named_matrix_scale(name), source=f"named:{name}")
        return verify_certificate(certificate, check_ssp=check_ssp)
    return None


def certify_q2(g: Graph, params: Optional[SearchParams] = None, check_ssp: bool = True) -> SearchOutcome:
    """Closed form (candles, printed matrices) first, then the numerical search."""
    g.require_connected("certify_q2")
    certificate = closed_form_certificate(g, check_ssp=check_ssp)
    if certificate is not None and certificate.verified:
        logger.info(f"certify_q2: closed-form certificate ({certificate.source})")
        return SearchOutcome(certificate=certificate)
    return search_orthogonal(g, params, check_ssp=check_ssp)
