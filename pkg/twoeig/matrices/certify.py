"""
Certificates of q(G) = 2: closed-form candle matrices and the checks a
certificate must pass (pattern, orthogonality, spectrum, Strong Spectral
Property).
"""
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
import scipy.linalg
from pydantic import BaseModel, Field

from twoeig.graphs.graph import Graph, candle_levels, double_candle, single_candle
from twoeig.graphs.graph6 import graph6_decode, graph6_encode
from twoeig.graphs.isomorphism import is_isomorphic
from twoeig.matrices.exact import (
    SQRT2,
    ZERO,
    ExactMatrix,
    FloatMatrix,
    Matrix,
    QSqrt2,
    as_array,
    exact_rank,
)
from twoeig.utils.errors import InvalidParameterError, NumericError
from twoeig.utils.logger import get_logger

logger = get_logger(__name__)

DEFAULT_SPECTRUM_TOL = 1e-8
DEFAULT_SSP_TOL = 1e-9
DEFAULT_RESIDUAL_TOL = 1e-9

# --- Candle blocks ---

_R = [[-1, 1], [1, -1]]
_J = [[1, 1], [1, 1]]
_T1 = [[SQRT2, -SQRT2]]
_T2 = [[SQRT2, SQRT2]]


def _transpose(block):
    return [list(col) for col in zip(*block)]


def _place(rows: List[List[QSqrt2]], left: Sequence[int], right: Sequence[int], block) -> None:
    for a, u in enumerate(left):
        for b, v in enumerate(right):
            value = QSqrt2.of(block[a][b])
            rows[u][v] = value
            rows[v][u] = value


def candle_matrix(k: int, kind: str) -> ExactMatrix:
    """
    X with X^2 = 4I and off-diagonal support equal to the candle's edges.

    Blocks follow the distance levels from vertex 0. Consecutive 2 x 2 chain
    blocks alternate between J and R, and since JR = RJ = 0 rows two levels
    apart stay orthogonal. The end blocks (T1 = sqrt2 [1, -1] or
    T2 = sqrt2 [1, 1]) are chosen so each row pair inside a level cancels:
    T1 and R contribute -2, T2 and J contribute +2.

    For the single candle the last level {2k-1, 2k} carries J on the diagonal
    and is entered by R. k = 1 (K3) is the rational matrix (2/3)(2A - I).
    """
    levels = candle_levels(k, kind)
    if kind == "single" and k == 1:
        third = Fraction(2, 3)
        rows = [[third * (-1 if i == j else 2) for j in range(3)] for i in range(3)]
        return ExactMatrix.from_rows(rows)

    n = sum(len(level) for level in levels)
    rows = [[ZERO] * n for _ in range(n)]
    pairs = levels[1:-1] if kind == "double" else levels[1:]   # the 2-vertex levels
    chain = len(pairs) - 1
    if kind == "double":
        chain_blocks = [_J if i % 2 == 0 else _R for i in range(chain)]
    else:
        # counted backwards from the R entering the final J
        chain_blocks = [_R if (chain - 1 - i) % 2 == 0 else _J for i in range(chain)]
    for i, block in enumerate(chain_blocks):
        _place(rows, pairs[i], pairs[i + 1], block)

    first_is_j = bool(chain_blocks) and chain_blocks[0] is _J
    _place(rows, levels[0], pairs[0], _T1 if kind == "double" or first_is_j else _T2)

    if kind == "double":
        last_is_j = bool(chain_blocks) and chain_blocks[-1] is _J
        _place(rows, pairs[-1], levels[-1], _transpose(_T1 if last_is_j else _T2))
    else:
        end = levels[-1]
        _place(rows, end, end, _J)
    return ExactMatrix.from_rows(rows)


def candle_graph(k: int, kind: str) -> Graph:
    return double_candle(k) if kind == "double" else single_candle(k)


# --- Pattern and spectrum ---

def pattern_graph(a: Union[Matrix, np.ndarray], tol: float = 0.0) -> Graph:
    """The graph of the off-diagonal support; float entries count when |x| > tol."""
    if isinstance(a, ExactMatrix):
        edges = [(i, j) for i in range(a.n) for j in range(i + 1, a.n) if not a[i, j].is_zero()]
        return Graph.from_edges(a.n, edges)
    values = as_array(a)
    n = values.shape[0]
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if abs(values[i, j]) > tol]
    return Graph.from_edges(n, edges)


def pattern_match(a: Union[Matrix, np.ndarray], g: Graph, tol: float = 0.0) -> bool:
    n = a.n if isinstance(a, (ExactMatrix, FloatMatrix)) else np.asarray(a).shape[0]
    if n != g.n:
        raise InvalidParameterError(f"matrix is {n} x {n} but the graph has {g.n} vertices")
    return pattern_graph(a, tol).adj == g.adj


def spectrum(a: Union[Matrix, np.ndarray], tol: float = DEFAULT_SPECTRUM_TOL) -> List[Tuple[float, int]]:
    """
    Eigenvalues clustered within tol * max(1, spectral radius); each cluster
    reports its mean and size, in increasing order.
    """
    if tol <= 0:
        raise InvalidParameterError(f"spectrum tolerance must be positive, got {tol}")
    values = as_array(a)
    try:
        eigenvalues = scipy.linalg.eigvalsh(values)
    except (np.linalg.LinAlgError, scipy.linalg.LinAlgError) as e:
        raise NumericError(f"symmetric eigensolver failed: {e}") from e
    if eigenvalues.size == 0:
        return []
    gap = tol * max(1.0, float(np.max(np.abs(eigenvalues))))
    clusters: List[List[float]] = [[float(eigenvalues[0])]]
    for value in eigenvalues[1:]:
        if value - clusters[-1][-1] <= gap:
            clusters[-1].append(float(value))
        else:
            clusters.append([float(value)])
    return [(float(np.mean(c)), len(c)) for c in clusters]


def distinct_count(a: Union[Matrix, np.ndarray], tol: float = DEFAULT_SPECTRUM_TOL) -> int:
    return len(spectrum(a, tol))


def verify_orthogonality_exact(x: ExactMatrix, scale: Union[QSqrt2, int, Fraction]) -> bool:
    """X^2 == scale^2 I in Q(sqrt 2); X symmetric so X^T X = X^2."""
    scale = QSqrt2.of(scale)
    return x.square().is_scalar_identity(scale * scale)


def orthogonality_residual(a: Union[Matrix, np.ndarray], scale: float = 1.0) -> float:
    """max |(A/scale)^2 - I| in floating point."""
    values = as_array(a) / scale
    return float(np.max(np.abs(values @ values - np.eye(values.shape[0])))) if values.size else 0.0


# --- Strong Spectral Property ---

def _ssp_unknowns(a: Union[Matrix, np.ndarray]) -> List[Tuple[int, int]]:
    """Off-diagonal zero positions of A; the free entries of a symmetric X with X o A = 0."""
    return pattern_graph(a).complement().edges()


def _commutator_rows_exact(a: ExactMatrix, unknowns: List[Tuple[int, int]]) -> List[Dict[int, QSqrt2]]:
    n = a.n
    rows: Dict[Tuple[int, int], Dict[int, QSqrt2]] = {}

    def add(i: int, j: int, t: int, value: QSqrt2) -> None:
        if value.is_zero() or i == j:
            return
        sign = 1
        if i > j:
            # AX - XA is antisymmetric
            i, j, sign = j, i, -1
        row = rows.setdefault((i, j), {})
        row[t] = row.get(t, ZERO) + (value if sign > 0 else -value)

    for t, (p, q) in enumerate(unknowns):
        # coefficient of x_pq in (AX - XA)_ij
        for i in range(n):
            add(i, q, t, a[i, p])
            add(i, p, t, a[i, q])
        for j in range(n):
            add(p, j, t, -a[q, j])
            add(q, j, t, -a[p, j])
    return [rows[key] for key in sorted(rows)]


def _commutator_matrix_float(values: np.ndarray, unknowns: List[Tuple[int, int]]) -> np.ndarray:
    n = values.shape[0]
    upper = np.triu_indices(n, k=1)
    columns = []
    for p, q in unknowns:
        e = np.zeros((n, n))
        e[p, q] = e[q, p] = 1.0
        columns.append((values @ e - e @ values)[upper])
    return np.column_stack(columns)


class SSPResult(BaseModel):
    has_ssp: bool = Field(..., description="True iff X = 0 is the only admissible X.")
    nullity: int = Field(..., description="Dimension of the admissible X space.")
    unknowns: int = Field(..., description="Number of free entries of X (non-edges).")
    exact: bool = Field(..., description="Rank computed in Q(sqrt 2) rather than by SVD.")


def ssp_check(a: Union[Matrix, np.ndarray], tol: float = DEFAULT_SSP_TOL) -> SSPResult:
    """
    Solves AX = XA over symmetric X with zero diagonal and X_ij = 0 on the
    support of A. Exact matrices use exact rank; floats count singular values
    below tol * sigma_max as zero.
    """
    unknowns = _ssp_unknowns(a)
    if not unknowns:
        return SSPResult(has_ssp=True, nullity=0, unknowns=0, exact=isinstance(a, ExactMatrix))
    if isinstance(a, ExactMatrix):
        rank = exact_rank(_commutator_rows_exact(a, unknowns))
        nullity = len(unknowns) - rank
        logger.debug(f"ssp_check (exact): {len(unknowns)} unknowns, rank {rank}")
        return SSPResult(has_ssp=nullity == 0, nullity=nullity, unknowns=len(unknowns), exact=True)

    system = _commutator_matrix_float(as_array(a), unknowns)
    try:
        singular = scipy.linalg.svdvals(system)
    except (np.linalg.LinAlgError, scipy.linalg.LinAlgError) as e:
        raise NumericError(f"SVD failed in ssp_check: {e}") from e
    threshold = tol * (float(singular[0]) if singular.size else 0.0)
    rank = int(np.sum(singular > threshold)) if singular.size and singular[0] > 0 else 0
    nullity = len(unknowns) - rank
    logger.debug(f"ssp_check (float): {len(unknowns)} unknowns, rank {rank}")
    return SSPResult(has_ssp=nullity == 0, nullity=nullity, unknowns=len(unknowns), exact=False)


# --- Certificates ---

class SpectrumEntry(BaseModel):
    value: float
    multiplicity: int


class CertificateReport(BaseModel):
    pattern_ok: bool = Field(..., description="Off-diagonal support equals E(G) under the graph's labels.")
    pattern_isomorphic: Optional[bool] = Field(
        None, description="Set when pattern_ok is false: the support graph is isomorphic to G."
    )
    orthogonality_exact: Optional[bool] = Field(None, description="X^2 == scale^2 I exactly (exact matrices only).")
    orthogonality_residual: float = Field(..., description="max |(X/scale)^2 - I| in floating point.")
    spectrum: List[SpectrumEntry]
    distinct_count: int
    ssp_status: Optional[bool] = None
    ssp_nullity: Optional[int] = None
    verified: bool


class Certificate(BaseModel):
    """
    A matrix claimed to lie in S(G) with two distinct eigenvalues. Entries are
    [a, b] rational-string pairs (a + b sqrt2) for exact matrices or floats.
    """
    graph6: str
    n: int
    source: str = Field(..., description="closed-form, named:<name>, search or replay.")
    exact_entries: Optional[List[List[List[str]]]] = None
    float_entries: Optional[List[List[float]]] = None
    scale: List[str] = Field(..., description="Positive scale as an [a, b] pair; matrix/scale is orthogonal.")
    report: Optional[CertificateReport] = None

    @classmethod
    def build(
        cls,
        g: Graph,
        matrix: Matrix,
        scale: Union[QSqrt2, int, Fraction, float] = 1,
        source: str = "closed-form",
    ) -> "Certificate":
        if isinstance(scale, float):
            scale = Fraction(scale).limit_denominator(10**12)
        fields = dict(graph6=graph6_encode(g), n=g.n, source=source, scale=QSqrt2.of(scale).to_pair())
        if isinstance(matrix, ExactMatrix):
            fields["exact_entries"] = matrix.to_pairs()
        else:
            fields["float_entries"] = matrix.to_lists()
        return cls(**fields)

    def graph(self) -> Graph:
        return graph6_decode(self.graph6)

    def matrix(self) -> Matrix:
        if self.exact_entries is not None:
            return ExactMatrix.from_pairs(self.exact_entries)
        if self.float_entries is not None:
            return FloatMatrix.of(self.float_entries)
        raise InvalidParameterError("certificate carries no matrix entries")

    def scale_value(self) -> QSqrt2:
        return QSqrt2.from_pair(self.scale)

    @property
    def verified(self) -> bool:
        return self.report is not None and self.report.verified


def verify_certificate(
    c: Certificate,
    tol: float = DEFAULT_RESIDUAL_TOL,
    spectrum_tol: float = DEFAULT_SPECTRUM_TOL,
    check_ssp: bool = True,
) -> Certificate:
    """
    Returns a copy of c with its report filled. Verified means the pattern
    matches, the orthogonality residual is within tol, and there are
    exactly two distinct eigenvalues.
    """
    g = c.graph()
    matrix = c.matrix()
    if matrix.n != g.n:
        raise InvalidParameterError(f"certificate matrix is {matrix.n} x {matrix.n}, graph has {g.n} vertices")
    scale = c.scale_value()

    pattern_ok = pattern_match(matrix, g)
    pattern_isomorphic = None
    if not pattern_ok:
        pattern_isomorphic = is_isomorphic(pattern_graph(matrix), g)

    orthogonality_exact = None
    if isinstance(matrix, ExactMatrix):
        orthogonality_exact = verify_orthogonality_exact(matrix, scale)
    residual = 0.0 if orthogonality_exact else orthogonality_residual(matrix, float(scale))

    entries = [SpectrumEntry(value=v, multiplicity=m) for v, m in spectrum(matrix, spectrum_tol)]

    ssp_status = ssp_nullity = None
    if check_ssp:
        ssp = ssp_check(matrix)
        ssp_status, ssp_nullity = ssp.has_ssp, ssp.nullity

    verified = pattern_ok and residual <= tol and len(entries) == 2
    report = CertificateReport(
        pattern_ok=pattern_ok,
        pattern_isomorphic=pattern_isomorphic,
        orthogonality_exact=orthogonality_exact,
        orthogonality_residual=residual,
        spectrum=entries,
        distinct_count=len(entries),
        ssp_status=ssp_status,
        ssp_nullity=ssp_nullity,
        verified=verified,
    )
    if not verified:
        logger.warning(
            f"Certificate for {c.graph6} not verified: pattern_ok={pattern_ok}, "
            f"residual={residual:.3e}, distinct={len(entries)}"
        )
    else:
        logger.debug(f"Certificate for {c.graph6} verified ({c.source}), ssp={ssp_status}")
    return c.model_copy(update={"report": report})


def candle_certificate(k: int, kind: str, check_ssp: bool = True) -> Certificate:
    g = candle_graph(k, kind)
    return verify_certificate(
        Certificate.build(g, candle_matrix(k, kind), scale=2, source="closed-form"),
        check_ssp=check_ssp,
    )
