"""
The printed orthogonal witnesses, kept exactly as displayed (row i = label i).

| name | support graph | scale | spectrum |
|------|---------------|-------|----------|
| M    | G2p (single candle, k=2) | 2 | (-2)^2, 2^3 |
| M1   | G3_plus_edge | 3 | (-3)^3, 3^3 |
| M2   | G4_plus_edge | 2*sqrt2 | (-2 sqrt2)^4, (2 sqrt2)^4 |
"""
from typing import Dict, List, Tuple

from twoeig.matrices.exact import SQRT2, ExactMatrix, FloatMatrix, QSqrt2
from twoeig.utils.errors import InvalidParameterError

_R = SQRT2
_N = -SQRT2

_M_ROWS = [
    [0, _R, _R, 0, 0],
    [_R, 0, 0, -1, 1],
    [_R, 0, 0, 1, -1],
    [0, -1, 1, 1, 1],
    [0, 1, -1, 1, 1],
]

_M1_ROWS = [
    [-1, 2, 2, 0, 0, 0],
    [2, 0, 1, _R, _N, 0],
    [2, 1, 0, _N, _R, 0],
    [0, _R, _N, 1, 0, 2],
    [0, _N, _R, 0, 1, 2],
    [0, 0, 0, 2, 2, -1],
]

_M2_ROWS = [
    [2, _R, _R, 0, 0, 0, 0, 0],
    [_R, -2, 0, -1, 1, 0, 0, 0],
    [_R, 0, -2, 1, -1, 0, 0, 0],
    [0, -1, 1, 0, -2, 1, 1, 0],
    [0, 1, -1, -2, 0, 1, 1, 0],
    [0, 0, 0, 1, 1, 2, 0, _N],
    [0, 0, 0, 1, 1, 0, 2, _R],
    [0, 0, 0, 0, 0, _N, _R, -2],
]

# name -> (rows, support graph name, scale)
NAMED_MATRIX_TABLE: Dict[str, Tuple[List[list], str, QSqrt2]] = {
    "M": (_M_ROWS, "G2p", QSqrt2(2)),
    "M1": (_M1_ROWS, "G3_plus_edge", QSqrt2(3)),
    "M2": (_M2_ROWS, "G4_plus_edge", QSqrt2(0, 2)),
}


def _lookup(name: str) -> Tuple[List[list], str, QSqrt2]:
    if name not in NAMED_MATRIX_TABLE:
        raise InvalidParameterError(
            f"unknown matrix name '{name}'; expected one of {sorted(NAMED_MATRIX_TABLE)}"
        )
    return NAMED_MATRIX_TABLE[name]


def named_matrix_exact(name: str) -> ExactMatrix:
    return ExactMatrix.from_rows(_lookup(name)[0])


def named_matrix(name: str) -> FloatMatrix:
    """Float image of a printed matrix; sqrt 2 entries are correctly rounded."""
    return named_matrix_exact(name).to_float()


def named_matrix_graph_name(name: str) -> str:
    return _lookup(name)[1]


def named_matrix_scale(name: str) -> QSqrt2:
    return _lookup(name)[2]
