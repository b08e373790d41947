"""
Exact arithmetic in Q(sqrt 2) and the two matrix carriers used by certificates.

QSqrt2 is a + b*sqrt(2) with Fraction components. Since sqrt(2) is irrational,
a + b*sqrt(2) == 0 iff a == b == 0, and the norm a^2 - 2b^2 of a nonzero
element is nonzero, so the ring is a field and Gaussian elimination is exact.
"""
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Sequence, Tuple, Union

import numpy as np

from twoeig.utils.errors import InvalidParameterError

Rational = Union[int, Fraction]
_SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class QSqrt2:
    a: Fraction = Fraction(0)
    b: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))

    @classmethod
    def of(cls, value: Union["QSqrt2", Rational]) -> "QSqrt2":
        if isinstance(value, QSqrt2):
            return value
        if isinstance(value, (int, Fraction)):
            return cls(Fraction(value), Fraction(0))
        raise InvalidParameterError(f"cannot embed {value!r} in Q(sqrt 2) exactly")

    @classmethod
    def from_pair(cls, pair: Sequence[str]) -> "QSqrt2":
        """Inverse of to_pair: ["p/q", "r/s"] -> p/q + (r/s) sqrt 2."""
        if len(pair) != 2:
            raise InvalidParameterError(f"exact entry must be an [a, b] pair, got {pair!r}")
        try:
            return cls(Fraction(str(pair[0])), Fraction(str(pair[1])))
        except (ValueError, ZeroDivisionError) as e:
            raise InvalidParameterError(f"bad rational in exact entry {pair!r}: {e}") from e

    def to_pair(self) -> List[str]:
        return [str(self.a), str(self.b)]

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __add__(self, other):
        o = QSqrt2.of(other)
        return QSqrt2(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __sub__(self, other):
        o = QSqrt2.of(other)
        return QSqrt2(self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        return QSqrt2.of(other) - self

    def __neg__(self):
        return QSqrt2(-self.a, -self.b)

    def __mul__(self, other):
        o = QSqrt2.of(other)
        return QSqrt2(self.a * o.a + 2 * self.b * o.b, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def inverse(self) -> "QSqrt2":
        norm = self.a * self.a - 2 * self.b * self.b
        if norm == 0:
            raise ZeroDivisionError("inverse of zero in Q(sqrt 2)")
        return QSqrt2(self.a / norm, -self.b / norm)

    def __truediv__(self, other):
        return self * QSqrt2.of(other).inverse()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QSqrt2.of(other)
        if not isinstance(other, QSqrt2):
            return NotImplemented
        return self.a == other.a and self.b == other.b

    def __hash__(self):
        return hash((self.a, self.b))

    def __float__(self) -> float:
        return float(self.a) + float(self.b) * _SQRT2

    def __repr__(self) -> str:
        if self.b == 0:
            return str(self.a)
        if self.a == 0:
            return f"{self.b}*sqrt2"
        return f"({self.a} + {self.b}*sqrt2)"


SQRT2 = QSqrt2(Fraction(0), Fraction(1))
ZERO = QSqrt2()
ONE = QSqrt2(Fraction(1))


@dataclass(frozen=True)
class ExactMatrix:
    """Symmetric n x n matrix over Q(sqrt 2)."""
    n: int
    entries: Tuple[Tuple[QSqrt2, ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.n or any(len(row) != self.n for row in self.entries):
            raise InvalidParameterError(f"ExactMatrix entries are not {self.n} x {self.n}")
        for i in range(self.n):
            for j in range(i + 1, self.n):
                if self.entries[i][j] != self.entries[j][i]:
                    raise InvalidParameterError(f"ExactMatrix not symmetric at ({i}, {j})")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Union[QSqrt2, Rational]]]) -> "ExactMatrix":
        entries = tuple(tuple(QSqrt2.of(x) for x in row) for row in rows)
        return cls(len(entries), entries)

    @classmethod
    def zeros(cls, n: int) -> "ExactMatrix":
        return cls(n, tuple(tuple(ZERO for _ in range(n)) for _ in range(n)))

    @classmethod
    def from_pairs(cls, rows: Sequence[Sequence[Sequence[str]]]) -> "ExactMatrix":
        return cls.from_rows([[QSqrt2.from_pair(p) for p in row] for row in rows])

    def to_pairs(self) -> List[List[List[str]]]:
        return [[x.to_pair() for x in row] for row in self.entries]

    def __getitem__(self, index: Tuple[int, int]) -> QSqrt2:
        i, j = index
        return self.entries[i][j]

    def matmul(self, other: "ExactMatrix") -> List[List[QSqrt2]]:
        """Plain product; the result of two symmetric matrices need not be symmetric."""
        if other.n != self.n:
            raise InvalidParameterError(f"dimension mismatch {self.n} vs {other.n}")
        columns = [[other.entries[k][j] for k in range(self.n)] for j in range(self.n)]
        product = []
        for row in self.entries:
            out = []
            for col in columns:
                total = ZERO
                for x, y in zip(row, col):
                    if x.is_zero() or y.is_zero():
                        continue
                    total = total + x * y
                out.append(total)
            product.append(out)
        return product

    def square(self) -> "ExactMatrix":
        # X^2 of a symmetric X is symmetric
        return ExactMatrix.from_rows(self.matmul(self))

    def scaled(self, factor: Union[QSqrt2, Rational]) -> "ExactMatrix":
        return ExactMatrix.from_rows([[x * factor for x in row] for row in self.entries])

    def is_scalar_identity(self, c: Union[QSqrt2, Rational]) -> bool:
        c = QSqrt2.of(c)
        return all(
            self.entries[i][j] == (c if i == j else ZERO)
            for i in range(self.n) for j in range(self.n)
        )

    def relabeled(self, phi: Sequence[int]) -> "ExactMatrix":
        """B[phi[i]][phi[j]] = A[i][j]."""
        rows = [[ZERO] * self.n for _ in range(self.n)]
        for i in range(self.n):
            for j in range(self.n):
                rows[phi[i]][phi[j]] = self.entries[i][j]
        return ExactMatrix.from_rows(rows)

    def to_float(self) -> "FloatMatrix":
        return FloatMatrix.of(np.array([[float(x) for x in row] for row in self.entries]))


@dataclass(frozen=True, eq=False)
class FloatMatrix:
    """Symmetric n x n float64 matrix; symmetry is required to the bit."""
    n: int
    values: np.ndarray

    def __post_init__(self):
        if self.values.shape != (self.n, self.n):
            raise InvalidParameterError(f"FloatMatrix values are not {self.n} x {self.n}")
        if not np.array_equal(self.values, self.values.T):
            raise InvalidParameterError("FloatMatrix is not exactly symmetric")
        self.values.setflags(write=False)

    @classmethod
    def of(cls, values) -> "FloatMatrix":
        array = np.array(values, dtype=float)
        if array.ndim != 2 or array.shape[0] != array.shape[1]:
            raise InvalidParameterError(f"expected a square matrix, got shape {array.shape}")
        return cls(array.shape[0], array)

    @classmethod
    def symmetrized(cls, values) -> "FloatMatrix":
        array = np.array(values, dtype=float)
        return cls.of((array + array.T) / 2.0)

    def relabeled(self, phi: Sequence[int]) -> "FloatMatrix":
        inverse = np.argsort(np.asarray(phi))
        return FloatMatrix.of(self.values[np.ix_(inverse, inverse)])

    def to_lists(self) -> List[List[float]]:
        return self.values.tolist()


Matrix = Union[ExactMatrix, FloatMatrix]


def as_array(m: Union[Matrix, np.ndarray, Sequence[Sequence[float]]]) -> np.ndarray:
    if isinstance(m, ExactMatrix):
        return m.to_float().values
    if isinstance(m, FloatMatrix):
        return m.values
    return np.asarray(m, dtype=float)


def exact_rank(rows: Iterable[Dict[int, QSqrt2]]) -> int:
    """
    Rank of a sparse matrix over Q(sqrt 2), each row given as {column: value}
    with nonzero values. Gaussian elimination, pivoting on the lowest column.
    """
    pivots: Dict[int, Dict[int, QSqrt2]] = {}
    for row in rows:
        row = {c: v for c, v in row.items() if not v.is_zero()}
        while row:
            col = min(row)
            pivot_row = pivots.get(col)
            if pivot_row is None:
                lead_inv = row[col].inverse()
                pivots[col] = {c: v * lead_inv for c, v in row.items()}
                break
            factor = row[col]
            for c, v in pivot_row.items():
                updated = row.get(c, ZERO) - factor * v
                if updated.is_zero():
                    row.pop(c, None)
                else:
                    row[c] = updated
    return len(pivots)
