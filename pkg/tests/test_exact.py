import random
from fractions import Fraction

import numpy as np
import pytest

from twoeig.matrices.exact import (
    ONE,
    SQRT2,
    ZERO,
    ExactMatrix,
    FloatMatrix,
    QSqrt2,
    as_array,
    exact_rank,
)
from twoeig.utils.errors import InvalidParameterError


def test_field_arithmetic():
    assert SQRT2 * SQRT2 == 2
    assert (ONE + SQRT2) * (SQRT2 - 1) == 1
    assert (ONE + SQRT2).inverse() == SQRT2 - 1
    assert QSqrt2(3, 1) / QSqrt2(3, 1) == ONE
    assert QSqrt2(Fraction(1, 2)) * 4 == 2
    assert -SQRT2 + SQRT2 == ZERO
    assert 1 - SQRT2 == QSqrt2(1, -1)
    assert float(QSqrt2(1, 1)) == pytest.approx(1 + 2 ** 0.5)


def _random_element(rng: random.Random) -> QSqrt2:
    return QSqrt2(
        Fraction(rng.randint(-40, 40), rng.randint(1, 12)),
        Fraction(rng.randint(-40, 40), rng.randint(1, 12)),
    )


@pytest.mark.parametrize("seed", range(6))
def test_arithmetic_agrees_with_floats(seed):
    rng = random.Random(seed)
    for _ in range(200):
        x, y = _random_element(rng), _random_element(rng)
        fx, fy = float(x), float(y)
        assert float(x + y) == pytest.approx(fx + fy, rel=1e-12, abs=1e-10)
        assert float(x - y) == pytest.approx(fx - fy, rel=1e-12, abs=1e-10)
        assert float(x * y) == pytest.approx(fx * fy, rel=1e-12, abs=1e-10)
        if abs(fy) > 0.5:
            assert float(x / y) == pytest.approx(fx / fy, rel=1e-12, abs=1e-10)


def test_zero_has_no_inverse():
    with pytest.raises(ZeroDivisionError):
        ZERO.inverse()


def test_only_rationals_embed_exactly():
    with pytest.raises(InvalidParameterError):
        QSqrt2.of(0.5)


def test_pairs():
    x = QSqrt2(Fraction(-2, 3), Fraction(5))
    assert x.to_pair() == ["-2/3", "5"]
    assert QSqrt2.from_pair(x.to_pair()) == x
    with pytest.raises(InvalidParameterError):
        QSqrt2.from_pair(["1"])
    with pytest.raises(InvalidParameterError):
        QSqrt2.from_pair(["1/0", "0"])


def test_exact_matrix_symmetry_required():
    with pytest.raises(InvalidParameterError):
        ExactMatrix.from_rows([[0, 1], [2, 0]])
    with pytest.raises(InvalidParameterError):
        ExactMatrix.from_rows([[0, 1]])


def test_exact_matrix_square_and_identity():
    x = ExactMatrix.from_rows([[0, SQRT2], [SQRT2, 0]])
    assert x.square().is_scalar_identity(2)
    assert not x.square().is_scalar_identity(1)
    assert x.scaled(SQRT2).square().is_scalar_identity(4)
    assert ExactMatrix.from_pairs(x.to_pairs()) == x


def test_relabeling_agrees_between_carriers():
    x = ExactMatrix.from_rows([[1, 2, 0], [2, 0, SQRT2], [0, SQRT2, -1]])
    phi = [2, 0, 1]
    exact = x.relabeled(phi)
    assert exact[phi[0], phi[1]] == x[0, 1]
    assert np.array_equal(exact.to_float().values, x.to_float().relabeled(phi).values)


def test_float_matrix_checks():
    with pytest.raises(InvalidParameterError):
        FloatMatrix.of([[0.0, 1.0], [1.0 + 1e-15, 0.0]])
    with pytest.raises(InvalidParameterError):
        FloatMatrix.of([1.0, 2.0])
    m = FloatMatrix.symmetrized([[0.0, 1.0], [3.0, 0.0]])
    assert m.to_lists() == [[0.0, 2.0], [2.0, 0.0]]
    with pytest.raises(ValueError):
        m.values[0, 0] = 5.0


def test_as_array_accepts_every_carrier():
    rows = [[1, 0], [0, 1]]
    expected = np.eye(2)
    assert np.array_equal(as_array(ExactMatrix.from_rows(rows)), expected)
    assert np.array_equal(as_array(FloatMatrix.of(rows)), expected)
    assert np.array_equal(as_array(rows), expected)


def test_exact_rank():
    assert exact_rank([]) == 0
    assert exact_rank([{0: ONE, 1: ONE}, {0: QSqrt2(2), 1: QSqrt2(2)}]) == 1
    # second row is sqrt2 times the first
    assert exact_rank([{0: SQRT2, 1: ONE}, {0: QSqrt2(2), 1: SQRT2}]) == 1
    assert exact_rank([{0: ONE}, {1: SQRT2}, {0: ONE, 1: ONE, 2: ONE}]) == 3
    assert exact_rank([{0: ZERO}]) == 0
