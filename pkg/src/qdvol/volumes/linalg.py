"""
Exact linear solves over the rationals on numpy object arrays.
"""
import logging
import math
from fractions import Fraction
from typing import List, Sequence

import numpy as np

from qdvol.arithmetic.exact import Rational, as_exact
from qdvol.utils.exceptions import DomainError, InconsistencyError

logger = logging.getLogger(__name__)


def fraction_matrix(rows: Sequence[Sequence[Rational]]) -> np.ndarray:
    matrix = np.array([[as_exact(value) for value in row] for row in rows], dtype=object)
    if matrix.ndim != 2:
        raise DomainError("a matrix needs rows of equal length")
    return matrix


def integer_rows(matrix: np.ndarray, rhs: Sequence[Fraction]) -> np.ndarray:
    """
    The augmented system [matrix | rhs] with every row scaled by the lcm of its
    denominators, so that all entries are Python integers.
    """
    size = matrix.shape[0]
    augmented = np.empty((size, size + 1), dtype=object)
    for i in range(size):
        row = list(matrix[i, :]) + [rhs[i]]
        scale = math.lcm(*(value.denominator for value in row))
        augmented[i, :] = [value.numerator * (scale // value.denominator) for value in row]
    return augmented


def solve_exact(matrix: Sequence[Sequence[Rational]], rhs: Sequence[Rational]) -> List[Fraction]:
    """
    Solve matrix . x = rhs by fraction-free (Bareiss) elimination.

    Denominators are cleared row by row first; every division during the
    elimination is then exact over the integers, and fractions only appear in
    the final back substitution.

    Raises InconsistencyError when the matrix is singular.
    """
    a = fraction_matrix(matrix)
    size = a.shape[0]
    if a.shape != (size, size) or len(rhs) != size:
        raise DomainError(f"expected a square system, got {a.shape} and {len(rhs)} values")

    m = integer_rows(a, [as_exact(value) for value in rhs])
    previous = 1
    for k in range(size):
        for r in range(k, size):
            if m[r, k] != 0:
                if r != k:
                    m[[k, r]] = m[[r, k]]
                break
        else:
            raise InconsistencyError(f"singular {size}x{size} system (no pivot in column {k})")

        pivot = m[k, k]
        lower = m[k + 1 :, k + 1 :] * pivot - np.outer(m[k + 1 :, k], m[k, k + 1 :])
        m[k + 1 :, k + 1 :] = lower // previous
        m[k + 1 :, k] = 0
        previous = pivot

    solution = [Fraction(0)] * size
    for i in range(size - 1, -1, -1):
        total = Fraction(m[i, size])
        for j in range(i + 1, size):
            total -= m[i, j] * solution[j]
        solution[i] = total / m[i, i]
    logger.debug("solved a %dx%d exact system", size, size)
    return solution


def residual_is_zero(matrix, solution, rhs) -> bool:
    a = fraction_matrix(matrix)
    x = np.array([as_exact(value) for value in solution], dtype=object)
    b = np.array([as_exact(value) for value in rhs], dtype=object)
    return bool(np.all(a.dot(x) == b))
