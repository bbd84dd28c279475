"""Basis sequences of the solution space and their value matrices.

For a root ``alpha`` of multiplicity ``m`` the sequences
``h -> h (h-1) ... (h-j+1) * alpha**(h-j)`` for ``j < m`` solve the
recurrence; over all roots they span the ``n``-dimensional solution space.
"""

from __future__ import annotations

import math
from typing import List, Optional, Sequence

from .errors import PreconditionViolated, RangeOverflow, ZeroRoot
from .linalg import Matrix
from .model import RootSpectrum

# exp(700) is close to the largest finite double.
LOG_RANGE = 700.0


def cpow(alpha: complex, k: int) -> complex:
    """``alpha**k`` for ``k >= 0`` by binary exponentiation."""
    result = 1 + 0j
    base = complex(alpha)
    while k:
        if k & 1:
            result *= base
        k >>= 1
        if k:
            base *= base
    return result


def falling_factorial(h: int, j: int) -> float:
    out = 1.0
    for t in range(j):
        out *= h - t
    return out


def basis_value(alpha: complex, j: int, h: int) -> complex:
    """Value at index ``h`` of the ``j``-th basis sequence for root ``alpha``.

    Zero for ``h < j``.  Raises :class:`RangeOverflow` when
    ``|alpha|**(h-j)`` would leave double range.
    """
    if alpha == 0:
        raise ZeroRoot("basis sequences need a nonzero root")
    if h < j:
        return 0j
    e = h - j
    if e and e * abs(math.log(abs(alpha))) > LOG_RANGE:
        raise RangeOverflow(
            f"|{alpha}|**{e} is outside double range; use a fast evaluator"
        )
    return falling_factorial(h, j) * cpow(alpha, e)


def basis_row(spectrum: RootSpectrum, h: int) -> List[complex]:
    return [basis_value(alpha, j, h) for alpha, j in spectrum.columns()]


def basis_matrix(spectrum: RootSpectrum, indices: Sequence[int]) -> Matrix:
    """Rows follow ``indices``; columns follow the canonical basis order."""
    return [basis_row(spectrum, h) for h in indices]


def vandermonde_det(spectrum: RootSpectrum, indices: Optional[Sequence[int]] = None) -> complex:
    """``prod_{i<j} (alpha_j - alpha_i)`` for a simple spectrum on ``0..n-1``."""
    n = spectrum.order
    if not spectrum.is_simple:
        raise PreconditionViolated("Vandermonde product needs simple roots")
    if indices is not None and list(indices) != list(range(n)):
        raise PreconditionViolated("Vandermonde product needs indices 0..n-1")
    a = spectrum.values
    out = 1 + 0j
    for i in range(n):
        for j in range(i + 1, n):
            out *= a[j] - a[i]
    return out
