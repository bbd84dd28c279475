"""Small dense complex linear algebra.

Matrices are plain row-major lists of rows.  Sizes here stay in the tens,
so everything is written directly on Python ``complex`` values.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Sequence

from .errors import LengthMismatch, NotSquare, Singular
from .model import DEFAULT_TOL

Matrix = List[List[complex]]


def as_matrix(rows: Sequence[Sequence[complex]]) -> Matrix:
    m = [[complex(x) for x in row] for row in rows]
    if m and any(len(row) != len(m[0]) for row in m):
        raise LengthMismatch("ragged matrix")
    return m


def identity(n: int) -> Matrix:
    return [[1 + 0j if i == j else 0j for j in range(n)] for i in range(n)]


def matmul(a: Sequence[Sequence[complex]], b: Sequence[Sequence[complex]]) -> Matrix:
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def matvec(a: Sequence[Sequence[complex]], x: Sequence[complex]) -> List[complex]:
    return [sum(r * v for r, v in zip(row, x)) for row in a]


def norm_inf(a: Sequence[Sequence[complex]]) -> float:
    return max((sum(abs(x) for x in row) for row in a), default=0.0)


def _check_square(m: Matrix) -> int:
    n = len(m)
    if n == 0 or any(len(row) != n for row in m):
        raise NotSquare(f"matrix is {n}x{len(m[0]) if m else 0}, not square")
    return n


@dataclass
class LUFactors:
    """``P A = L U`` packed in one array; ``perm[k]`` is the source row."""

    lu: Matrix
    perm: List[int]
    sign: int
    singular: bool

    @property
    def n(self) -> int:
        return len(self.lu)

    def det(self) -> complex:
        if self.singular:
            return 0j
        d = complex(self.sign)
        for k in range(self.n):
            d *= self.lu[k][k]
        return d

    def solve(self, b: Sequence[complex]) -> List[complex]:
        if self.singular:
            raise Singular("matrix is singular to working tolerance")
        n = self.n
        if len(b) != n:
            raise LengthMismatch(f"right-hand side has length {len(b)}, expected {n}")
        lu = self.lu
        y = [complex(b[p]) for p in self.perm]
        for i in range(n):
            row = lu[i]
            acc = y[i]
            for j in range(i):
                acc -= row[j] * y[j]
            y[i] = acc
        for i in range(n - 1, -1, -1):
            row = lu[i]
            acc = y[i]
            for j in range(i + 1, n):
                acc -= row[j] * y[j]
            y[i] = acc / row[i]
        return y

    def solve_transpose(self, b: Sequence[complex]) -> List[complex]:
        """Solve ``A^T x = b`` (plain transpose, no conjugation)."""
        if self.singular:
            raise Singular("matrix is singular to working tolerance")
        n = self.n
        lu = self.lu
        # A^T = U^T L^T P, so solve U^T z = b, L^T w = z, then x = P^T w.
        z = [complex(v) for v in b]
        for i in range(n):
            acc = z[i]
            for j in range(i):
                acc -= lu[j][i] * z[j]
            z[i] = acc / lu[i][i]
        for i in range(n - 1, -1, -1):
            acc = z[i]
            for j in range(i + 1, n):
                acc -= lu[j][i] * z[j]
            z[i] = acc
        x = [0j] * n
        for k, p in enumerate(self.perm):
            x[p] = z[k]
        return x


def lu_factor(m: Sequence[Sequence[complex]], zero_tol: float = DEFAULT_TOL.zero_tol) -> LUFactors:
    """Gaussian elimination with scaled partial pivoting.

    The pivot row maximises ``|a_ik| / rowscale_i`` where ``rowscale_i``
    is the largest entry of input row ``i``.  A pivot is treated as zero
    when ``|a_kk| <= zero_tol * rowscale_k``; factorisation stops there and
    the result is flagged singular.  ``zero_tol=0`` only stops on exact
    zeros.
    """
    a = as_matrix(m)
    n = _check_square(a)
    row_scale = [max(abs(x) for x in row) for row in a]
    perm = list(range(n))
    sign = 1
    for k in range(n):
        best, p = -1.0, k
        for i in range(k, n):
            s = row_scale[i]
            r = abs(a[i][k]) / s if s > 0 else 0.0
            if r > best:
                best, p = r, i
        if a[p][k] == 0 or abs(a[p][k]) <= zero_tol * row_scale[p]:
            return LUFactors(a, perm, sign, True)
        if p != k:
            a[k], a[p] = a[p], a[k]
            row_scale[k], row_scale[p] = row_scale[p], row_scale[k]
            perm[k], perm[p] = perm[p], perm[k]
            sign = -sign
        pivot_row = a[k]
        piv = pivot_row[k]
        for i in range(k + 1, n):
            row = a[i]
            if row[k] == 0:
                continue
            f = row[k] / piv
            row[k] = f
            for j in range(k + 1, n):
                row[j] -= f * pivot_row[j]
    return LUFactors(a, perm, sign, False)


def det(m: Sequence[Sequence[complex]], zero_tol: float = DEFAULT_TOL.zero_tol) -> complex:
    return lu_factor(m, zero_tol).det()


def solve(
    m: Sequence[Sequence[complex]],
    b: Sequence[complex],
    zero_tol: float = DEFAULT_TOL.zero_tol,
) -> List[complex]:
    factors = lu_factor(m, zero_tol)
    if len(b) != factors.n:
        raise LengthMismatch(f"right-hand side has length {len(b)}, expected {factors.n}")
    return factors.solve(b)


def _inverse_norm_inf(f: LUFactors) -> float:
    """Hager/Higham estimate of ``||A^-1||_inf`` from LU factors.

    ``||A^-1||_inf = ||B||_1`` with ``B = A^-T``; the 1-norm power method
    needs ``B x`` (a transposed solve) and ``B^H y`` (a conjugated solve).
    """
    n = f.n

    def apply_b(x):
        return f.solve_transpose(x)

    def apply_bh(y):
        return [v.conjugate() for v in f.solve([w.conjugate() for w in y])]

    x = [complex(1.0 / n)] * n
    est = 0.0
    last_j = -1
    for _ in range(5):
        y = apply_b(x)
        new_est = sum(abs(v) for v in y)
        if new_est <= est and last_j >= 0:
            break
        est = new_est
        xi = [v / abs(v) if v != 0 else 1 + 0j for v in y]
        z = apply_bh(xi)
        zmax = max(abs(v) for v in z)
        j = max(range(n), key=lambda i: abs(z[i]))
        ztx = sum((zv.conjugate() * xv) for zv, xv in zip(z, x)).real
        if zmax <= ztx or j == last_j:
            break
        last_j = j
        x = [0j] * n
        x[j] = 1 + 0j
    # Alternative test vector guards against the power method stalling.
    if n > 1:
        b = [complex((-1) ** i * (1 + i / (n - 1))) for i in range(n)]
        alt = 2 * sum(abs(v) for v in apply_b(b)) / (3 * n)
        est = max(est, alt)
    return est


def cond_estimate(
    m: Sequence[Sequence[complex]],
    zero_tol: float = DEFAULT_TOL.zero_tol,
    factors: LUFactors | None = None,
) -> float:
    """Estimate of ``||M||_inf * ||M^-1||_inf``; ``inf`` when singular.

    Pass ``factors`` to reuse an existing factorisation of ``m``.
    """
    if factors is None:
        factors = lu_factor(m, zero_tol)
    if factors.singular:
        return float("inf")
    return norm_inf(m) * _inverse_norm_inf(factors)
