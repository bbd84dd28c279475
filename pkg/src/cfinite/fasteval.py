"""Logarithmic-time and exact evaluation, and recurrence inference.

Both evaluators work over whatever scalars the recurrence carries.  With
``int`` inputs nothing but ring operations (``+``, ``-``, ``*``) is ever
applied, so every term is an ``int``; with ``Fraction`` inputs results are
exact rationals.  An optional odd prime modulus keeps the arithmetic at
machine-word size.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Sequence

from .errors import InvalidInput, NoRecurrenceFound
from .linalg import cond_estimate, lu_factor
from .model import DEFAULT_TOL, RecurrenceSpec, Scalar, Tolerances, all_exact, validate_spec


def _is_prime(m: int) -> bool:
    if m < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for p in small:
        if m % p == 0:
            return m == p
    d, r = m - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    # These bases are deterministic for m < 3.3e24.
    for a in small:
        x = pow(a, d, m)
        if x in (1, m - 1):
            continue
        for _ in range(r - 1):
            x = x * x % m
            if x == m - 1:
                break
        else:
            return False
    return True


def check_modulus(modulus: int | None) -> None:
    if modulus is None:
        return
    if not isinstance(modulus, int) or modulus < 3 or modulus % 2 == 0 or not _is_prime(modulus):
        raise InvalidInput(f"modulus must be an odd prime, got {modulus!r}")


def _residue(x, modulus: int):
    if isinstance(x, Fraction):
        return x.numerator * pow(x.denominator, -1, modulus) % modulus
    if isinstance(x, int):
        return x % modulus
    raise InvalidInput(f"modular arithmetic needs exact inputs, got {x!r}")


def _prepare(spec: RecurrenceSpec, modulus: int | None):
    check_modulus(modulus)
    coeffs, init = list(spec.coefficients), list(spec.initial)
    if modulus is not None:
        coeffs = [_residue(s, modulus) for s in coeffs]
        init = [_residue(u, modulus) for u in init]
    return coeffs, init


def _mat_mul(a, b, modulus):
    bt = list(zip(*b))
    out = []
    for row in a:
        if modulus is None:
            out.append([sum(x * y for x, y in zip(row, col)) for col in bt])
        else:
            out.append([sum(x * y for x, y in zip(row, col)) % modulus for col in bt])
    return out


def companion_matrix(coefficients: Sequence[Scalar]) -> List[List[Scalar]]:
    """Shift matrix mapping ``(u[h], ..., u[h+n-1])`` to ``(u[h+1], ..., u[h+n])``."""
    n = len(coefficients)
    m = [[0] * n for _ in range(n)]
    for i in range(n - 1):
        m[i][i + 1] = 1
    m[n - 1] = list(reversed(coefficients))
    return m


def eval_companion_power(spec: RecurrenceSpec, h: int, modulus: int | None = None) -> Scalar:
    """``u[h]`` from the ``h``-th power of the companion matrix."""
    if h < 0:
        raise ValueError("index must be nonnegative")
    coeffs, init = _prepare(spec, modulus)
    n = len(coeffs)
    if h < n:
        return init[h]
    base = companion_matrix(coeffs)
    result = None
    k = h
    while k:
        if k & 1:
            result = base if result is None else _mat_mul(result, base, modulus)
        k >>= 1
        if k:
            base = _mat_mul(base, base, modulus)
    value = sum(x * u for x, u in zip(result[0], init))
    return value % modulus if modulus is not None else value


def _mul_mod_charpoly(a, b, coeffs, modulus):
    """Product of two residues modulo ``X^n - sum s_i X^(n-i)``.

    Residues are ascending coefficient lists of length ``n``.
    """
    n = len(coeffs)
    prod = [0] * (2 * n - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            prod[i + j] += x * y
    # X^n = s_1 X^(n-1) + ... + s_n, applied from the top degree down.
    for d in range(2 * n - 2, n - 1, -1):
        top = prod[d]
        if top == 0:
            continue
        if modulus is not None:
            top %= modulus
        prod[d] = 0
        for i, s in enumerate(coeffs, start=1):
            prod[d - i] += top * s
    out = prod[:n]
    if modulus is not None:
        out = [x % modulus for x in out]
    return out


def x_power_mod(coeffs: Sequence[Scalar], h: int, modulus: int | None = None) -> List[Scalar]:
    """Coefficients of ``X^h`` reduced modulo the characteristic polynomial."""
    n = len(coeffs)
    if h < n:
        r = [0] * n
        r[h] = 1
        return r
    result = [1] + [0] * (n - 1)
    if n == 1:
        base = [coeffs[0]]
    else:
        base = [0, 1] + [0] * (n - 2)
    k = h
    while k:
        if k & 1:
            result = _mul_mod_charpoly(result, base, coeffs, modulus)
        k >>= 1
        if k:
            base = _mul_mod_charpoly(base, base, coeffs, modulus)
    return result


def eval_kitamasa(spec: RecurrenceSpec, h: int, modulus: int | None = None) -> Scalar:
    """``u[h] = sum_k r_k u[k]`` where ``X^h = sum_k r_k X^k`` modulo the characteristic polynomial."""
    if h < 0:
        raise ValueError("index must be nonnegative")
    coeffs, init = _prepare(spec, modulus)
    if h < len(coeffs):
        return init[h]
    r = x_power_mod(coeffs, h, modulus)
    value = sum(x * u for x, u in zip(r, init))
    return value % modulus if modulus is not None else value


def _solve_exact(rows: List[List[Fraction]], rhs: List[Fraction]):
    """Fraction Gaussian elimination; ``None`` if singular."""
    n = len(rows)
    a = [list(r) + [b] for r, b in zip(rows, rhs)]
    for k in range(n):
        p = next((i for i in range(k, n) if a[i][k] != 0), None)
        if p is None:
            return None
        a[k], a[p] = a[p], a[k]
        for i in range(n):
            if i != k and a[i][k] != 0:
                f = a[i][k] / a[k][k]
                a[i] = [x - f * y for x, y in zip(a[i], a[k])]
    return [a[i][n] / a[i][i] for i in range(n)]


def _normalise(x: Fraction):
    return x.numerator if x.denominator == 1 else x


def _fits(terms, coeffs, exact: bool) -> bool:
    n = len(coeffs)
    for h in range(n, len(terms)):
        pred = sum(coeffs[i - 1] * terms[h - i] for i in range(1, n + 1))
        if exact:
            if pred != terms[h]:
                return False
        elif abs(complex(pred) - complex(terms[h])) > 1e-8 * max(1.0, abs(complex(terms[h]))):
            return False
    return True


def infer_recurrence(
    terms: Sequence[Scalar], max_order: int, tol: Tolerances = DEFAULT_TOL
) -> RecurrenceSpec:
    """Smallest-order recurrence reproducing every given term.

    For each order ``n`` the Hankel system
    ``sum_i s_i t[k+n-i] = t[k+n]`` (``k = 0..n-1``) is solved; exact
    terms are solved in rationals, others in floating point with a
    condition-number guard.
    """
    terms = list(terms)
    if max_order < 1:
        raise InvalidInput("max_order must be positive")
    if len(terms) < 2 * max_order:
        raise InvalidInput(
            f"need at least {2 * max_order} terms for order up to {max_order}, got {len(terms)}"
        )
    exact = all_exact(terms)
    for n in range(1, max_order + 1):
        rows = [[terms[k + n - i] for i in range(1, n + 1)] for k in range(n)]
        rhs = [terms[k + n] for k in range(n)]
        if exact:
            sol = _solve_exact([[Fraction(x) for x in r] for r in rows], [Fraction(x) for x in rhs])
            if sol is None:
                continue
            coeffs = [_normalise(x) for x in sol]
        else:
            factors = lu_factor(rows, tol.zero_tol)
            if factors.singular or cond_estimate(rows, factors=factors) > tol.cond_max:
                continue
            coeffs = [complex(x) for x in factors.solve(rhs)]
            coeffs = [c.real if c.imag == 0 else c for c in coeffs]
        if abs(complex(coeffs[-1])) <= tol.zero_tol:
            continue
        if not _fits(terms, coeffs, exact):
            continue
        return validate_spec(RecurrenceSpec(tuple(coeffs), tuple(terms[:n])), tol)
    raise NoRecurrenceFound(f"no recurrence of order <= {max_order} fits the terms")

