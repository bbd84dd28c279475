"""Characteristic polynomial, its roots, and the way back to coefficients.

Roots are found by Aberth-Ehrlich simultaneous iteration.  Iterates that
converge onto a multiple root stall at mutual distances of order
``eps**(1/k)``, so multiplicities are recovered afterwards by clustering
the converged iterates.
"""

from __future__ import annotations

import cmath
import math
import sys
from dataclasses import dataclass
from typing import List, Sequence, Tuple

from .errors import InvalidInput, NoConvergence
from .model import DEFAULT_TOL, RecurrenceSpec, RootSpectrum, Scalar, Tolerances, validate_spectrum

EPS = sys.float_info.epsilon

# Safety factor on the rounding-error bound used to accept a multiple root.
_MULTIPLE_ROOT_SLACK = 10.0
# Candidate clusters wider than this (relative to max(1, |centroid|)) are
# never tested as a multiple root.
_MULTIPLE_ROOT_SPREAD = 0.1


@dataclass(frozen=True)
class Polynomial:
    """Coefficients in ascending degree."""

    coefficients: Tuple[Scalar, ...]

    def __post_init__(self):
        c = tuple(self.coefficients)
        if not c:
            raise InvalidInput("polynomial needs at least one coefficient")
        while len(c) > 1 and c[-1] == 0:
            c = c[:-1]
        object.__setattr__(self, "coefficients", c)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def derivative(self) -> "Polynomial":
        c = self.coefficients
        if len(c) == 1:
            return Polynomial((0,))
        return Polynomial(tuple(k * c[k] for k in range(1, len(c))))

    def reversed(self) -> "Polynomial":
        """``X**deg * p(1/X)``."""
        return Polynomial(tuple(reversed(self.coefficients)))


def poly_mul(a: Sequence, b: Sequence) -> list:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def char_poly(spec: RecurrenceSpec) -> Polynomial:
    """``X^n - s_1 X^(n-1) - ... - s_n`` (exact scalars are preserved)."""
    n = spec.order
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    for i, s in enumerate(spec.coefficients, start=1):
        coeffs[n - i] = -s
    return Polynomial(tuple(coeffs))


def reciprocal_poly(spec: RecurrenceSpec) -> Polynomial:
    """``1 - s_1 x - ... - s_n x^n``, the generating-function denominator."""
    return Polynomial((1,) + tuple(-s for s in spec.coefficients))


def coeffs_from_spectrum(spectrum: RootSpectrum) -> List[complex]:
    """Expand ``prod (X - alpha_i)^n_i`` and read off ``s_1..s_n``."""
    p = [1 + 0j]
    for alpha, mult in spectrum.roots:
        for _ in range(mult):
            p = poly_mul(p, [-alpha, 1])
    n = len(p) - 1
    return [-p[n - i] for i in range(1, n + 1)]


def expand_reciprocal(spectrum: RootSpectrum) -> List[complex]:
    """Ascending coefficients of ``prod (1 - alpha_i x)^n_i``."""
    q = [1 + 0j]
    for alpha, mult in spectrum.roots:
        for _ in range(mult):
            q = poly_mul(q, [1, -alpha])
    return q


def _horner_with_bound(coeffs: Sequence[complex], z: complex):
    """Return ``p(z)``, ``p'(z)`` and a bound on the rounding error of ``p(z)``."""
    az = abs(z)
    p = 0j
    dp = 0j
    mag = 0.0
    for c in reversed(coeffs):
        dp = dp * z + p
        p = p * z + c
        mag = mag * az + abs(c)
    return p, dp, 4 * len(coeffs) * EPS * mag


def _initial_guesses(coeffs: Sequence[complex]) -> List[complex]:
    n = len(coeffs) - 1
    radius = max(abs(coeffs[k]) ** (1.0 / (n - k)) for k in range(n))
    radius = max(radius, EPS)
    return [radius * cmath.exp(1j * (2 * math.pi * k / n + 0.4)) for k in range(n)]


def aberth(coeffs: Sequence[complex], max_iter: int = DEFAULT_TOL.max_iter) -> List[complex]:
    """Simultaneous approximation of all roots of a monic polynomial.

    An iterate is frozen once ``|p(z)|`` drops to the rounding-error level
    or its correction becomes negligible.
    """
    n = len(coeffs) - 1
    if n == 1:
        return [-coeffs[0]]
    z = _initial_guesses(coeffs)
    done = [False] * n
    for _ in range(max_iter):
        for i in range(n):
            if done[i]:
                continue
            zi = z[i]
            p, dp, bound = _horner_with_bound(coeffs, zi)
            if abs(p) <= bound:
                done[i] = True
                continue
            repel = sum(1 / (zi - z[j]) for j in range(n) if j != i and z[j] != zi)
            if dp == 0:
                step = (abs(zi) + 1) * 1e-3 * cmath.exp(1j * (i + 1))
            else:
                ratio = p / dp
                denom = 1 - ratio * repel
                step = ratio / denom if denom != 0 else ratio
            z[i] = zi - step
            if abs(step) <= 2 * EPS * abs(z[i]):
                done[i] = True
        if all(done):
            return z
    raise NoConvergence(f"root iteration did not converge in {max_iter} sweeps")


def _derivatives(coeffs: Sequence[complex], order: int) -> List[List[complex]]:
    """``coeffs`` of ``p, p', ..., p^(order)`` each divided by ``j!``."""
    out = [list(coeffs)]
    for j in range(1, order + 1):
        prev = out[-1]
        out.append([prev[k] * k / j for k in range(1, len(prev))])
    return out


def _refine_multiple(coeffs: Sequence[complex], c: complex, mult: int) -> complex:
    """Newton on ``p^(mult-1)``, whose simple root sits at a ``mult``-fold root of ``p``."""
    d = _derivatives(coeffs, mult)[mult - 1]
    for _ in range(30):
        p, dp, _ = _horner_with_bound(d, c)
        if dp == 0:
            break
        step = p / dp
        c -= step
        if abs(step) <= 2 * EPS * max(abs(c), EPS):
            break
    return c


def _is_multiple_root(coeffs: Sequence[complex], c: complex, mult: int) -> bool:
    for dj in _derivatives(coeffs, mult - 2):
        value, _, bound = _horner_with_bound(dj, c)
        if abs(value) > _MULTIPLE_ROOT_SLACK * bound:
            return False
    return True


def _linkage(points: List[complex]):
    """Single-linkage dendrogram: nodes are ``(height, members, left, right)``."""
    nodes = [(0.0, [i], None, None) for i in range(len(points))]
    active = list(range(len(points)))
    while len(active) > 1:
        best = None
        for a in range(len(active)):
            for b in range(a + 1, len(active)):
                ma, mb = nodes[active[a]][1], nodes[active[b]][1]
                d = min(abs(points[i] - points[j]) for i in ma for j in mb)
                if best is None or d < best[0]:
                    best = (d, a, b)
        d, a, b = best
        left, right = active[a], active[b]
        nodes.append((d, nodes[left][1] + nodes[right][1], left, right))
        active = [x for k, x in enumerate(active) if k not in (a, b)] + [len(nodes) - 1]
    return nodes, active[0]


def cluster_roots(
    coeffs: Sequence[complex], iterates: List[complex], tol: Tolerances = DEFAULT_TOL
) -> List[Tuple[complex, int]]:
    """Group converged iterates into distinct roots with multiplicities.

    A dendrogram node becomes one root when its linkage height is within
    ``cluster_tol`` (relative), or when its refined centre passes the
    multiple-root test (all derivatives below order ``k - 1`` vanish to
    rounding accuracy).  Otherwise its children are examined.
    """
    scale = max(abs(z) for z in iterates)
    nodes, top = _linkage(iterates)
    out: List[Tuple[complex, int]] = []
    stack = [top]
    while stack:
        height, members, left, right = nodes[stack.pop()]
        k = len(members)
        centroid = sum(iterates[i] for i in members) / k
        if k == 1 or height <= tol.cluster_tol * scale:
            out.append((centroid, k))
            continue
        if height <= _MULTIPLE_ROOT_SPREAD * max(1.0, abs(centroid)):
            c = _refine_multiple(coeffs, centroid, k)
            if abs(c - centroid) <= height and _is_multiple_root(coeffs, c, k):
                out.append((c, k))
                continue
        stack.extend((right, left))
    return out


def _polish_simple(coeffs: Sequence[complex], z: complex, steps: int = 3) -> complex:
    p, dp, _ = _horner_with_bound(coeffs, z)
    for _ in range(steps):
        if dp == 0 or p == 0:
            break
        cand = z - p / dp
        cp, cdp, _ = _horner_with_bound(coeffs, cand)
        if abs(cp) > abs(p):
            break
        z, p, dp = cand, cp, cdp
    return z


def _canonical_key(root: Tuple[complex, int]):
    a = root[0]
    return (-round(abs(a), 12), -round(a.real, 12), -round(a.imag, 12))


def find_roots(p: Polynomial, tol: Tolerances = DEFAULT_TOL) -> RootSpectrum:
    """Distinct roots of ``p`` with multiplicities.

    Roots are listed by decreasing magnitude, then decreasing real part,
    then decreasing imaginary part.
    """
    if p.degree < 1:
        raise InvalidInput("polynomial must have degree at least 1")
    lead = complex(p.coefficients[-1])
    coeffs = [complex(c) / lead for c in p.coefficients]
    if coeffs[0] == 0:
        raise InvalidInput("polynomial has a zero root")
    iterates = aberth(coeffs, tol.max_iter)
    roots = []
    for alpha, mult in cluster_roots(coeffs, iterates, tol):
        if mult == 1:
            alpha = _polish_simple(coeffs, alpha)
        roots.append((alpha, mult))
    roots.sort(key=_canonical_key)
    spectrum = RootSpectrum(tuple(roots))
    return validate_spectrum(spectrum, p.degree, tol)


def spectrum_of(spec: RecurrenceSpec, tol: Tolerances = DEFAULT_TOL) -> RootSpectrum:
    return find_roots(char_poly(spec), tol)
