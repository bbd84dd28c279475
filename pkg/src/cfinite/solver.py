"""Term evaluation, closed forms and generating functions.

The determinant evaluators express ``u[h]`` as a ratio of two
determinants built from basis-sequence values: the denominator is the
matrix of basis values on a known index set ``I``, the numerator borders
it with the known values and the basis values at ``h``.  Simple iteration
of the recurrence is kept alongside as the reference every other route is
checked against.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import List, Literal, Sequence, Tuple, Union

from .basis import basis_matrix, basis_row, vandermonde_det
from .charpoly import coeffs_from_spectrum, expand_reciprocal, poly_mul
from .errors import (
    InconsistentSpectrum,
    LengthMismatch,
    PreconditionViolated,
    RangeOverflow,
    RouteMismatch,
    SingularBasis,
)
from .linalg import cond_estimate, det, lu_factor
from .model import (
    DEFAULT_TOL,
    ClosedForm,
    RationalGF,
    RecurrenceSpec,
    RootSpectrum,
    SampleSet,
    Scalar,
    Tolerances,
    is_exact,
    validate_spectrum,
)

Method = Literal["iterative", "determinant", "vandermonde", "samples"]

# Spectrum coefficients may differ from the recurrence by this much
# (relative to the largest coefficient) before the two count as inconsistent.
SPECTRUM_MATCH_TOL = 1e-6
# Allowed coefficient disagreement between the two generating-function routes.
GF_ROUTE_TOL = 1e-8


@dataclass(frozen=True)
class EvalReport:
    value: complex
    denom_det: complex
    cond_estimate: float
    method: Method


def _reduce(x, modulus):
    if modulus is None:
        return x
    if isinstance(x, int):
        return x % modulus
    # Fraction: numerator times inverse denominator.
    return x.numerator * pow(x.denominator, -1, modulus) % modulus


def iterate_terms(spec: RecurrenceSpec, count: int, modulus: int | None = None) -> List[Scalar]:
    """The first ``count`` terms by direct iteration.

    Arithmetic stays in the domain of the inputs; with ``modulus`` every
    value is reduced modulo it (inputs must then be exact).
    """
    coeffs = [_reduce(s, modulus) for s in spec.coefficients]
    window = [_reduce(u, modulus) for u in spec.initial]
    out = window[:count]
    rev = coeffs[::-1]  # rev[k] multiplies window[k] (oldest first)
    while len(out) < count:
        nxt = sum(c * w for c, w in zip(rev, window))
        if modulus is not None:
            nxt %= modulus
        elif not is_exact(nxt) and not cmath.isfinite(nxt):
            raise RangeOverflow(f"term {len(out)} overflows double range")
        out.append(nxt)
        window = window[1:] + [nxt]
    return out


def eval_iterative(spec: RecurrenceSpec, h: int, modulus: int | None = None) -> Scalar:
    """``u[h]`` by running the recurrence forward; O(n h)."""
    if h < 0:
        raise ValueError("index must be nonnegative")
    n = spec.order
    if h < n:
        return _reduce(spec.initial[h], modulus)
    coeffs = [_reduce(s, modulus) for s in reversed(spec.coefficients)]
    window = [_reduce(u, modulus) for u in spec.initial]
    exact = all(is_exact(v) for v in coeffs + window)
    for k in range(n, h + 1):
        nxt = sum(c * w for c, w in zip(coeffs, window))
        if modulus is not None:
            nxt %= modulus
        elif not exact and not cmath.isfinite(nxt):
            raise RangeOverflow(f"term {k} overflows double range")
        window.append(nxt)
        del window[0]
    return window[-1]


def _hadamard_scale(rows) -> float:
    out = 1.0
    for row in rows:
        out *= math.sqrt(sum(abs(x) ** 2 for x in row))
    return out


@lru_cache(maxsize=512)
def _denominator(spectrum: RootSpectrum, indices: Tuple[int, ...], tol: Tolerances):
    den = basis_matrix(spectrum, indices)
    factors = lu_factor(den, tol.zero_tol)
    d = factors.det()
    cond = cond_estimate(den, factors=factors)
    if factors.singular or abs(d) <= tol.zero_tol * _hadamard_scale(den) or cond > tol.cond_max:
        raise SingularBasis(
            f"basis matrix on indices {list(indices)} is singular "
            f"(det={d:.3g}, cond estimate={cond:.3g})"
        )
    return tuple(tuple(r) for r in den), d, cond


def _bordered_det(values: Sequence[complex], den_rows, spectrum: RootSpectrum, h: int) -> complex:
    rows = [[complex(v)] + list(r) for v, r in zip(values, den_rows)]
    rows.append([0j] + basis_row(spectrum, h))
    # Small numerator determinants are legitimate, only exact zero pivots stop.
    return det(rows, zero_tol=0.0)


def eval_determinant(
    samples: SampleSet,
    spectrum: RootSpectrum,
    h: int,
    tol: Tolerances = DEFAULT_TOL,
    method: Method = "determinant",
) -> EvalReport:
    """``u[h]`` from ``n`` known values via the bordered determinant ratio.

    ``h`` may itself belong to the sample indices; the same ratio is
    evaluated and reproduces the known value.
    """
    n = spectrum.order
    if len(samples) != n:
        raise LengthMismatch(f"need {n} samples for order {n}, got {len(samples)}")
    den_rows, d, cond = _denominator(spectrum, samples.indices, tol)
    num = _bordered_det(samples.values, den_rows, spectrum, h)
    value = (-1) ** (n + 1) * num / d
    return EvalReport(value, d, cond, method)


def _initial_of(spec_or_initial) -> Tuple[Scalar, ...]:
    if isinstance(spec_or_initial, RecurrenceSpec):
        return spec_or_initial.initial
    return tuple(spec_or_initial)


def eval_corollary1(
    spec_or_initial: Union[RecurrenceSpec, Sequence[Scalar]],
    spectrum: RootSpectrum,
    h: int,
    tol: Tolerances = DEFAULT_TOL,
) -> complex:
    """Simple-root case on ``I = 0..n-1`` with the Vandermonde product as denominator."""
    initial = _initial_of(spec_or_initial)
    n = spectrum.order
    if not spectrum.is_simple:
        raise PreconditionViolated("simple roots required")
    if len(initial) != n:
        raise LengthMismatch(f"need {n} initial values, got {len(initial)}")
    v = vandermonde_det(spectrum)
    if abs(v) <= tol.zero_tol:
        raise SingularBasis(f"Vandermonde product {v:.3g} vanishes")
    den_rows = basis_matrix(spectrum, range(n))
    num = _bordered_det(initial, den_rows, spectrum, h)
    return (-1) ** (n + 1) * num / v


def reconstruct_from_samples(
    samples: SampleSet, spectrum: RootSpectrum, h: int, tol: Tolerances = DEFAULT_TOL
) -> EvalReport:
    """``u[h]`` from values at arbitrary indices; fails loudly when they do not determine it."""
    return eval_determinant(samples, spectrum, h, tol, method="samples")


def check_consistent(spec: RecurrenceSpec, spectrum: RootSpectrum, tol: Tolerances = DEFAULT_TOL):
    validate_spectrum(spectrum, spec.order, tol)
    got = coeffs_from_spectrum(spectrum)
    want = [complex(s) for s in spec.coefficients]
    scale = max(1.0, max(abs(s) for s in want))
    delta = max(abs(a - b) for a, b in zip(got, want))
    if delta > SPECTRUM_MATCH_TOL * scale:
        raise InconsistentSpectrum(
            f"spectrum reproduces the coefficients only to {delta:.3g}"
        )


def coordinates(spec: RecurrenceSpec, spectrum: RootSpectrum, tol: Tolerances = DEFAULT_TOL) -> List[complex]:
    """Coefficients of the initial values in the basis, canonical column order."""
    n = spec.order
    den = basis_matrix(spectrum, range(n))
    factors = lu_factor(den, tol.zero_tol)
    if factors.singular:
        raise SingularBasis("basis matrix on 0..n-1 is singular")
    return factors.solve([complex(u) for u in spec.initial])


def _falling_poly(j: int) -> List[complex]:
    """Monomial coefficients of ``X (X-1) ... (X-j+1)``."""
    p: List[complex] = [1]
    for t in range(j):
        p = poly_mul(p, [-t, 1])
    return p


def closed_form(spec: RecurrenceSpec, spectrum: RootSpectrum, tol: Tolerances = DEFAULT_TOL) -> ClosedForm:
    """Per-root polynomials ``A_i`` with ``u[h] = sum A_i(h) alpha_i**h``."""
    check_consistent(spec, spectrum, tol)
    c = iter(coordinates(spec, spectrum, tol))
    terms = []
    for alpha, mult in spectrum.roots:
        poly = [0j] * mult
        for j in range(mult):
            cj = next(c) / alpha**j
            for k, f in enumerate(_falling_poly(j)):
                poly[k] += cj * f
        terms.append((alpha, tuple(poly)))
    return ClosedForm(tuple(terms))


def _gf_direct(spec: RecurrenceSpec) -> Tuple[List[Scalar], List[Scalar]]:
    n = spec.order
    q = [1] + [-s for s in spec.coefficients]
    p = poly_mul(list(spec.initial), q)[:n]
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p, q


def _gf_partial_fractions(spec: RecurrenceSpec, spectrum: RootSpectrum, tol: Tolerances):
    c = iter(coordinates(spec, spectrum, tol))
    n = spec.order
    num = [0j] * n
    for i, (alpha, mult) in enumerate(spectrum.roots):
        others = [1 + 0j]
        for k, (beta, mk) in enumerate(spectrum.roots):
            if k != i:
                for _ in range(mk):
                    others = poly_mul(others, [1, -beta])
        for j in range(mult):
            term = [0j] * j + [next(c) * math.factorial(j)]
            for _ in range(mult - j - 1):
                term = poly_mul(term, [1, -alpha])
            term = poly_mul(term, others)
            for k, t in enumerate(term):
                num[k] += t
    return num, expand_reciprocal(spectrum)


def generating_function(
    spec: RecurrenceSpec, spectrum: RootSpectrum, tol: Tolerances = DEFAULT_TOL
) -> RationalGF:
    """``sum u[h] x**h`` as ``P/Q``, computed two ways and cross-checked.

    The returned coefficients come from ``Q = 1 - sum s_i x**i`` and the
    truncated product of the initial values with ``Q``, so exact inputs
    give exact output.  The partial-fraction assembly over the roots must
    agree with it to ``1e-8`` (relative to the largest coefficient).
    """
    check_consistent(spec, spectrum, tol)
    p, q = _gf_direct(spec)
    pa, qa = _gf_partial_fractions(spec, spectrum, tol)
    ref = [complex(x) for x in p] + [0j] * (len(pa) - len(p)) + [complex(x) for x in q]
    alt = list(pa) + list(qa)
    scale = max(1.0, max(abs(x) for x in ref))
    delta = max(abs(a - b) for a, b in zip(ref, alt)) / scale
    if delta > GF_ROUTE_TOL:
        raise RouteMismatch(
            f"partial fractions disagree with the direct product by {delta:.3g}"
        )
    return RationalGF(tuple(p), tuple(q), route_delta=delta)
