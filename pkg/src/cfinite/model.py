"""Domain types shared by every module.

Scalars are kept in the domain they were supplied in: ``int`` and
``Fraction`` values stay exact wherever an operation can preserve them,
anything else is carried as a Python ``complex`` (a pair of doubles).

Basis columns are always ordered by root index first and derivative order
second, following the order in which roots are stored in a
:class:`RootSpectrum`.  No operation reorders them.
"""

from __future__ import annotations

import numbers
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence, Tuple, Union

from .errors import (
    DuplicateRoot,
    InvalidInput,
    LengthMismatch,
    MultiplicitySumMismatch,
    ZeroRoot,
    ZeroTrailingCoefficient,
)

Scalar = Union[int, Fraction, float, complex]


def is_exact(x) -> bool:
    return isinstance(x, (int, Fraction)) and not isinstance(x, bool)


def all_exact(values) -> bool:
    return all(is_exact(v) for v in values)


def to_complex(x: Scalar) -> complex:
    return complex(x)


@dataclass(frozen=True)
class Tolerances:
    """Numerical thresholds.

    ``zero_tol`` is absolute, ``cluster_tol`` is relative to the largest
    root magnitude and ``cond_max`` bounds acceptable condition estimates.
    """

    zero_tol: float = 1e-12
    cluster_tol: float = 1e-8
    cond_max: float = 1e12
    max_iter: int = 200

    def __post_init__(self):
        if self.zero_tol < 0 or self.cluster_tol < 0:
            raise InvalidInput("tolerances must be nonnegative")
        if not self.cond_max > 1:
            raise InvalidInput("cond_max must exceed 1")
        if self.max_iter < 1:
            raise InvalidInput("max_iter must be positive")


DEFAULT_TOL = Tolerances()


@dataclass(frozen=True)
class RecurrenceSpec:
    """``u[h+n] = s_1 u[h+n-1] + ... + s_n u[h]`` with ``u[0..n-1]`` given."""

    coefficients: Tuple[Scalar, ...]
    initial: Tuple[Scalar, ...]
    order: int = None  # type: ignore[assignment]

    def __post_init__(self):
        object.__setattr__(self, "coefficients", tuple(self.coefficients))
        object.__setattr__(self, "initial", tuple(self.initial))
        if self.order is None:
            object.__setattr__(self, "order", len(self.coefficients))

    @property
    def is_exact(self) -> bool:
        return all_exact(self.coefficients) and all_exact(self.initial)


@dataclass(frozen=True)
class RootSpectrum:
    """Distinct nonzero roots with multiplicities, as ``(alpha, n_i)`` pairs."""

    roots: Tuple[Tuple[complex, int], ...]

    def __post_init__(self):
        object.__setattr__(
            self, "roots", tuple((complex(a), int(k)) for a, k in self.roots)
        )

    @classmethod
    def simple(cls, values: Sequence[Scalar]) -> "RootSpectrum":
        return cls(tuple((v, 1) for v in values))

    @property
    def order(self) -> int:
        return sum(k for _, k in self.roots)

    @property
    def values(self) -> list[complex]:
        return [a for a, _ in self.roots]

    @property
    def multiplicities(self) -> list[int]:
        return [k for _, k in self.roots]

    @property
    def is_simple(self) -> bool:
        return all(k == 1 for _, k in self.roots)

    def __len__(self) -> int:
        return len(self.roots)

    def columns(self) -> Iterator[Tuple[complex, int]]:
        """Basis elements ``(alpha_i, j)`` in canonical column order."""
        for alpha, mult in self.roots:
            for j in range(mult):
                yield alpha, j


@dataclass(frozen=True)
class SampleSet:
    """Known values ``u[k]`` at strictly increasing indices ``k``."""

    indices: Tuple[int, ...]
    values: Tuple[Scalar, ...]

    def __post_init__(self):
        object.__setattr__(self, "indices", tuple(int(k) for k in self.indices))
        object.__setattr__(self, "values", tuple(self.values))
        if len(self.indices) != len(self.values):
            raise LengthMismatch(
                f"{len(self.indices)} indices but {len(self.values)} values"
            )
        if any(k < 0 for k in self.indices):
            raise InvalidInput("sample indices must be nonnegative")
        if any(a >= b for a, b in zip(self.indices, self.indices[1:])):
            raise InvalidInput("sample indices must be strictly increasing")

    @classmethod
    def from_initial(cls, initial: Sequence[Scalar]) -> "SampleSet":
        return cls(tuple(range(len(initial))), tuple(initial))

    @classmethod
    def from_mapping(cls, mapping) -> "SampleSet":
        items = sorted(mapping.items())
        return cls(tuple(k for k, _ in items), tuple(v for _, v in items))

    def __len__(self) -> int:
        return len(self.indices)


@dataclass(frozen=True)
class ClosedForm:
    """``u[h] = sum_i A_i(h) alpha_i**h``.

    Each term is ``(alpha_i, coeffs)`` with the monomial coefficients of
    ``A_i`` in ascending degree; ``len(coeffs)`` equals the multiplicity.
    """

    terms: Tuple[Tuple[complex, Tuple[complex, ...]], ...]

    def __post_init__(self):
        object.__setattr__(
            self,
            "terms",
            tuple((complex(a), tuple(complex(c) for c in cs)) for a, cs in self.terms),
        )

    def polynomial(self, i: int) -> Tuple[complex, ...]:
        return self.terms[i][1]

    def __call__(self, h: int) -> complex:
        total = 0j
        for alpha, coeffs in self.terms:
            acc = 0j
            for c in reversed(coeffs):
                acc = acc * h + c
            total += acc * alpha**h
        return total


@dataclass(frozen=True)
class RationalGF:
    """Ordinary generating function ``P(x)/Q(x)`` with ``Q(0) = 1``.

    ``route_delta`` is the largest coefficient disagreement between the
    partial-fraction assembly and the direct truncated product.
    """

    numerator: Tuple[Scalar, ...]
    denominator: Tuple[Scalar, ...]
    route_delta: float = field(default=0.0, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "numerator", tuple(self.numerator))
        object.__setattr__(self, "denominator", tuple(self.denominator))
        if not self.denominator or self.denominator[0] != 1:
            raise InvalidInput("denominator must have constant term 1")

    def series(self, count: int) -> list[Scalar]:
        """First ``count`` Taylor coefficients of ``P/Q``.

        No division happens because ``Q(0) = 1``, so exact inputs give
        exact outputs.
        """
        q = self.denominator
        out: list[Scalar] = []
        for h in range(count):
            acc = self.numerator[h] if h < len(self.numerator) else 0
            for k in range(1, min(h, len(q) - 1) + 1):
                acc = acc - q[k] * out[h - k]
            out.append(acc)
        return out


def validate_spec(spec: RecurrenceSpec, tol: Tolerances = DEFAULT_TOL) -> RecurrenceSpec:
    """Check the recurrence invariants and return ``spec`` itself."""
    n = spec.order
    if not isinstance(n, numbers.Integral) or n < 1:
        raise LengthMismatch(f"order must be a positive integer, got {n!r}")
    if len(spec.coefficients) != n:
        raise LengthMismatch(f"expected {n} coefficients, got {len(spec.coefficients)}")
    if len(spec.initial) != n:
        raise LengthMismatch(f"expected {n} initial values, got {len(spec.initial)}")
    for v in spec.coefficients + spec.initial:
        if not isinstance(v, numbers.Number) or isinstance(v, bool):
            raise InvalidInput(f"not a number: {v!r}")
    if abs(spec.coefficients[-1]) <= tol.zero_tol:
        raise ZeroTrailingCoefficient(
            f"trailing coefficient s_{n} = {spec.coefficients[-1]!r} is zero"
        )
    return spec


def validate_spectrum(
    spectrum: RootSpectrum, n: int, tol: Tolerances = DEFAULT_TOL
) -> RootSpectrum:
    """Check distinctness, nonzero roots and total multiplicity ``n``."""
    if any(k < 1 for k in spectrum.multiplicities):
        raise InvalidInput("multiplicities must be positive")
    if spectrum.order != n:
        raise MultiplicitySumMismatch(
            f"multiplicities sum to {spectrum.order}, expected {n}"
        )
    values = spectrum.values
    for a in values:
        if abs(a) <= tol.zero_tol:
            raise ZeroRoot(f"root {a} is zero")
    radius = tol.cluster_tol * max(abs(a) for a in values)
    for i, a in enumerate(values):
        for b in values[i + 1:]:
            if abs(a - b) <= radius:
                raise DuplicateRoot(f"roots {a} and {b} are not distinct")
    return spectrum
