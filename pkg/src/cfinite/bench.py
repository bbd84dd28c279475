"""Timing harness comparing evaluation strategies."""

from __future__ import annotations

import statistics
import time
from fractions import Fraction
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence

from .errors import CFiniteError, InvalidInput
from .fasteval import check_modulus, eval_companion_power, eval_kitamasa
from .model import DEFAULT_TOL, RecurrenceSpec, RootSpectrum, SampleSet, Scalar, Tolerances, is_exact
from .solver import eval_corollary1, eval_determinant, eval_iterative

EXACT_METHODS = ("iterative", "companion", "kitamasa")
ROOT_METHODS = ("determinant", "vandermonde")
ALL_METHODS = ("iterative", "determinant", "vandermonde", "companion", "kitamasa")

# Direct iteration beyond this index is skipped unless asked for.
ITERATIVE_CAP = 100_000


@dataclass
class BenchRow:
    h: int
    method: str
    median_seconds: Optional[float]
    value: Optional[Scalar]
    note: str = ""


def evaluator(
    method: str,
    spec: RecurrenceSpec,
    spectrum_fn: Callable[[], RootSpectrum],
    tol: Tolerances = DEFAULT_TOL,
    modulus: Optional[int] = None,
) -> Callable[[int], Scalar]:
    """A one-argument callable ``h -> u[h]`` for the named method."""
    if method == "iterative":
        return lambda h: eval_iterative(spec, h, modulus)
    if method == "companion":
        return lambda h: eval_companion_power(spec, h, modulus)
    if method == "kitamasa":
        return lambda h: eval_kitamasa(spec, h, modulus)
    if modulus is not None:
        raise InvalidInput(f"method {method!r} does not support a modulus")
    if method == "determinant":
        spectrum = spectrum_fn()
        samples = SampleSet.from_initial(spec.initial)
        return lambda h: eval_determinant(samples, spectrum, h, tol).value
    if method == "vandermonde":
        spectrum = spectrum_fn()
        return lambda h: eval_corollary1(spec, spectrum, h, tol)
    raise InvalidInput(f"unknown method {method!r}")


def _relative_gap(a: Scalar, b: Scalar) -> float:
    if is_exact(a) and is_exact(b):
        return float(Fraction(abs(a - b)) / max(1, abs(a)))
    try:
        za, zb = complex(a), complex(b)
    except OverflowError:
        return float("inf")
    return abs(za - zb) / max(1.0, abs(za))


def disagreement(values: Sequence[Scalar], modulus: Optional[int] = None) -> float:
    """Largest pairwise difference relative to ``max(1, |value|)``.

    Under a modulus values are residues, so any mismatch counts as 1.
    """
    worst = 0.0
    for i, a in enumerate(values):
        for b in values[i + 1:]:
            if a == b:
                continue
            gap = 1.0 if modulus is not None else _relative_gap(a, b)
            worst = max(worst, gap)
    return worst


def run_bench(
    spec: RecurrenceSpec,
    h_list: Sequence[int],
    spectrum_fn: Callable[[], RootSpectrum],
    methods: Sequence[str] = ALL_METHODS,
    tol: Tolerances = DEFAULT_TOL,
    modulus: Optional[int] = None,
    repeat: int = 9,
    iterative_cap: int = ITERATIVE_CAP,
) -> tuple[List[BenchRow], Dict[int, float]]:
    """Median wall-clock time per (h, method) and per-h disagreement.

    Methods that fail at some ``h`` are reported with the error name in
    ``note`` and left out of the disagreement.
    """
    check_modulus(modulus)
    if repeat < 1:
        raise InvalidInput("repeat must be positive")
    if modulus is not None:
        methods = [m for m in methods if m in EXACT_METHODS]
    rows: List[BenchRow] = []
    deltas: Dict[int, float] = {}
    funcs: Dict[str, Callable[[int], Scalar]] = {}
    for h in h_list:
        values = []
        for method in methods:
            if method == "iterative" and h > iterative_cap:
                rows.append(BenchRow(h, method, None, None, "skipped"))
                continue
            try:
                if method not in funcs:
                    funcs[method] = evaluator(method, spec, spectrum_fn, tol, modulus)
                fn = funcs[method]
                times = []
                value = None
                for _ in range(repeat):
                    t0 = time.perf_counter()
                    value = fn(h)
                    times.append(time.perf_counter() - t0)
            except CFiniteError as exc:
                rows.append(BenchRow(h, method, None, None, type(exc).__name__))
                continue
            rows.append(BenchRow(h, method, statistics.median(times), value))
            values.append(value)
        deltas[h] = disagreement(values, modulus)
    return rows, deltas
