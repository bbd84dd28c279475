"""Spec documents: the JSON files the command line reads and writes.

A document carries exactly one of

* ``"coefficients"``: recurrence coefficients ``s_1..s_n``, or
* ``"roots"``: a list of roots, each a number, an ``[re, im]`` pair, or
  ``{"value": <number>, "multiplicity": <int>}``,

plus optional ``"initial"`` values, an optional ``"order"`` and an
optional ``"tolerances"`` block (``zero_tol``, ``cluster_tol``,
``cond_max``, ``max_iter``).  Numbers may be JSON numbers, ``[re, im]``
pairs, or strings such as ``"1/3"`` or ``"2-0.5i"``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Optional, Tuple

from .charpoly import coeffs_from_spectrum, spectrum_of
from .errors import InvalidInput
from .model import (
    DEFAULT_TOL,
    RecurrenceSpec,
    RootSpectrum,
    Scalar,
    Tolerances,
    validate_spec,
    validate_spectrum,
)


def parse_scalar(value: Any) -> Scalar:
    if isinstance(value, bool):
        raise InvalidInput(f"not a number: {value!r}")
    if isinstance(value, (int, float)):
        return value
    if isinstance(value, list):
        if len(value) != 2 or not all(
            isinstance(v, (int, float)) and not isinstance(v, bool) for v in value
        ):
            raise InvalidInput(f"complex numbers are [re, im] pairs, got {value!r}")
        re, im = value
        return re if im == 0 else complex(re, im)
    if isinstance(value, str):
        return parse_scalar_text(value)
    raise InvalidInput(f"not a number: {value!r}")


def parse_scalar_text(text: str) -> Scalar:
    """``"3"``, ``"-1/2"``, ``"0.25"``, ``"1+2i"``, ``"-3.5i"``."""
    t = text.strip().replace(" ", "")
    if not t:
        raise InvalidInput("empty number")
    try:
        return int(t)
    except ValueError:
        pass
    if "/" in t:
        try:
            return Fraction(t)
        except (ValueError, ZeroDivisionError):
            raise InvalidInput(f"bad rational {text!r}") from None
    if t[-1] in "ij":
        try:
            z = complex(t[:-1] + "j")
        except ValueError:
            raise InvalidInput(f"bad complex number {text!r}") from None
        return z.real if z.imag == 0 else z
    try:
        return float(t)
    except ValueError:
        raise InvalidInput(f"bad number {text!r}") from None


def scalar_to_json(x: Scalar):
    if isinstance(x, bool):
        raise TypeError
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, float):
        return x
    z = complex(x)
    return z.real if z.imag == 0 else [z.real, z.imag]


def _parse_tolerances(block) -> Tolerances:
    if block is None:
        return DEFAULT_TOL
    if not isinstance(block, dict):
        raise InvalidInput("tolerances must be an object")
    known = {"zero_tol", "cluster_tol", "cond_max", "max_iter"}
    unknown = set(block) - known
    if unknown:
        raise InvalidInput(f"unknown tolerance keys: {sorted(unknown)}")
    try:
        return Tolerances(**block)
    except TypeError as exc:
        raise InvalidInput(f"bad tolerances block: {exc}") from None


def _parse_root(item) -> Tuple[complex, int]:
    if isinstance(item, dict):
        if "value" not in item:
            raise InvalidInput(f"root entry without value: {item!r}")
        mult = item.get("multiplicity", 1)
        if not isinstance(mult, int) or isinstance(mult, bool) or mult < 1:
            raise InvalidInput(f"bad multiplicity {mult!r}")
        return complex(parse_scalar(item["value"])), mult
    return complex(parse_scalar(item)), 1


def _real_if_possible(z: complex) -> Scalar:
    return z.real if z.imag == 0 else z


@dataclass(frozen=True)
class SpecDocument:
    """A parsed document; ``spec`` is ``None`` when no initial values were given."""

    coefficients: Tuple[Scalar, ...]
    initial: Optional[Tuple[Scalar, ...]]
    given_spectrum: Optional[RootSpectrum]
    tol: Tolerances

    @property
    def order(self) -> int:
        return len(self.coefficients)

    @property
    def spec(self) -> Optional[RecurrenceSpec]:
        if self.initial is None:
            return None
        return RecurrenceSpec(self.coefficients, self.initial)

    def require_spec(self) -> RecurrenceSpec:
        spec = self.spec
        if spec is None:
            raise InvalidInput("this command needs 'initial' values in the spec document")
        return spec

    def spectrum(self) -> RootSpectrum:
        if self.given_spectrum is not None:
            return self.given_spectrum
        return spectrum_of(RecurrenceSpec(self.coefficients, (0,) * self.order), self.tol)


def parse_document(data: Any) -> SpecDocument:
    if not isinstance(data, dict):
        raise InvalidInput("spec document must be a JSON object")
    known = {"coefficients", "roots", "initial", "order", "tolerances"}
    unknown = set(data) - known
    if unknown:
        raise InvalidInput(f"unknown keys in spec document: {sorted(unknown)}")
    has_c, has_r = "coefficients" in data, "roots" in data
    if has_c == has_r:
        raise InvalidInput("give exactly one of 'coefficients' or 'roots'")
    tol = _parse_tolerances(data.get("tolerances"))

    given = None
    if has_c:
        raw = data["coefficients"]
        if not isinstance(raw, list) or not raw:
            raise InvalidInput("'coefficients' must be a nonempty list")
        coefficients = tuple(parse_scalar(v) for v in raw)
    else:
        raw = data["roots"]
        if not isinstance(raw, list) or not raw:
            raise InvalidInput("'roots' must be a nonempty list")
        given = RootSpectrum(tuple(_parse_root(r) for r in raw))
        validate_spectrum(given, given.order, tol)
        coefficients = tuple(_real_if_possible(c) for c in coeffs_from_spectrum(given))
    n = len(coefficients)
    order = data.get("order", n)
    if order != n:
        raise InvalidInput(f"'order' is {order} but {n} coefficients are implied")

    initial = None
    if "initial" in data:
        raw = data["initial"]
        if not isinstance(raw, list):
            raise InvalidInput("'initial' must be a list")
        initial = tuple(parse_scalar(v) for v in raw)

    placeholder = initial if initial is not None else (0,) * n
    validate_spec(RecurrenceSpec(coefficients, placeholder), tol)
    return SpecDocument(coefficients, initial, given, tol)


def load_document(path: str) -> SpecDocument:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise InvalidInput(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"{path} is not valid JSON: {exc}") from None
    return parse_document(data)


def spectrum_document(spectrum: RootSpectrum, initial=None) -> dict:
    """A spec document in roots form, suitable for :func:`parse_document`."""
    doc: dict = {
        "roots": [
            {"value": [a.real, a.imag], "multiplicity": k} for a, k in spectrum.roots
        ]
    }
    if initial is not None:
        doc["initial"] = [scalar_to_json(u) for u in initial]
    return doc


def spec_document(spec: RecurrenceSpec) -> dict:
    return {
        "coefficients": [scalar_to_json(s) for s in spec.coefficients],
        "initial": [scalar_to_json(u) for u in spec.initial],
    }
