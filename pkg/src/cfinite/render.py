"""Text, JSON and LaTeX rendering of results."""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Sequence

from .document import scalar_to_json, spectrum_document
from .model import ClosedForm, RationalGF, RootSpectrum, Scalar

TEXT_DIGITS = 12
LATEX_DIGITS = 10


def _real(x: float, digits: int) -> str:
    s = f"{x:.{digits}g}"
    return "0" if s in ("-0", "0") else s


def _is_negligible(im: float, re: float, zero_tol: float) -> bool:
    return abs(im) <= zero_tol * max(1.0, abs(re))


def format_scalar(x: Scalar, digits: int = TEXT_DIGITS, zero_tol: float = 1e-12, imag_unit: str = "i") -> str:
    """Exact values print exactly; floating values to ``digits`` significant digits."""
    if isinstance(x, bool):
        raise TypeError
    if isinstance(x, int):
        return str(x)
    if isinstance(x, Fraction):
        return str(x)
    z = complex(x)
    if _is_negligible(z.imag, z.real, zero_tol):
        return _real(z.real, digits)
    if _is_negligible(z.real, z.imag, zero_tol):
        return f"{_real(z.imag, digits)}{imag_unit}"
    sign = "-" if z.imag < 0 else "+"
    return f"{_real(z.real, digits)}{sign}{_real(abs(z.imag), digits)}{imag_unit}"


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=False)


def _json_number(x: Scalar, zero_tol: float = 1e-12):
    if isinstance(x, complex) and _is_negligible(x.imag, x.real, zero_tol):
        return x.real
    return scalar_to_json(x)


def render_value(x: Scalar, fmt: str = "text", zero_tol: float = 1e-12) -> str:
    if fmt == "json":
        return dumps({"value": _json_number(x, zero_tol)})
    return format_scalar(x, zero_tol=zero_tol)


def closed_form_text(cf: ClosedForm, zero_tol: float = 1e-12) -> str:
    parts = []
    for alpha, coeffs in cf.terms:
        poly = _series_text(coeffs, "h", False, zero_tol)
        if poly == "0":
            continue
        parts.append(f"({poly})*({format_scalar(alpha, TEXT_DIGITS, zero_tol)})^h")
    return "u(h) = " + (" + ".join(parts) if parts else "0")


def closed_form_latex(cf: ClosedForm, zero_tol: float = 1e-12) -> str:
    parts = []
    for alpha, coeffs in cf.terms:
        poly = _series_text(coeffs, "h", True, zero_tol)
        if poly == "0":
            continue
        root = format_scalar(alpha, LATEX_DIGITS, zero_tol)
        parts.append(rf"\left({poly}\right) \left({root}\right)^{{h}}")
    return "u_{h} = " + (" + ".join(parts) if parts else "0")


def closed_form_json(cf: ClosedForm, zero_tol: float = 1e-12) -> str:
    return dumps(
        {
            "terms": [
                {
                    "root": _json_number(alpha, zero_tol),
                    "multiplicity": len(coeffs),
                    "polynomial": [_json_number(c, zero_tol) for c in coeffs],
                }
                for alpha, coeffs in cf.terms
            ]
        }
    )


def _series_text(coeffs: Sequence[Scalar], var: str, latex: bool, zero_tol: float) -> str:
    pieces = []
    for k, c in enumerate(coeffs):
        if c == 0 or (not isinstance(c, (int, Fraction)) and abs(c) <= zero_tol):
            continue
        s = format_scalar(c, LATEX_DIGITS if latex else TEXT_DIGITS, zero_tol)
        if k == 0:
            pieces.append(s)
            continue
        power = var if k == 1 else (f"{var}^{{{k}}}" if latex else f"{var}^{k}")
        if s == "1":
            body = power
        elif s == "-1":
            body = "-" + power
        elif any(ch in s[1:] for ch in "+-") or s.endswith("i"):
            body = f"({s}){' ' if latex else '*'}{power}"
        else:
            body = f"{s}{' ' if latex else '*'}{power}"
        pieces.append(body)
    if not pieces:
        return "0"
    out = pieces[0]
    for p in pieces[1:]:
        out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
    return out


def gf_text(gf: RationalGF, zero_tol: float = 1e-12) -> str:
    return (
        f"P(x) = {_series_text(gf.numerator, 'x', False, zero_tol)}\n"
        f"Q(x) = {_series_text(gf.denominator, 'x', False, zero_tol)}"
    )


def gf_latex(gf: RationalGF, zero_tol: float = 1e-12) -> str:
    num = _series_text(gf.numerator, "x", True, zero_tol)
    den = _series_text(gf.denominator, "x", True, zero_tol)
    return rf"\sum_{{h \ge 0}} u_{{h}} x^{{h}} = \frac{{{num}}}{{{den}}}"


def gf_json(gf: RationalGF, zero_tol: float = 1e-12) -> str:
    return dumps(
        {
            "numerator": [_json_number(c, zero_tol) for c in gf.numerator],
            "denominator": [_json_number(c, zero_tol) for c in gf.denominator],
        }
    )


def roots_text(spectrum: RootSpectrum, zero_tol: float = 1e-12) -> str:
    lines = ["root multiplicity"]
    for alpha, k in spectrum.roots:
        lines.append(f"{format_scalar(alpha, TEXT_DIGITS, zero_tol)} {k}")
    return "\n".join(lines)


def roots_json(spectrum: RootSpectrum, initial=None) -> str:
    return dumps(spectrum_document(spectrum, initial))
