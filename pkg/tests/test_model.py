from fractions import Fraction

import pytest

from cfinite.errors import (
    DuplicateRoot,
    InvalidInput,
    LengthMismatch,
    MultiplicitySumMismatch,
    ZeroRoot,
    ZeroTrailingCoefficient,
)
from cfinite.model import (
    RationalGF,
    RecurrenceSpec,
    RootSpectrum,
    SampleSet,
    Tolerances,
    validate_spec,
    validate_spectrum,
)

from conftest import PHI, PSI


@pytest.mark.parametrize(
    "coeffs, init",
    [((1, 1), (1, 1)), ((2, -1), (3, 5)), ((Fraction(1, 2),), (3,)), ((1j, 2), (0.5, 1 - 1j))],
)
def test_valid_specs_pass_unchanged(coeffs, init):
    spec = RecurrenceSpec(coeffs, init)
    assert validate_spec(spec) is spec


def test_validate_is_idempotent():
    spec = RecurrenceSpec((1, 1), (1, 1))
    assert validate_spec(validate_spec(spec)) == validate_spec(spec)


def test_zero_trailing_coefficient():
    with pytest.raises(ZeroTrailingCoefficient):
        validate_spec(RecurrenceSpec((0,), (1,)))
    with pytest.raises(ZeroTrailingCoefficient):
        validate_spec(RecurrenceSpec((1, 1e-13), (1, 1)))


@pytest.mark.parametrize(
    "spec",
    [
        RecurrenceSpec((1, 1), (1,)),
        RecurrenceSpec((1, 1), (1, 1, 2)),
        RecurrenceSpec((1, 1), (1, 1), order=3),
        RecurrenceSpec((), ()),
    ],
)
def test_length_mismatch(spec):
    with pytest.raises(LengthMismatch):
        validate_spec(spec)


def test_non_numeric_rejected():
    with pytest.raises(InvalidInput):
        validate_spec(RecurrenceSpec((1, "x"), (1, 1)))


def test_spectrum_examples():
    assert validate_spectrum(RootSpectrum.simple([PHI, PSI]), 2)
    assert validate_spectrum(RootSpectrum(((1, 2),)), 2)
    with pytest.raises(DuplicateRoot):
        validate_spectrum(RootSpectrum(((1, 1), (1, 1))), 2)


def test_spectrum_errors():
    with pytest.raises(ZeroRoot):
        validate_spectrum(RootSpectrum(((0, 1), (2, 1))), 2)
    with pytest.raises(MultiplicitySumMismatch):
        validate_spectrum(RootSpectrum(((1, 2), (2, 1))), 2)
    # separation is relative to the largest root
    with pytest.raises(DuplicateRoot):
        validate_spectrum(RootSpectrum(((1e6, 1), (1e6 + 1e-3, 1))), 2)


def test_spectrum_canonical_columns():
    sp = RootSpectrum(((2, 2), (3, 1)))
    assert list(sp.columns()) == [(2, 0), (2, 1), (3, 0)]
    assert sp.order == 3 and not sp.is_simple


def test_sample_set_invariants():
    s = SampleSet((0, 3), (1, 2))
    assert len(s) == 2
    with pytest.raises(LengthMismatch):
        SampleSet((0, 1), (1,))
    with pytest.raises(InvalidInput):
        SampleSet((2, 1), (1, 1))
    with pytest.raises(InvalidInput):
        SampleSet((-1, 1), (1, 1))
    assert SampleSet.from_mapping({5: 1, 2: 7}).indices == (2, 5)


def test_tolerances_checked():
    with pytest.raises(InvalidInput):
        Tolerances(zero_tol=-1)
    with pytest.raises(InvalidInput):
        Tolerances(cond_max=1)


def test_rational_gf_series_is_exact():
    gf = RationalGF((1,), (1, -1, -1))
    assert gf.series(8) == [1, 1, 2, 3, 5, 8, 13, 21]
    assert all(type(v) is int for v in gf.series(20))
    with pytest.raises(InvalidInput):
        RationalGF((1,), (2, 1))
