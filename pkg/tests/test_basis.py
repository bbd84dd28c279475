import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cfinite.basis import basis_matrix, basis_value, cpow, vandermonde_det
from cfinite.charpoly import coeffs_from_spectrum
from cfinite.errors import PreconditionViolated, RangeOverflow, ZeroRoot
from cfinite.linalg import det
from cfinite.model import RootSpectrum

from conftest import PHI, PSI, random_separated_spectrum


def test_basis_value_examples():
    assert basis_value(2, 0, 5) == 32
    assert basis_value(1, 1, 4) == 4
    assert basis_value(3, 2, 1) == 0
    with pytest.raises(ZeroRoot):
        basis_value(0, 0, 3)


def test_basis_value_falling_factorial():
    # 5*4*3 * 2^(5-3)
    assert basis_value(2, 3, 5) == 240
    assert basis_value(0.5, 2, 2) == 2


def test_basis_matrix_examples():
    m = basis_matrix(RootSpectrum.simple([PHI, PSI]), [0, 1])
    assert m == [[1, 1], [PHI, PSI]]
    assert basis_matrix(RootSpectrum(((1, 2),)), [0, 1]) == [[1, 0], [1, 1]]
    m = basis_matrix(RootSpectrum.simple([1, -1]), [0, 2])
    assert m[0] == m[1]
    assert det(m) == 0


def test_vandermonde_examples():
    assert abs(vandermonde_det(RootSpectrum.simple([PHI, PSI])) + 5**0.5) < 1e-15
    assert vandermonde_det(RootSpectrum.simple([1, 2, 3])) == 2
    assert vandermonde_det(RootSpectrum.simple([1])) == 1


def test_vandermonde_preconditions():
    with pytest.raises(PreconditionViolated):
        vandermonde_det(RootSpectrum(((1, 2),)))
    with pytest.raises(PreconditionViolated):
        vandermonde_det(RootSpectrum.simple([1, 2]), [0, 2])


def test_range_guard():
    with pytest.raises(RangeOverflow):
        basis_value(10, 0, 400)
    with pytest.raises(RangeOverflow):
        basis_value(0.1, 0, 400)
    basis_value(10, 0, 300)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 8), st.integers(0, 2**32), st.booleans())
def test_columns_satisfy_recurrence(n, seed, mult):
    sp = random_separated_spectrum(random.Random(seed), n, multiplicities=mult)
    s = coeffs_from_spectrum(sp)
    for alpha, j in sp.columns():
        e = [basis_value(alpha, j, h) for h in range(50 + n + 1)]
        for h in range(51):
            terms = [s[i - 1] * e[h + n - i] for i in range(1, n + 1)]
            scale = max(abs(e[h + n]), *(abs(t) for t in terms), 1e-300)
            assert abs(e[h + n] - sum(terms)) <= 1e-9 * scale


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 8), st.integers(0, 2**32), st.booleans())
def test_initial_basis_matrix_nonsingular(n, seed, mult):
    sp = random_separated_spectrum(random.Random(seed), n, multiplicities=mult)
    assert abs(det(basis_matrix(sp, range(n)))) > 0


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 8), st.integers(0, 2**32))
def test_vandermonde_matches_lu(n, seed):
    sp = random_separated_spectrum(random.Random(seed), n)
    v = vandermonde_det(sp)
    d = det(basis_matrix(sp, range(n)))
    assert abs(v - d) <= 1e-10 * abs(v)


@settings(max_examples=200, deadline=None)
@given(
    st.complex_numbers(min_magnitude=0.5, max_magnitude=2.0, allow_nan=False, allow_infinity=False),
    st.integers(0, 200),
)
def test_plain_power_matches_repeated_squaring(alpha, h):
    assert basis_value(alpha, 0, h) == cpow(alpha, h)
    ref = complex(1)
    for _ in range(h):
        ref *= alpha
    assert abs(cpow(alpha, h) - ref) <= 1e-12 * abs(ref)
