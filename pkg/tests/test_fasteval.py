import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cfinite.errors import InvalidInput, NoRecurrenceFound
from cfinite.fasteval import (
    _is_prime,
    check_modulus,
    companion_matrix,
    eval_companion_power,
    eval_kitamasa,
    infer_recurrence,
    x_power_mod,
)
from cfinite.model import RecurrenceSpec
from cfinite.solver import eval_iterative, iterate_terms

from conftest import DOUBLE, FIB, fib_oracle, random_integer_spec

P61 = 2**61 - 1


def exact_det(rows):
    a = [[Fraction(x) for x in r] for r in rows]
    n, d = len(a), Fraction(1)
    for k in range(n):
        p = next((i for i in range(k, n) if a[i][k] != 0), None)
        if p is None:
            return 0
        if p != k:
            a[k], a[p] = a[p], a[k]
            d = -d
        d *= a[k][k]
        for i in range(k + 1, n):
            f = a[i][k] / a[k][k]
            a[i] = [x - f * y for x, y in zip(a[i], a[k])]
    return d


@pytest.mark.parametrize("fn", [eval_companion_power, eval_kitamasa])
def test_fast_examples(fn):
    assert fn(FIB, 30) == 1346269
    assert fn(FIB, 0) == 1
    assert fn(DOUBLE, 10**6) == 2000003
    assert fn(DOUBLE, 1) == 5


def test_fib_100():
    want = fib_oracle(101)[100]
    assert len(str(want)) == 21
    assert eval_kitamasa(FIB, 100) == eval_companion_power(FIB, 100) == want


def test_residue_below_order_is_monomial():
    assert x_power_mod((1, 2, 3), 2) == [0, 0, 1]


def test_companion_shape():
    assert companion_matrix((1, 2, 3)) == [[0, 1, 0], [0, 0, 1], [3, 2, 1]]


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**32))
def test_integer_closure(seed):
    spec = random_integer_spec(random.Random(seed))
    for h in list(range(0, 201, 7)) + [200]:
        for fn in (eval_iterative, eval_kitamasa, eval_companion_power):
            assert type(fn(spec, h)) is int
    assert all(type(u) is int for u in iterate_terms(spec, 201))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32))
def test_cross_method_exact(seed):
    spec = random_integer_spec(random.Random(seed))
    for h in list(range(11)) + [10**3]:
        assert eval_companion_power(spec, h) == eval_kitamasa(spec, h)


@pytest.mark.parametrize("seed", range(5))
def test_cross_method_exact_large(seed):
    spec = random_integer_spec(random.Random(seed), max_order=6)
    h = 10**6
    assert eval_companion_power(spec, h, P61) == eval_kitamasa(spec, h, P61)
    # exact big integers once per instance; this is the expensive part
    if seed == 0:
        assert eval_companion_power(spec, h) == eval_kitamasa(spec, h)


@pytest.mark.parametrize("seed", range(4))
def test_fast_equals_oracle(seed):
    spec = random_integer_spec(random.Random(100 + seed))
    terms = iterate_terms(spec, 10**4 + 1)
    for h in list(range(0, 10**4 + 1, 997)) + [10**4]:
        assert eval_kitamasa(spec, h) == terms[h]
        assert eval_companion_power(spec, h) == terms[h]


def test_rational_path_exact():
    spec = RecurrenceSpec((Fraction(1, 2), Fraction(1, 3)), (1, 2))
    want = iterate_terms(spec, 61)[60]
    assert isinstance(want, Fraction)
    assert eval_kitamasa(spec, 60) == eval_companion_power(spec, 60) == want


def test_modular_matches_reduction():
    spec = RecurrenceSpec((3, -2, 5), (1, -4, 2))
    p = 1_000_003
    for h in (0, 2, 3, 500):
        want = eval_iterative(spec, h) % p
        assert eval_kitamasa(spec, h, p) == want
        assert eval_companion_power(spec, h, p) == want
        assert eval_iterative(spec, h, p) == want


def test_modular_rationals():
    p = 1_000_003
    spec = RecurrenceSpec((Fraction(1, 2), 1), (1, 1))
    got = eval_kitamasa(spec, 20, p)
    want = iterate_terms(spec, 21)[20]
    assert got == want.numerator * pow(want.denominator, -1, p) % p


@pytest.mark.parametrize("m", [None, 3, 1_000_003, P61])
def test_modulus_accepted(m):
    check_modulus(m)


@pytest.mark.parametrize("m", [2, 1, 0, -7, 9, 2**61, 561, 1.5])
def test_modulus_rejected(m):
    with pytest.raises(InvalidInput):
        check_modulus(m)


def test_primality_against_sieve():
    limit = 5000
    sieve = [True] * limit
    sieve[0] = sieve[1] = False
    for i in range(2, limit):
        if sieve[i]:
            for j in range(i * i, limit, i):
                sieve[j] = False
    assert [_is_prime(k) for k in range(limit)] == sieve


def test_modular_needs_exact():
    with pytest.raises(InvalidInput):
        eval_kitamasa(RecurrenceSpec((1.5,), (1.0,)), 3, 7)


def test_infer_examples():
    spec = infer_recurrence([1, 1, 2, 3, 5, 8, 13, 21], 3)
    assert spec.coefficients == (1, 1) and spec.initial == (1, 1)
    spec = infer_recurrence([3, 5, 7, 9, 11, 13], 3)
    assert spec.coefficients == (2, -1)
    spec = infer_recurrence([1, 2, 4, 8, 16, 32], 3)
    assert spec.coefficients == (2,) and spec.order == 1


def test_infer_floating():
    terms = [float(t) for t in fib_oracle(10)]
    spec = infer_recurrence(terms, 3)
    assert spec.order == 2
    assert all(abs(a - b) < 1e-9 for a, b in zip(spec.coefficients, (1, 1)))


def test_infer_failures():
    with pytest.raises(NoRecurrenceFound):
        infer_recurrence([1, 2, 3, 5, 7, 11, 13, 17], 3)
    with pytest.raises(InvalidInput):
        infer_recurrence([1, 2, 3], 2)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**32))
def test_infer_inverts_generation(seed):
    rng = random.Random(seed)
    while True:
        spec = random_integer_spec(rng)
        n = spec.order
        terms = iterate_terms(spec, 2 * n + 4)
        hankel = [[terms[i + j] for j in range(n)] for i in range(n)]
        if exact_det(hankel) != 0:
            break
    got = infer_recurrence(terms, n + 2)
    assert got.order == n
    assert got.coefficients == spec.coefficients
    assert got.initial == spec.initial
