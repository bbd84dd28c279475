import cmath
import math
import random

import pytest

from cfinite.model import RecurrenceSpec, RootSpectrum

PHI = (1 + math.sqrt(5)) / 2
PSI = (1 - math.sqrt(5)) / 2

FIB = RecurrenceSpec((1, 1), (1, 1))
DOUBLE = RecurrenceSpec((2, -1), (3, 5))


def fib_oracle(count):
    out = [1, 1]
    while len(out) < count:
        out.append(out[-1] + out[-2])
    return out[:count]


def rel_err(got, want):
    return abs(complex(got) - complex(want)) / max(1.0, abs(complex(want)))


def min_separation(values):
    values = list(values)
    return min(
        (abs(a - b) for i, a in enumerate(values) for b in values[i + 1:]),
        default=math.inf,
    )


def random_integer_spec(rng, max_order=6, coef=3, init=5, min_order=1):
    n = rng.randint(min_order, max_order)
    while True:
        s = [rng.randint(-coef, coef) for _ in range(n)]
        if s[-1] != 0:
            break
    u = [rng.randint(-init, init) for _ in range(n)]
    return RecurrenceSpec(tuple(s), tuple(u))


def random_separated_spectrum(rng, n, sep=0.1, lo=0.5, hi=2.0, multiplicities=False):
    """Roots with magnitudes in [lo, hi] and pairwise distance >= sep."""
    roots = []
    total = 0
    while total < n:
        r = rng.uniform(lo, hi)
        z = cmath.rect(r, rng.uniform(-math.pi, math.pi))
        if any(abs(z - a) < sep for a, _ in roots):
            continue
        k = rng.randint(1, min(3, n - total)) if multiplicities else 1
        roots.append((z, k))
        total += k
    return RootSpectrum(tuple(roots))


@pytest.fixture
def rng():
    return random.Random(12345)


ACCEPTANCE_LINES = []


def report(criterion, ok, detail):
    line = f"{'PASS' if ok else 'FAIL'} criterion {criterion}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
