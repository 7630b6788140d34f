import random
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from todagauss import Polynomial, TodaState, toda_step

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

x = Polynomial.gen()


def P(*coeffs):
    """Polynomial from coefficients written highest degree first."""
    return Polynomial(list(reversed(coeffs)))


def random_rational(rng, height=16):
    return Fraction(rng.choice((-1, 1)) * rng.randint(1, height), rng.randint(1, height))


def random_state(rng, n, height=16, horizon=0):
    """Random rational state staying in the flow domain for ``horizon`` steps."""
    while True:
        s = TodaState.of([random_rational(rng, height) for _ in range(n)],
                         [random_rational(rng, height) for _ in range(n)])
        try:
            t = s
            for _ in range(horizon):
                t = toda_step(t)
        except ArithmeticError:
            continue
        return s


@pytest.fixture
def worked():
    return TodaState.of([1, 2, 3], [4, 5, 6])


rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)
nonzero_rationals = rationals.filter(lambda q: q != 0)
polys = st.lists(rationals, max_size=5).map(Polynomial)
nonzero_polys = polys.filter(lambda p: not p.is_zero())


@st.composite
def toda_states(draw, sizes=(3, 4, 5)):
    n = draw(st.sampled_from(sizes))
    I = draw(st.lists(nonzero_rationals, min_size=n, max_size=n))
    V = draw(st.lists(nonzero_rationals, min_size=n, max_size=n))
    return TodaState.of(I, V)


@pytest.fixture
def rng():
    return random.Random(20261018)


# one line per acceptance criterion, printed after the run whatever the outcome
ACCEPTANCE_RESULTS = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in ACCEPTANCE_RESULTS:
        terminalreporter.write_line(line)
