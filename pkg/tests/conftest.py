import random

import pytest
from hypothesis import settings, strategies as st

from twistconj.matrices import Matrix
from twistconj.rings import GaussianIntegers, PolynomialRing, PrimeField, make_ring

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

RING_SPECS = ["Z", "Fp:2", "Fp:3", "Fp:101", "Zi", "poly:Z", "poly:Zi"]


def _trim(coeffs, zero):
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == zero:
        coeffs.pop()
    return tuple(coeffs)


def raw_values(ring, bound=50, max_degree=3):
    """Strategy for raw values of ``ring``."""
    if isinstance(ring, PrimeField):
        return st.integers(0, ring.p - 1)
    if isinstance(ring, GaussianIntegers):
        return st.tuples(st.integers(-bound, bound), st.integers(-bound, bound))
    if isinstance(ring, PolynomialRing):
        return st.lists(raw_values(ring.base, bound), max_size=max_degree + 1).map(
            lambda cs: _trim(cs, ring.base.zero))
    return st.integers(-bound, bound)


def elements(ring, **kw):
    return raw_values(ring, **kw).map(ring.element)


def matrices(ring, n, **kw):
    return st.lists(st.lists(raw_values(ring, **kw), min_size=n, max_size=n), min_size=n, max_size=n).map(
        lambda rows: Matrix(ring, rows))


rings = st.sampled_from(RING_SPECS).map(make_ring)


@pytest.fixture
def rng():
    return random.Random(1234)


@pytest.fixture(params=["Z", "Zi", "poly:Z"])
def domain(request):
    return make_ring(request.param)


# -- acceptance reporting ----------------------------------------------------

_CRITERIA: dict = {}


@pytest.fixture
def criterion(request):
    """``criterion(n, ok, detail)`` records a verdict line and asserts ``ok``."""
    def record(number, ok, detail):
        line = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
        print(line)
        _CRITERIA[number] = line
        assert ok, line
    return record


def pytest_runtest_logreport(report):
    marker = "test_acceptance.py::test_criterion_"
    if report.when == "call" and marker in report.nodeid and report.failed:
        number = int(report.nodeid.split(marker)[1].split("_")[0])
        _CRITERIA.setdefault(number, f"criterion {number:>2}: FAIL  raised before a verdict")


def pytest_terminal_summary(terminalreporter):
    if _CRITERIA:
        terminalreporter.write_sep("=", "acceptance criteria")
        for number in sorted(_CRITERIA):
            terminalreporter.write_line(_CRITERIA[number])
