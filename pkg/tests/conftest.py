import os
import sys
import random

import pytest
from hypothesis import HealthCheck, settings

from regstab.algebra import DEFAULT_FIELD, IdealSpec, ideal_from_monomials

settings.register_profile(
    "default", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile("ci", max_examples=15, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture
def F():
    return DEFAULT_FIELD


@pytest.fixture
def ci22():
    return ideal_from_monomials([(2, 0), (0, 2)])


@pytest.fixture
def m2():
    return ideal_from_monomials([(1, 0), (0, 1)])


@pytest.fixture
def rng():
    return random.Random(20261017)


def poly(text, names=("x", "y"), field=DEFAULT_FIELD):
    from regstab.idealfile import parse_polynomial

    return parse_polynomial(text, field, names)


def ideal(*gens, names=("x", "y"), field=DEFAULT_FIELD):
    return IdealSpec(field, names, tuple(poly(g, names, field) for g in gens))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not getattr(mod, "RESULTS", None):
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[k])
