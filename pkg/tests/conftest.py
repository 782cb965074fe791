import random

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from totmonoid.rel import LabeledGenSet, from_pair
from totmonoid.shrubbery import Params, shrubbery

settings.register_profile(
    "default", deadline=None, max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

SMALL_PARAMS = [Params(1, 2, 1), Params(2, 2, 1), Params(1, 3, 2), Params(1, 2, 2), Params(2, 3, 1)]

seeds = st.integers(min_value=0, max_value=2 ** 32 - 1)


def rng_for(seed: int) -> random.Random:
    return random.Random(seed)


@pytest.fixture
def p221():
    return Params(2, 2, 1)


@pytest.fixture
def bakers(p221):
    """The baker's-map letters with their labeled sets."""
    p = p221
    L0 = LabeledGenSet(p, {shrubbery(0, "0", ""): 0, shrubbery(0, "1", ""): 1})
    L1 = LabeledGenSet(p, {shrubbery(0, "", "0"): 0, shrubbery(0, "", "1"): 1})
    root = LabeledGenSet(p, {shrubbery(0, "", ""): 0})
    return {"f": from_pair(L0, L1), "g": from_pair(L0, root), "L0": L0, "L1": L1, "root": root}


def pytest_terminal_summary(terminalreporter):
    import sys
    module = sys.modules.get("test_acceptance")
    if module and module.REPORT:
        terminalreporter.section("acceptance criteria")
        for line in sorted(module.REPORT):
            terminalreporter.write_line(line)
