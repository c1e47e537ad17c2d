import os
import pathlib
import random
from fractions import Fraction as Fr

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from pmlevels.generators import random_valid_space
from pmlevels.levels import LevelFamily
from pmlevels.probmet import FinitePMSpace
from pmlevels.tnorms import TNorm

for _name, _n in (("default", 40), ("ci", 200), ("quick", 5)):
    settings.register_profile(_name, max_examples=_n, deadline=None,
                              suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

SAMPLES = pathlib.Path(__file__).resolve().parent.parent / "samples"


def sample(name):
    return str(SAMPLES / name)


@pytest.fixture
def pm2():
    return FinitePMSpace.build(["x", "y"], "product", {("x", "y"): [(2, Fr(1, 2)), (5, 1)]})


@pytest.fixture
def pm2p():
    return FinitePMSpace.build(["x", "y"], "product", {("x", "y"): [(3, Fr(1, 2)), (6, 1)]})


@pytest.fixture
def pm2pp():
    return FinitePMSpace.build(["x", "y"], "product", {("x", "y"): [(4, Fr(1, 2)), (7, 1)]})


@pytest.fixture
def pm3bad():
    return FinitePMSpace.build(["x", "y", "z"], "product", {
        ("x", "y"): [(1, 1)], ("y", "z"): [(1, 1)], ("x", "z"): [(10, 1)]})


@pytest.fixture
def f2():
    return LevelFamily.build(["x", "y"], "product", {("x", "y"): [(Fr(1, 2), 5), (1, 2)]})


tnorms = st.sampled_from(list(TNorm))
seeds = st.integers(min_value=0, max_value=2 ** 32 - 1)


@st.composite
def valid_spaces(draw, max_points=5, max_jumps=6, with_inf=None):
    seed = draw(seeds)
    t = draw(tnorms)
    rng = random.Random(seed)
    inf = draw(st.booleans()) if with_inf is None else with_inf
    return random_valid_space(rng, draw(st.integers(1, max_points)), max_jumps, t,
                              with_inf=inf, mutate=draw(st.booleans()))


def dyadics(den=64, zero=False):
    lo = 0 if zero else 1
    return st.integers(lo, den).map(lambda k: Fr(k, den))


# one line per acceptance criterion, printed after the run
ACCEPTANCE_LINES: list = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
