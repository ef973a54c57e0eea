import sys

import pytest
from hypothesis import strategies as st

from ripp.core import Problem, Specification

# worked example: $1000 after a year or $2500 after two, riskless rate 3%
WORKED = dict(t0=0.0, t_a=1.0, t_b=2.0, dx_a=1000.0, dx_b=2500.0)
WORKED_RATE = 0.03


@pytest.fixture
def case_d():
    return Specification.for_case("D", WORKED_RATE)


@pytest.fixture
def worked_poor():
    return Problem(wealth0=500.0, **WORKED)


@pytest.fixture
def worked_rich():
    return Problem(wealth0=5500.0, **WORKED)


pos_time = st.floats(min_value=0.01, max_value=20.0, allow_nan=False)
pos_money = st.floats(min_value=0.01, max_value=1e4, allow_nan=False)
rates = st.floats(min_value=-0.2, max_value=0.5, allow_nan=False)
wealths = st.floats(min_value=1.0, max_value=1e6, allow_nan=False)


@st.composite
def problems(draw, wealth=wealths):
    H = draw(pos_time)
    D = draw(pos_time)
    dx_a = draw(pos_money)
    premium = draw(st.floats(min_value=1e-3, max_value=10.0))
    t0 = draw(st.floats(min_value=-10.0, max_value=10.0))
    return Problem.from_horizon(H, D, dx_a, dx_a * (1 + premium), draw(wealth), t0)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
