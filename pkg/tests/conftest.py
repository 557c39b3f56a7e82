import numpy as np
import pytest
from hypothesis import settings, strategies as st

from massgrowth.laurent import LaurentMatrix, LaurentPoly
from massgrowth.dynamics import AutoEquivalence

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

polys = st.dictionaries(st.integers(-4, 4), st.integers(1, 3), max_size=3).map(LaurentPoly)


@st.composite
def matrices(draw, max_size: int = 3):
    n = draw(st.integers(1, max_size))
    return LaurentMatrix([[draw(polys) for _ in range(n)] for _ in range(n)])


@st.composite
def autoequivalences(draw, max_size: int = 5, max_shift: int = 5):
    n = draw(st.integers(1, max_size))
    perm = draw(st.permutations(range(n)))
    shifts = draw(st.lists(st.integers(-max_shift, max_shift), min_size=n, max_size=n))
    return AutoEquivalence(tuple(perm), tuple(shifts))


@st.composite
def stabilities(draw, size: int):
    from massgrowth.semisimple import StabilityCondition

    logs = draw(st.lists(st.floats(-1, 1), min_size=size, max_size=size))
    phases = draw(st.lists(st.floats(-1, 1), min_size=size, max_size=size))
    return StabilityCondition(tuple(np.exp(logs)), tuple(phases))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key, (ok, detail) in RESULTS.items():
        terminalreporter.write_line(f"criterion {key}: {'PASS' if ok else 'FAIL'} ({detail})")
