import sys
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from adjulab.fields import GF, QQ  # noqa: E402
from adjulab.matrix import Matrix  # noqa: E402

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

FIELDS = [QQ, GF(2), GF(5), GF(7)]
FIELD_IDS = ["QQ", "GF2", "GF5", "GF7"]


@pytest.fixture(params=FIELDS, ids=FIELD_IDS)
def field(request):
    return request.param


def scalars(f, nonzero=False):
    if f is QQ:
        s = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))
    else:
        s = st.integers(0, f.p - 1).map(f)
    return s.filter(lambda x: x != 0) if nonzero else s


def fields():
    return st.sampled_from(FIELDS)


@st.composite
def field_and_scalars(draw, k=3, nonzero=False):
    f = draw(fields())
    return f, [draw(scalars(f, nonzero)) for _ in range(k)]


@st.composite
def square_matrices(draw, max_n=4, f=None, min_n=1):
    f = f or draw(fields())
    n = draw(st.integers(min_n, max_n))
    rows = [[draw(scalars(f)) for _ in range(n)] for _ in range(n)]
    return Matrix(rows, f)


def M(rows, f=QQ):
    return Matrix([[f(e) for e in r] for r in rows], f)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "ACCEPTANCE_LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
