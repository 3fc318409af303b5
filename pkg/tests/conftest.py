import sys
from pathlib import Path

import pytest
from hypothesis import strategies as st

from votemle.core import CandidateSet, Profile

ROOT = Path(__file__).resolve().parent.parent
DATA = ROOT / "data"


@pytest.fixture
def data_dir() -> Path:
    return DATA


@st.composite
def profiles(draw, min_m=1, max_m=6, min_n=0, max_n=20):
    """Profiles as (ranking, count) lines; the same ranking may repeat."""
    m = draw(st.integers(min_m, max_m))
    n = draw(st.integers(min_n, max_n))
    lines = []
    while n > 0:
        k = draw(st.integers(1, n))
        lines.append((tuple(draw(st.permutations(range(m)))), k))
        n -= k
    return Profile(CandidateSet.default(m), tuple(lines))


def pytest_terminal_summary(terminalreporter):
    test_acceptance = sys.modules.get("tests.test_acceptance")
    if test_acceptance is None or not test_acceptance.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(test_acceptance.RESULTS):
        ok, line = test_acceptance.RESULTS[number]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} [{number:>2}] {line}")
