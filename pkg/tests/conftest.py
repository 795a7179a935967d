import sys
from pathlib import Path

import pytest
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from whitneydual.poset import build_poset  # noqa: E402

ACCEPTANCE_LINES: list[str] = []


@st.composite
def graded_posets(draw, max_levels=4, max_width=3):
    """Random graded cover relations with a unique minimum."""
    sizes = draw(st.lists(st.integers(1, max_width), min_size=0, max_size=max_levels))
    levels = [[0]]
    nxt = 1
    for s in sizes:
        levels.append(list(range(nxt, nxt + s)))
        nxt += s
    covers = []
    for lo, hi in zip(levels, levels[1:]):
        for y in hi:
            down = draw(st.sets(st.sampled_from(lo), min_size=1))
            covers.extend((x, y) for x in sorted(down))
    return build_poset(covers, nxt)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def acceptance():
    def record(number: int, text: str, ok: bool):
        line = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {text}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        return ok

    return record
