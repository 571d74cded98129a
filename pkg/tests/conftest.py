import numpy as np
import pytest
from hypothesis import settings

settings.register_profile("default", deadline=None, max_examples=100)
settings.load_profile("default")


def naive_box_count(cells: np.ndarray, box: int) -> int:
    """Brute-force scan of origin-anchored box x box blocks."""
    side = cells.shape[0]
    n = 0
    for bi in range(0, side, box):
        for bj in range(0, side, box):
            if cells[bi:bi + box, bj:bj + box].any():
                n += 1
    return n


def pytest_configure(config):
    config.acceptance_lines = []


@pytest.fixture
def acceptance(request):
    """Record one acceptance line, then assert it."""

    def check(number: int, name: str, ok: bool, detail: str) -> None:
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {number:>2}: {name} -- {detail}"
        request.config.acceptance_lines.append(line)
        print(line)
        assert ok, line

    return check


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = getattr(config, "acceptance_lines", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split("criterion")[1].split(":")[0])):
            terminalreporter.write_line(line)
