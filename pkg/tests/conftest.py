from __future__ import annotations

import functools
import sys
import time
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, str(Path(__file__).parent))

from cubicdecomp.graph import Graph, enumerate_cubic  # noqa: E402

settings.register_profile("default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

# criterion number -> (passed, summary line); filled by test_acceptance
ACCEPTANCE: dict[int, tuple[bool, str]] = {}
# wall time spent enumerating the corpus, charged to criterion 1
CORPUS_SECONDS = [0.0]


@functools.cache
def cubic_corpus() -> dict[int, list[Graph]]:
    """Every connected cubic graph on 4..10 vertices, up to isomorphism."""
    start = time.monotonic()
    out = {n: enumerate_cubic(n) for n in (4, 6, 8, 10)}
    CORPUS_SECONDS[0] = time.monotonic() - start
    return out


@pytest.fixture(scope="session")
def corpus() -> dict[int, list[Graph]]:
    return cubic_corpus()


def pytest_terminal_summary(terminalreporter) -> None:
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        ok, line = ACCEPTANCE[num]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {num:2d}. {line}")
