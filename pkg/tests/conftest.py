import random

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from arities.sampling import random_graph, random_path

settings.register_profile("default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@st.composite
def graphs(draw, max_vertices=6, max_pairs=7):
    seed = draw(st.integers(0, 2**32 - 1))
    return random_graph(random.Random(seed), max_vertices, max_pairs)


@st.composite
def graph_and_path(draw, max_vertices=6, max_len=8):
    seed = draw(st.integers(0, 2**32 - 1))
    rng = random.Random(seed)
    X = random_graph(rng, max_vertices, 7)
    return X, random_path(rng, X, max_len)


def pytest_configure(config):
    config.acceptance_lines = {}


@pytest.fixture
def acceptance(request):
    """Record the one-line verdict of an acceptance criterion."""

    def record(number: int, ok: bool, detail: str):
        request.config.acceptance_lines[number] = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
        print(request.config.acceptance_lines[number])

    return record


def pytest_terminal_summary(terminalreporter, config):
    lines = getattr(config, "acceptance_lines", {})
    if lines:
        terminalreporter.section("acceptance criteria")
        for n in sorted(lines):
            terminalreporter.line(lines[n])
