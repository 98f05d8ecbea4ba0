import os
import sys

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from graphqfi.graph import Graph

settings.register_profile("default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", max_examples=200, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@st.composite
def connected_graphs(draw, min_n=2, max_n=7):
    """Random spanning tree plus a random subset of the other edges."""
    n = draw(st.integers(min_n, max_n))
    edges = set()
    for v in range(1, n):
        u = draw(st.integers(0, v - 1))
        edges.add((u, v))
    others = [(a, b) for a in range(n) for b in range(a + 1, n) if (a, b) not in edges]
    if others:
        extra = draw(st.lists(st.sampled_from(others), max_size=len(others), unique=True))
        edges |= set(extra)
    return Graph.from_edges(n, sorted(edges))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "REPORT_LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
