import math

import numpy as np
import pytest
from hypothesis import strategies as st

from swisscheese.cheese import DiscAssignment
from swisscheese.geometry import complement, open_disc

_acceptance_results = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        label = marker.args[0] if marker.args else item.name
        _acceptance_results.append((label, report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance_results:
        return
    terminalreporter.section("acceptance criteria")
    for label, outcome in _acceptance_results:
        status = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"[{status}] {label}")


def sample_in_disc(rng, cx, cy, r, n, shrink=1 - 1e-9):
    """Uniform points strictly inside the disc ((cx, cy), r)."""
    rho = r * shrink * np.sqrt(rng.uniform(0, 1, n))
    theta = rng.uniform(0, 2 * math.pi, n)
    return np.column_stack([cx + rho * np.cos(theta), cy + rho * np.sin(theta)])


def make_assignment(outer, *discs):
    entries = {0: complement(*outer)}
    for k, d in enumerate(discs, start=1):
        entries[k] = open_disc(*d)
    return DiscAssignment(entries)


coords = st.floats(-10, 10, allow_nan=False, allow_infinity=False)
radii = st.floats(0.01, 5, allow_nan=False, allow_infinity=False)
open_discs = st.builds(open_disc, coords, coords, radii)


@st.composite
def fh_assignments(draw, max_discs=12):
    """Random assignments with positive slack, biased towards collisions."""
    outer_r = draw(st.floats(1, 10))
    n = draw(st.integers(0, max_discs))
    raw = draw(st.lists(st.floats(0.05, 1), min_size=n, max_size=n))
    frac = draw(st.floats(0.1, 0.95))
    scale = outer_r * frac / sum(raw) if raw else 0
    discs = []
    for w in raw:
        if discs and draw(st.booleans()) and draw(st.booleans()):
            discs.append(discs[draw(st.integers(0, len(discs) - 1))])
            continue
        x = draw(st.floats(-outer_r * 1.2, outer_r * 1.2))
        y = draw(st.floats(-outer_r * 1.2, outer_r * 1.2))
        discs.append((x, y, w * scale))
    total = math.fsum(d[2] for d in discs)
    if total >= outer_r:
        discs = [(x, y, r * 0.9 * outer_r / total) for x, y, r in discs]
    return make_assignment((0.0, 0.0, outer_r), *discs)
