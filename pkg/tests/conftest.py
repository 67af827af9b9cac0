import sys

import numpy as np
from hypothesis import strategies as st

from quiver_spectra.quiver import Quiver


@st.composite
def quivers(draw, max_n=6, max_mult=3, max_loops=2, loops=True):
    """Random quivers, multiple connections and loops included."""
    n = draw(st.integers(1, max_n))
    mults = {}
    for u in range(1, n + 1):
        for v in range(u, n + 1):
            top = max_loops if u == v else max_mult
            if u == v and not loops:
                continue
            k = draw(st.integers(0, top))
            if k:
                mults[(u, v)] = k
    return Quiver.from_multiplicities(n, mults)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not getattr(mod, "RESULTS", None):
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
