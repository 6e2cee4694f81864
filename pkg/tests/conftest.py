import os

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from mulnpoly.mpoly import MPoly

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

VARS3 = ("x", "y", "z")


def mpolys(vars_=VARS3, ring=None, max_terms=30, max_exp=4, coeffs=st.integers(-50, 50)):
    """Random sparse polynomials with at most ``max_terms`` terms."""
    exps = st.tuples(*[st.integers(0, max_exp) for _ in vars_])
    terms = st.dictionaries(exps, coeffs.filter(bool), max_size=max_terms)
    if ring is None:
        return terms.map(lambda t: MPoly(vars_, t))
    return terms.map(lambda t: MPoly(vars_, t, ring))


@pytest.fixture(autouse=True)
def _isolated_cache(tmp_path, monkeypatch):
    monkeypatch.setenv("MULNPOLY_CACHE", str(tmp_path / "cache"))


# one status line per acceptance criterion, printed at the end of the run
ACCEPTANCE: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE, key=str):
        ok, detail = ACCEPTANCE[key]
        terminalreporter.write_line(f"criterion {key}: {'PASS' if ok else 'FAIL'} - {detail}")
