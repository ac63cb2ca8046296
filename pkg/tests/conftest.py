from __future__ import annotations

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from veechladder.numeric import QuadExt, solve_lambda

settings.register_profile(
    "repo",
    derandomize=True,
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repo")

# (k, l) pairs with 0 < lambda < 1, one of them rational
PARAMS = [(2, 1), (3, 1), (5, 1), (5, 2), (7, 2), (13, 4)]


@pytest.fixture(params=PARAMS, ids=lambda kl: f"k{kl[0]}l{kl[1]}")
def params(request):
    return solve_lambda(*request.param)


@pytest.fixture
def golden():
    return solve_lambda(2, 1)


rationals = st.fractions(min_value=-50, max_value=50, max_denominator=30)
nonzero_rationals = rationals.filter(lambda f: f != 0)


def field_elements(D: int = 5):
    return st.builds(lambda a, b: QuadExt(a, b, D), rationals, rationals)


def nonzero_field_elements(D: int = 5):
    return field_elements(D).filter(lambda x: x != 0)


# -- acceptance reporting --------------------------------------------------------

_ACCEPTANCE: dict[int, dict] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(n, title): acceptance criterion n")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    n, title = marker.args
    entry = _ACCEPTANCE.setdefault(n, {"title": title, "passed": True, "ran": False})
    if rep.when == "call":
        entry["ran"] = True
    if rep.failed or (rep.when == "call" and rep.skipped):
        entry["passed"] = False


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_ACCEPTANCE):
        e = _ACCEPTANCE[n]
        ok = e["passed"] and e["ran"]
        terminalreporter.write_line(f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  {e['title']}")
