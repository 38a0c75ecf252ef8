import os

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from mfl.boundary import HyperbolicPair, TypeSet, enumerate_classes

SEED = int(os.environ.get("MFL_SEED", "0"))

settings.register_profile(
    "mfl",
    derandomize=True,
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("mfl")


def pytest_addoption(parser):
    parser.addoption("--mfl-seed", type=int, default=SEED,
                     help="seed for sampled type sets (also MFL_SEED)")


def pytest_report_header(config):
    return f"mfl seed: {config.getoption('--mfl-seed')} (hypothesis derandomized)"


@pytest.fixture(scope="session")
def seed(request):
    return request.config.getoption("--mfl-seed")


# -- strategies shared by the property tests --------------------------------

def small_pairs(g_max=5, n_max=3, g_min=0):
    cand = [(g, n) for g in range(g_min, g_max + 1) for n in range(n_max + 1)
            if 2 * g - 2 + n > 0]
    return st.sampled_from(cand).map(lambda gn: HyperbolicPair(*gn))


@st.composite
def pair_and_typeset(draw, g_max=5, n_max=3, g_min=0):
    p = draw(small_pairs(g_max, n_max, g_min))
    classes = enumerate_classes(p)
    chosen = draw(st.lists(st.sampled_from(classes), unique=True))
    return p, TypeSet(frozenset(chosen))


# -- acceptance summary -------------------------------------------------------

_ACCEPTANCE = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, text): acceptance criterion")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    marks = getattr(report, "criterion", None)
    if marks:
        _ACCEPTANCE[report.nodeid] = (marks, report.outcome)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    m = item.get_closest_marker("criterion")
    if m is not None:
        rep.criterion = (m.args[0], m.args[1])


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    by_num = {}
    for nodeid, ((num, text), outcome) in _ACCEPTANCE.items():
        entry = by_num.setdefault(num, [text, []])
        if outcome != "passed":
            entry[1].append(nodeid.split("::")[-1])
    terminalreporter.section("acceptance criteria")
    for num in sorted(by_num):
        text, failed = by_num[num]
        verdict = "FAIL" if failed else "PASS"
        extra = f"  [failing: {', '.join(failed)}]" if failed else ""
        terminalreporter.write_line(f"criterion {num:>2}: {verdict}  {text}{extra}")
