import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

_criteria: dict = {}


def pytest_addoption(parser):
    parser.addoption("--slow", action="store_true", default=False, help="also run the slow tier")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long computations, run with --slow")
    config.addinivalue_line("markers", "criterion(n, label): acceptance criterion covered by the test")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--slow"):
        return
    skip = pytest.mark.skip(reason="slow tier (use --slow)")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    n, label = mark.args
    entry = _criteria.setdefault(n, {"label": label, "status": []})
    if rep.when == "call" or (rep.when == "setup" and rep.skipped):
        entry["status"].append("skip" if rep.skipped else ("pass" if rep.passed else "fail"))
    elif rep.failed:
        entry["status"].append("fail")


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        st = _criteria[n]["status"]
        if "fail" in st:
            verdict = "FAIL"
        elif st and all(s == "skip" for s in st):
            verdict = "SKIPPED"
        else:
            verdict = "PASS"
        ran = sum(s == "pass" for s in st)
        terminalreporter.write_line(f"criterion {n}: {verdict}  ({_criteria[n]['label']}; {ran}/{len(st)} checks passed)")
