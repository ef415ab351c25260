import os
import re
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from localdegree.ekl import add_observer, remove_observer  # noqa: E402
from localdegree.experiments import Audit  # noqa: E402

AUDIT_KEY = pytest.StashKey[Audit]()
RESULTS_KEY = pytest.StashKey[list]()


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")
    config.addinivalue_line("markers", "audit_last: runs after every other test")
    audit = Audit()
    config.stash[AUDIT_KEY] = audit
    config.stash[RESULTS_KEY] = []
    add_observer(audit)


def pytest_unconfigure(config):
    audit = config.stash.get(AUDIT_KEY, None)
    if audit is not None:
        remove_observer(audit)


def pytest_collection_modifyitems(session, config, items):
    # audits over "every instance computed in the suite" need the rest first
    items.sort(key=lambda item: item.get_closest_marker("audit_last") is not None)


@pytest.fixture
def session_audit(request) -> Audit:
    return request.config.stash[AUDIT_KEY]


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    if rep.when == "call" or (rep.when == "setup" and rep.skipped):
        if rep.passed:
            status = "PASS"
        elif rep.skipped:
            status = "SKIP"
        else:
            status = "FAIL"
        detail = dict(item.user_properties).get("detail", "")
        item.config.stash[RESULTS_KEY].append((mark.args[0], mark.args[1], status, detail))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    results = config.stash.get(RESULTS_KEY, [])
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    def order(r):
        num, suffix = re.fullmatch(r"(\d+)(.*)", str(r[0])).groups()
        return int(num), suffix

    for number, title, status, detail in sorted(results, key=order):
        line = f"[{status}] {number}. {title}"
        if detail:
            line += f": {detail}"
        terminalreporter.write_line(line)
