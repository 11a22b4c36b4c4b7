import random
from collections import OrderedDict

import pytest


@pytest.fixture
def rng():
    return random.Random(20240517)


# ---- acceptance summary -------------------------------------------------

_criteria: "OrderedDict[int, dict]" = OrderedDict()


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("acceptance")
        if mark:
            num, title = mark.args
            _criteria.setdefault(num, {"title": title, "outcomes": []})


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    for key, value in report.user_properties:
        if key == "acceptance":
            _criteria[value]["outcomes"].append(report.outcome)


@pytest.hookimpl(tryfirst=True)
def pytest_runtest_setup(item):
    mark = item.get_closest_marker("acceptance")
    if mark:
        item.user_properties.append(("acceptance", mark.args[0]))


def pytest_terminal_summary(terminalreporter):
    if not _criteria or not any(c["outcomes"] for c in _criteria.values()):
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for num in sorted(_criteria):
        c = _criteria[num]
        if not c["outcomes"]:
            continue
        ok = all(o == "passed" for o in c["outcomes"])
        n_pass = sum(o == "passed" for o in c["outcomes"])
        tr.write_line(f"criterion {num:>2}: {'PASS' if ok else 'FAIL'}  ({n_pass}/{len(c['outcomes'])} checks)  {c['title']}")
