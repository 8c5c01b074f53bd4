from __future__ import annotations

import pytest

from geodex.search.engine import SearchSpec, enumerate_digraphs


@pytest.fixture(scope="session")
def cages():
    """The (2,2,+2)-digraphs, one per isomorphism class."""
    return enumerate_digraphs(SearchSpec(2, 2, 2)).digraphs


_ACCEPTANCE: dict[str, str] = {}


@pytest.fixture
def criterion(request):
    """Record one PASS/FAIL line for an acceptance criterion; the test body sets ``.detail``."""

    class Record:
        detail = ""

    rec = Record()
    yield rec
    rep = getattr(request.node, "rep_call", None)
    status = "PASS" if rep is not None and rep.passed else "FAIL"
    line = f"{status} {request.node.name}: {rec.detail}"
    _ACCEPTANCE[request.node.name] = line
    print(line)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance")
        for name in sorted(_ACCEPTANCE):
            terminalreporter.write_line(_ACCEPTANCE[name])
