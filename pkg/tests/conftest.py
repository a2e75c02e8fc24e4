import sys

import pytest

from bicyclic.interassociate import InterassociateParams


@pytest.fixture(params=[(m, n) for m in range(3) for n in range(3)], ids=lambda p: f"m{p[0]}n{p[1]}")
def params(request):
    return InterassociateParams(*request.param)


def pytest_terminal_summary(terminalreporter):
    acceptance = sys.modules.get("test_acceptance")
    if acceptance is None or not acceptance.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(acceptance.RESULTS):
        terminalreporter.write_line(acceptance.RESULTS[number])
