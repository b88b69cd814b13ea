import pytest

_verdicts = pytest.StashKey[dict]()


@pytest.fixture(scope="session")
def acceptance_log(request):
    return request.config.stash.setdefault(_verdicts, {})


def pytest_terminal_summary(terminalreporter, config):
    verdicts = config.stash.get(_verdicts, {})
    if not verdicts:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(verdicts):
        terminalreporter.write_line(verdicts[num])
