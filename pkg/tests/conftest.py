import pytest

from minhom.generators import DEFAULT_SEED


def pytest_addoption(parser):
    parser.addoption("--seed", type=int, default=DEFAULT_SEED, help="seed for the random corpora")


@pytest.fixture(scope="session")
def seed(request):
    return request.config.getoption("--seed")


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in module.format_results():
        terminalreporter.write_line(line)
