import pytest
from hypothesis import settings

settings.register_profile("ci", deadline=None, max_examples=80)
settings.load_profile("ci")

ACCEPTANCE = {}


def pytest_addoption(parser):
    parser.addoption("--seed", type=int, default=20240607,
                     help="seed for the generated word corpora")


@pytest.fixture(scope="session")
def seed(request):
    return request.config.getoption("--seed")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")
