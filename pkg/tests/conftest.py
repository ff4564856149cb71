from importlib import resources

import pytest
from hypothesis import settings

from flagstab.liealg import gl, sl2

settings.register_profile("exact", deadline=None)
settings.load_profile("exact")

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def gl2():
    return gl(2)


@pytest.fixture(scope="session")
def gl3():
    return gl(3)


@pytest.fixture(scope="session")
def sl2_pair():
    return sl2()


@pytest.fixture
def fixture_path():
    def get(name: str) -> str:
        return str(resources.files("flagstab") / "fixtures" / name)
    return get


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
