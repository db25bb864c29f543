import functools

import pytest

from simplicial_flows import generators

ACCEPTANCE_LINES = []


def record_acceptance(number: int, ok: bool, detail: str):
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'} - {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)


@functools.lru_cache(maxsize=None)
def bundle(name: str):
    if name == "octahedron-split":
        return generators.gen_octahedron(split=True)
    return generators.GENERATORS[name]()


@pytest.fixture
def md():
    return bundle("md")


@pytest.fixture
def mdw():
    return bundle("mdw")


@pytest.fixture
def octahedron():
    return bundle("octahedron")


@pytest.fixture
def planar():
    return bundle("planar-cycle")
