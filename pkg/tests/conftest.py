import pytest

from meyniel_lab import fixtures
from meyniel_lab.constructions import build_instance

ACCEPTANCE_RESULTS: dict[str, tuple[bool, str]] = {}


@pytest.fixture(scope="session")
def gamma3_p3():
    return build_instance("gamma3", p=3)


@pytest.fixture(scope="session")
def gamma3_p5():
    return build_instance("gamma3", p=5)


@pytest.fixture(scope="session")
def gamma2_32():
    return build_instance("gamma2", p=3, k=2)


@pytest.fixture(scope="session")
def gamma1_200():
    return build_instance("gamma1", n=200)


@pytest.fixture(scope="session")
def small_fixture_graphs():
    graphs = [fixtures.path(n) for n in (2, 3, 4, 7)]
    graphs += [fixtures.cycle(n) for n in (3, 4, 5, 6, 8)]
    graphs += [fixtures.complete(n) for n in (1, 2, 4, 6)]
    graphs += [fixtures.star(3), fixtures.petersen(), fixtures.remove_vertex(fixtures.petersen(), 0)]
    return [g for g in graphs if g.n >= 1]


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_RESULTS, key=lambda s: int(s.split()[0])):
        ok, detail = ACCEPTANCE_RESULTS[key]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {key}: {detail}")
