import pytest

from assortlab.enumeration import get_catalog


def pytest_addoption(parser):
    parser.addoption(
        "--run-extended",
        action="store_true",
        default=False,
        help="run the long n=9 table reproductions",
    )


def pytest_configure(config):
    config.addinivalue_line("markers", "extended: long-running n=9 reproduction (opt-in)")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--run-extended"):
        return
    skip = pytest.mark.skip(reason="needs --run-extended")
    for item in items:
        if "extended" in item.keywords:
            item.add_marker(skip)


@pytest.fixture(scope="session")
def catalog():
    return get_catalog


def g0a_edges():
    """Counterexample graph G_{0,A} in 1-based labels."""
    edges = [(1, 2), (1, 3), (2, 3)]
    edges += [(v, u) for v in (4, 5, 6) for u in (1, 2, 3)]
    edges += [(4, 7), (5, 7)]
    return edges


# Table of G_{0,A} rewirings: ((i, j), (k, l)) in 1-based labels, delta of (ik, jl)
G0A_TABLE = [
    (((4, 3), (5, 7)), -2), (((4, 2), (5, 7)), -2), (((4, 1), (5, 7)), -2),
    (((4, 7), (5, 3)), -2), (((4, 7), (5, 2)), -2), (((4, 7), (5, 1)), -2),
    (((4, 7), (6, 3)), -1), (((4, 7), (6, 2)), -1), (((4, 7), (6, 1)), -1),
    (((5, 7), (6, 3)), -1), (((5, 7), (6, 2)), -1), (((5, 7), (6, 1)), -1),
]


_CRITERIA: list = []


@pytest.fixture
def criterion():
    """Record ``(label, ok, detail)`` for the acceptance summary, then assert."""

    def record(label, ok, detail=""):
        line = f"{label}: {'PASS' if ok else 'FAIL'}" + (f" ({detail})" if detail else "")
        _CRITERIA.append(line)
        print(line)
        assert ok, line

    return record


def pytest_terminal_summary(terminalreporter):
    if _CRITERIA:
        terminalreporter.section("acceptance criteria")
        for line in _CRITERIA:
            terminalreporter.write_line(line)
