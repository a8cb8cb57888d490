import pytest

from livsic.curves import builtin_curve, builtin_example
from livsic.exterior import GammaTensor


@pytest.fixture
def twisted_cubic():
    return builtin_example("twisted_cubic")


@pytest.fixture
def line_tensor():
    """d=2, n=1 tensor whose degeneracy set is the line x_2 = 0."""
    return GammaTensor(2, 1, 1, {(0, 1): [[1.0]]})


@pytest.fixture
def pick_curve():
    return builtin_curve("pick_cubic")


def random_gamma(rng, d=3, k=1, n=2, complex_=False):
    from livsic.exterior import subsets

    ent = {}
    for I in subsets(d, k + 1):
        m = rng.standard_normal((n, n))
        if complex_:
            m = m + 1j * rng.standard_normal((n, n))
        ent[I] = m
    return GammaTensor(d, k, n, ent)


# ---- acceptance reporting -------------------------------------------------

_CRITERIA: dict[int, dict] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_runtest_makereport(item, call):
    mark = item.get_closest_marker("criterion")
    if mark is None or call.when != "call":
        return
    number, title = mark.args
    entry = _CRITERIA.setdefault(number, {"title": title, "passed": True, "tests": 0})
    entry["tests"] += 1
    if call.excinfo is not None:
        entry["passed"] = False


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        e = _CRITERIA[number]
        verdict = "PASS" if e["passed"] else "FAIL"
        terminalreporter.write_line(f"criterion {number}: {verdict}  {e['title']} ({e['tests']} checks)")
