import pytest

from banach_constants import DayJamesSpace, EuclideanSpace, LpSpace, SearchConfig

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def fast_cfg():
    return SearchConfig(coarse_grid=256, refine_rounds=40)


@pytest.fixture(scope="session")
def spaces():
    return {
        "euclid": EuclideanSpace(),
        "l1": LpSpace(1.0),
        "l4": LpSpace(4.0),
        "linf": LpSpace(float("inf")),
        "dj": DayJamesSpace(),
    }


@pytest.fixture(autouse=True)
def _isolated_cache(tmp_path, monkeypatch):
    monkeypatch.setenv("BANACH_DATA_DIR", str(tmp_path / "cache"))


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
