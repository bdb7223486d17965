import sys
from datetime import datetime, timezone
from importlib import resources
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

FIXTURES = Path(__file__).parent / "fixtures"
SAMPLE = Path(str(resources.files("newsent") / "data" / "sample"))


def utc(*args) -> datetime:
    return datetime(*args, tzinfo=timezone.utc)


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture
def mini_lexicon():
    from newsent.lexicon import load_lexicon

    return load_lexicon(FIXTURES / "mini_lexicon.csv")


# -- acceptance summary ----------------------------------------------------------

_criteria: list[tuple[str, str]] = []


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(text): acceptance criterion under test")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    crit = dict(report.user_properties).get("criterion")
    if crit is not None:
        _criteria.append(("PASS" if report.passed else "FAIL", crit))


@pytest.fixture(autouse=True)
def _record_criterion(request):
    marker = request.node.get_closest_marker("criterion")
    if marker is not None:
        request.node.user_properties.append(("criterion", marker.args[0]))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for status, text in _criteria:
        terminalreporter.write_line(f"{status}  {text}")
