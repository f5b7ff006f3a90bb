import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

FIXTURES = Path(__file__).parent / "fixtures"

_ACCEPTANCE: dict[int, tuple[str, str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): an acceptance criterion")


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    number, title = marker.args
    if call.when == "call" or (call.when == "setup" and call.excinfo is not None):
        outcome = "PASS" if call.excinfo is None else "FAIL"
        detail = getattr(item, "acceptance_detail", "")
        _ACCEPTANCE[number] = (outcome, title, detail)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        outcome, title, detail = _ACCEPTANCE[number]
        line = f"criterion {number:2d}: {outcome}  {title}"
        if detail:
            line += f"  [{detail}]"
        terminalreporter.write_line(line)
