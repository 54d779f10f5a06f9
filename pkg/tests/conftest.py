import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

_ACCEPTANCE = []


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance" in report.nodeid:
        detail = dict(report.user_properties).get("detail", "")
        _ACCEPTANCE.append((report.nodeid.split("::")[-1], report.outcome, detail))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome, detail in _ACCEPTANCE:
        mark = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"{mark}  {name}  {detail}")
