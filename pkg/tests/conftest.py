from __future__ import annotations

from pathlib import Path

import pytest

from vdc.formats import parse_universe

SAMPLE = """
events i1 i2 i3
atoms a b c
set V = {a b c}
set H = {a b}
actual i1 = {a}
actual i2 = {a b}
type T = {a b}
ind h : {i1 i2} -> T = {i1: a, i2: b}
"""


@pytest.fixture
def u():
    return parse_universe(SAMPLE)


@pytest.fixture
def sample_dir(tmp_path: Path) -> Path:
    (tmp_path / "u.vdc").write_text(SAMPLE)
    return tmp_path


# one line per acceptance criterion at the end of the run

_criteria: dict[str, str] = {}


def pytest_runtest_logreport(report):
    name = report.nodeid.rsplit("::", 1)[-1]
    if "test_acceptance.py" not in report.nodeid or not name.startswith("test_criterion_"):
        return
    if report.when == "call" or (report.when == "setup" and report.failed):
        _criteria[name] = "PASS" if report.passed else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_criteria, key=lambda n: int(n.split("_")[2])):
        label = " ".join(name.split("_")[3:])
        number = name.split("_")[2]
        terminalreporter.write_line(f"{_criteria[name]}  criterion {number}: {label}")
