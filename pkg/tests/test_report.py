import io

import pytest

from errors import UsageError
from report import CheckResult, Report, StatusLog


def test_lines_are_sorted_by_check_id():
    report = Report()
    report.record("ac02-b", True)
    report.record("ac01-a", False, "mu(A)=1\n  mu(B)=0")
    assert report.machine_lines() == ["CHECK ac01-a FAIL mu(A)=1 mu(B)=0", "CHECK ac02-b PASS"]
    assert report.failures() == [CheckResult("ac01-a", False, "mu(A)=1 mu(B)=0")]
    assert report.exit_code == 1
    assert report.summary() == "1/2 checks passed; failed: ac01-a"


def test_all_passing():
    report = Report()
    report.record("x", True, "ignored")
    assert report.machine_lines() == ["CHECK x PASS"]
    assert report.exit_code == 0
    assert report.summary() == "1/1 checks passed"


def test_failure_needs_witness():
    with pytest.raises(UsageError):
        Report().record("x", False)


def test_duplicate_record():
    report = Report()
    report.record("x", True)
    with pytest.raises(UsageError):
        report.record("x", True)


def test_status_log():
    stream = io.StringIO()
    log = StatusLog(stream)
    log("hello")
    text = stream.getvalue()
    assert text.startswith("binmeasure @ ")
    assert text.endswith("s: hello\n")

    quiet = io.StringIO()
    StatusLog(quiet, enabled=False)("hello")
    assert quiet.getvalue() == ""
