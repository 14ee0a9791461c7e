import pytest

_acceptance: dict[str, str] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    label = getattr(getattr(item, "function", None), "criterion", None)
    if label is None:
        return
    callspec = getattr(item, "callspec", None)
    if callspec is not None:
        label = f"{label} [{callspec.id}]"
    if report.when == "call" or (report.when == "setup" and report.failed):
        _acceptance[label] = "PASS" if report.passed else "FAIL"


def pytest_terminal_summary(terminalreporter):
    # one line per acceptance criterion, in run order
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for label, status in _acceptance.items():
        terminalreporter.write_line(f"{status}  {label}")
