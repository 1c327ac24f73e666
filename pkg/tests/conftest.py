import pytest

_acceptance: dict[str, tuple[str, str]] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    if not item.nodeid.split("::")[0].endswith("test_acceptance.py"):
        return
    doc = (getattr(item.function, "__doc__", None) or item.name).strip().splitlines()[0]
    if report.when == "call" or (report.when == "setup" and not report.passed):
        _acceptance[item.nodeid] = (doc, "PASS" if report.passed else "FAIL")


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for doc, status in _acceptance.values():
        terminalreporter.write_line(f"{status}  {doc}")
