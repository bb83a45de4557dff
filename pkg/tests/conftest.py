import re

CRITERIA = {}


def pytest_runtest_logreport(report):
    m = re.search(r"test_criterion_(\d+)_", report.nodeid)
    if not m:
        return
    key = int(m.group(1))
    failed = report.failed
    if report.when == "call" or failed:
        prev = CRITERIA.get(key, (True, ""))
        CRITERIA[key] = (prev[0] and not failed, report.nodeid.split("::")[-1])


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(CRITERIA):
        ok, name = CRITERIA[key]
        terminalreporter.write_line(f"criterion {key}: {'PASS' if ok else 'FAIL'}  {name}")
