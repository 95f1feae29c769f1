import pytest

_criteria: dict[str, tuple[str, str]] = {}
_outcomes: dict[str, str] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(id, title): acceptance criterion checked by this test")


def pytest_collection_modifyitems(items):
    for item in items:
        m = item.get_closest_marker("criterion")
        if m is not None:
            _criteria[item.nodeid] = m.args


def pytest_runtest_logreport(report):
    if report.nodeid not in _criteria:
        return
    if report.when == "call" or report.failed:
        if _outcomes.get(report.nodeid) != "FAIL":
            _outcomes[report.nodeid] = "PASS" if report.passed else ("SKIP" if report.skipped else "FAIL")


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for nodeid, (cid, title) in sorted(_criteria.items(), key=lambda kv: _sort_key(kv[1][0])):
        if nodeid in _outcomes:
            param = nodeid[nodeid.index("["):] if "[" in nodeid else ""
            terminalreporter.write_line(f"{_outcomes[nodeid]} criterion {cid}{param}: {title}")


def _sort_key(cid: str):
    digits = "".join(c for c in cid if c.isdigit())
    return (int(digits), cid)
