from collections import defaultdict

import pytest

CRITERIA = {
    1: "update-rule oracles",
    2: "hand-traced transcript",
    3: "invariant matrix across all algorithms",
    4: "sphere convergence at desk scale",
    5: "MFDO beats FDO on Rastrigin (TF9)",
    6: "Wilcoxon exact and approximate p-values",
    7: "Sobol beats uniform on star discrepancy",
    8: "Levy tail heaviness",
    9: "bin packing validity and perfect-fit solve",
    10: "benchmark suite integrity",
    11: "CLI byte-identical reproducibility",
    12: "adaptive with gates disabled equals FDO",
}

_outcomes = defaultdict(list)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and not report.passed):
        _outcomes[marker.args[0]].append(report.passed)


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(CRITERIA):
        results = _outcomes.get(n)
        if not results:
            status = "NOT RUN"
        else:
            status = "PASS" if all(results) else "FAIL"
        terminalreporter.write_line(f"criterion {n:2d} {status:7s} {CRITERIA[n]}")
