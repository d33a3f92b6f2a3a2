import pytest

_ACCEPTANCE: dict[str, str] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _ACCEPTANCE[name] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    grouped: dict[int, list[tuple[str, str]]] = {}
    for name, outcome in _ACCEPTANCE.items():
        base = name.split("[")[0]
        grouped.setdefault(int(base.split("_")[2]), []).append((base, outcome))
    terminalreporter.section("acceptance criteria")
    for number in sorted(grouped):
        cases = grouped[number]
        passed = sum(outcome == "passed" for _, outcome in cases)
        verdict = "PASS" if passed == len(cases) else "FAIL"
        terminalreporter.write_line(f"{verdict}  {cases[0][0]}  ({passed}/{len(cases)} cases)")


@pytest.fixture(autouse=True)
def _fresh_reduction():
    from poisson_noether.ratfunc import reduction

    with reduction(True):
        yield
