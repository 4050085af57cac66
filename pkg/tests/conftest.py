import pytest

from chowcert import fano


@pytest.fixture(scope="session")
def pipeline_a():
    return fano.run_pipeline(fano.CHART_A, keep_discarded=True)


@pytest.fixture(scope="session")
def pipeline_b():
    return fano.run_pipeline(fano.CHART_B, keep_discarded=True)


def pytest_terminal_summary(terminalreporter):
    """Echo the acceptance lines so they land in captured test logs."""
    import sys

    mod = next((m for name, m in list(sys.modules.items()) if name.endswith("test_acceptance")), None)
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for number in sorted(results):
            terminalreporter.write_line(results[number])
