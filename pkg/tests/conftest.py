import pytest

from pegasus_topo import Dims, chimera_graph, pegasus_graph

_acceptance_results = []


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): exit criterion")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    marker = report.user_properties and dict(report.user_properties).get("acceptance")
    if marker:
        _acceptance_results.append((marker[0], marker[1], report.outcome))


@pytest.fixture(autouse=True)
def _record_acceptance(request):
    m = request.node.get_closest_marker("acceptance")
    if m is not None:
        request.node.user_properties.append(("acceptance", m.args))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance_results:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, outcome in sorted(_acceptance_results):
        status = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"AC{number:<3} {status}  {title}")


@pytest.fixture(scope="session")
def pegasus2():
    return pegasus_graph(Dims(2, 2, 3))


@pytest.fixture(scope="session")
def pegasus5():
    return pegasus_graph(Dims(5, 5, 3))


@pytest.fixture(scope="session")
def chimera5():
    return chimera_graph(Dims(5, 5, 1))

