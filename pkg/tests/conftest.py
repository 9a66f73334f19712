import pytest

_ACCEPTANCE = {}


class AcceptanceLog:
    def __init__(self, key, title):
        self.key, self.title = key, title

    def record(self, ok, detail=""):
        _ACCEPTANCE[self.key] = (self.title, bool(ok), detail)
        return ok


@pytest.fixture
def criterion(request):
    marker = request.node.get_closest_marker("criterion")
    key, title = marker.args
    return AcceptanceLog(key, title)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(key, title): acceptance criterion reported in the summary")


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_ACCEPTANCE, key=lambda k: int(k.lstrip("AC"))):
        title, ok, detail = _ACCEPTANCE[key]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {key}  {title}" + (f"  [{detail}]" if detail else ""))
