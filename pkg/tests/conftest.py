import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from conicbm.certificate import build_certificate, dumps  # noqa: E402
from conicbm.construct import assemble, build_params  # noqa: E402


@pytest.fixture(scope="session")
def main_params():
    return build_params(4, 5, 1873)


@pytest.fixture(scope="session")
def main_bundle(main_params):
    return assemble(main_params)


@pytest.fixture(scope="session")
def main_cert_text(main_params):
    return dumps(build_certificate(main_params))


@pytest.fixture(scope="session")
def toy_params():
    return build_params(2)


ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def acceptance_report():
    """record(k, ok, detail): one PASS/FAIL line per acceptance criterion."""

    def record(k: int, ok: bool, detail: str) -> bool:
        line = f"{'PASS' if ok else 'FAIL'} criterion {k}: {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
