import pytest

from t1kit.evaluator import load_stdlib

# criterion number -> (passed, description); filled by test_acceptance
ACCEPTANCE = {}


@pytest.fixture(scope="session")
def defs():
    return load_stdlib()


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, desc = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {desc}")
