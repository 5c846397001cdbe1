import pytest

# filled by the acceptance module: (number, passed, description, seconds, note)
ACCEPTANCE_RESULTS: list[tuple] = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number, passed, desc, seconds, note in sorted(ACCEPTANCE_RESULTS):
        line = f"criterion {number}: {'PASS' if passed else 'FAIL'}  {desc}  ({seconds:.2f}s)"
        if note:
            line += f"  [{note}]"
        terminalreporter.write_line(line)


@pytest.fixture
def record_criterion():
    def _record(number, passed, desc, seconds, note=""):
        ACCEPTANCE_RESULTS.append((number, passed, desc, seconds, note))
        print(f"criterion {number}: {'PASS' if passed else 'FAIL'}  {desc}  ({seconds:.2f}s)"
              + (f"  [{note}]" if note else ""))

    return _record
