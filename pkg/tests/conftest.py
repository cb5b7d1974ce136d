ACCEPTANCE_LINES: dict = {}


def record_acceptance(number: int, status: str, detail: str) -> None:
    ACCEPTANCE_LINES[number] = f"ACCEPTANCE {number}: {status}  {detail}"


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[n])
