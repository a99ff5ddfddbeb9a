"""Collects the acceptance-criterion verdicts into the terminal summary."""

ACCEPTANCE_LINES: dict[str, str] = {}


def record(key: str, passed: bool, detail: str) -> None:
    prev = ACCEPTANCE_LINES.get(key)
    # a criterion with several parts fails if any part fails
    if prev is not None and prev.startswith("FAIL") and passed:
        return
    ACCEPTANCE_LINES[key] = f"{'PASS' if passed else 'FAIL'} criterion {key}: {detail}"


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES, key=lambda k: int(k.split()[0])):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])
