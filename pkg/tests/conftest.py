from helpers import ACCEPTANCE_LOG


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LOG:
        return
    write = terminalreporter.write_line
    write("")
    write("acceptance criteria")
    for num, title, ok, detail in sorted(ACCEPTANCE_LOG):
        verdict = "PASS" if ok else "FAIL"
        line = f"  [criterion {num}] {verdict} — {title}"
        if detail:
            line += f" ({detail})"
        write(line)
