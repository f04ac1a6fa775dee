import acceptance_log


def pytest_terminal_summary(terminalreporter):
    lines = acceptance_log.summary_lines()
    if lines:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
