def pytest_terminal_summary(terminalreporter, exitstatus, config):
    try:
        from tests.acceptance_log import RESULTS
    except Exception:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, note in RESULTS:
        status = "PASS" if ok else "FAIL"
        line = f"{status}  {name}"
        if note:
            line += f"  ({note})"
        terminalreporter.write_line(line)
