def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in range(1, 9):
        # a criterion whose test raised before recording still gets a line
        terminalreporter.write_line(RESULTS.get(number, f"[FAIL] criterion {number}: raised before evaluation"))
