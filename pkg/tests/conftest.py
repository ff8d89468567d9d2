from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance")
        for name in sorted(RESULTS, key=lambda s: int(s[2:].rstrip("abcd") or 0)):
            ok, detail = RESULTS[name]
            terminalreporter.write_line(f"{name} {'PASS' if ok else 'FAIL'} {detail}")
