from hypothesis import settings

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


def pytest_terminal_summary(terminalreporter):
    from tests import test_acceptance as acc

    if acc.RESULTS:
        terminalreporter.section("acceptance criteria")
        for i in sorted(acc.RESULTS):
            terminalreporter.write_line(acc.verdict_line(i))
