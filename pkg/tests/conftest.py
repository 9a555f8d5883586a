import pytest

_acceptance = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    crit = item.get_closest_marker("criterion")
    if crit is None:
        return
    num, name = crit.args
    if rep.when == "call" or (rep.when == "setup" and rep.failed):
        prev = _acceptance.get(num)
        ok = rep.passed and (prev is None or prev[1])
        dur = rep.duration + (prev[2] if prev else 0.0)
        _acceptance[num] = (name, ok, dur)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(num, name): acceptance criterion")


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance")
    for num in sorted(_acceptance):
        name, ok, dur = _acceptance[num]
        terminalreporter.write_line(f"ACCEPTANCE {num} {name}: {'PASS' if ok else 'FAIL'} ({dur:.2f}s)")
