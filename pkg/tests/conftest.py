import os
import sys

from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

from report import CRITERIA  # noqa: E402

settings.register_profile(
    "default",
    deadline=None,
    max_examples=150,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(CRITERIA):
        parts = CRITERIA[number]
        ok = all(p[1] for p in parts)
        details = "; ".join(f"{p[0]}: {'ok' if p[1] else 'failed'}{' (' + p[2] + ')' if p[2] else ''}" for p in parts)
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'} - {details}")
