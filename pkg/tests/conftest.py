import os
import sys

from hypothesis import settings

sys.path.insert(0, os.path.dirname(__file__))  # makes tests/support.py importable

# exact arithmetic on long periods is legitimately slow on some draws
settings.register_profile("default", deadline=None, max_examples=100)
settings.load_profile("default")


def pytest_terminal_summary(terminalreporter):
    from support import RESULTS
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(RESULTS, key=lambda l: int(l.split("criterion")[1].split(":")[0])):
            terminalreporter.write_line(line)
