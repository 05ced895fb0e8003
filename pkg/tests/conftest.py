import os
import sys

# allow the suite to run from a plain checkout without an install
_SRC = os.path.join(os.path.dirname(__file__), os.pardir, "src")
if os.path.isdir(_SRC) and "weakeff" not in sys.modules:
    try:
        import weakeff  # noqa: F401
    except ImportError:
        sys.path.insert(0, os.path.abspath(_SRC))

ACCEPTANCE_LINES: list = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
