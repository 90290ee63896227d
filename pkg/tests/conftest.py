import os

os.environ.setdefault("COSIGN_KIT_DEBUG", "1")

import pytest  # noqa: E402

from cosign_kit.core import Family, Signing  # noqa: E402

# Lines pushed by the acceptance tests, echoed at the end of the run.
ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def worked_family() -> Family:
    """Nine elements around a circle, four intervals; v3, v6, v9 are the negatives."""
    return Family.from_lists(9, [[0, 8], [0, 1, 2], [3, 4, 5], [0, 3, 4, 5, 6, 7, 8]])


@pytest.fixture
def worked_signing() -> Signing:
    return Signing.parse("++-++-++-")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
