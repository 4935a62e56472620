from __future__ import annotations

import pytest
from hypothesis import settings

from zipcalc import (
    MatrixGroup,
    PermutationGroup,
    WittZipConfig,
    build_small_zoo,
    build_witt_zip,
    zip_classes,
)

settings.register_profile("ci", max_examples=25, deadline=None, derandomize=True)
settings.load_profile("ci")


# one line per acceptance criterion, printed at the end of the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def s3():
    return PermutationGroup.symmetric(3)


@pytest.fixture(scope="session")
def s4():
    return PermutationGroup.symmetric(4)


@pytest.fixture(scope="session")
def gl2f2():
    return MatrixGroup.general_linear(2, 2)


@pytest.fixture(scope="session")
def zoo():
    return build_small_zoo()


@pytest.fixture(scope="session")
def witt22():
    return build_witt_zip(WittZipConfig(2, 2))


@pytest.fixture(scope="session")
def witt23():
    return build_witt_zip(WittZipConfig(2, 3))


@pytest.fixture(scope="session")
def witt33():
    return build_witt_zip(WittZipConfig(3, 3))


@pytest.fixture(scope="session")
def acceptance_data(zoo, witt22, witt23, witt33):
    """Every datum the acceptance criteria quantify over."""
    data = [(f"zoo:{name}", datum) for name, datum in zoo.items()]
    data.append(("witt-p2-n2", witt22[0]))
    data.append(("witt-p2-n3", witt23[0]))
    data.append(("witt-p3-n3", witt33[0]))
    return data


@pytest.fixture(scope="session")
def acceptance_classes(acceptance_data):
    return {name: zip_classes(datum) for name, datum in acceptance_data}
