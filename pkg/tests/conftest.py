import sys
from functools import lru_cache
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from chaincore.chain import GroupContext  # noqa: E402
from chaincore.corpus import read_manifest  # noqa: E402
from chaincore.groups import subgroup_lattice  # noqa: E402
from chaincore.specs import parse_group_spec  # noqa: E402

CORPUS = read_manifest()


@lru_cache(maxsize=None)
def group(spec: str):
    return parse_group_spec(spec)


@lru_cache(maxsize=None)
def context(spec: str) -> GroupContext:
    return GroupContext(group(spec))


@lru_cache(maxsize=None)
def lattice(spec: str):
    return subgroup_lattice(group(spec))


@pytest.fixture(scope="session")
def s3():
    return group("S3")


@pytest.fixture(scope="session")
def q8():
    return group("Q8")


def pytest_terminal_summary(terminalreporter):
    import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in test_acceptance.RESULTS:
            terminalreporter.write_line(line)
