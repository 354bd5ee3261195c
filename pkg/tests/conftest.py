import os

import pytest

from brickcount import BrickShape, SearchLimits, count_table


def pytest_collection_modifyitems(config, items):
    if os.environ.get("BRICKCOUNT_TIER", "").lower() == "extended":
        return
    skip = pytest.mark.skip(reason="extended tier only; set BRICKCOUNT_TIER=extended")
    for item in items:
        if "extended" in item.keywords:
            item.add_marker(skip)


@pytest.fixture(scope="session")
def shape24():
    return BrickShape(2, 4)


@pytest.fixture(scope="session")
def ledgers5(shape24):
    """One desk-tier enumeration pass shared across the suite."""
    return count_table(shape24, 5, SearchLimits())


@pytest.fixture(scope="session")
def ledgers6(shape24):
    """The extended-tier n = 6 pass; minutes on a small machine."""
    return count_table(shape24, 6, SearchLimits())


@pytest.fixture(scope="session")
def c_counts7(shape24):
    """Bottleneck-free counts through 7 bricks (c_1..c_6); the long pole of
    the extended tier."""
    from brickcount.enumerator import bottleneck_free_counts

    return bottleneck_free_counts(shape24, 7, SearchLimits())
