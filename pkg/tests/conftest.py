from pathlib import Path

import pytest
from hypothesis import settings

from anaprop.data import load_relation

# Property tests do trivial work per example; drop the per-example deadline
# so a loaded machine cannot flake them.
settings.register_profile("anaprop", deadline=None)
settings.load_profile("anaprop")

DATA_DIR = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def coffee_table():
    """The four-row serve-a-coffee decision table."""
    return load_relation(DATA_DIR / "coffee.csv",
                         schema_file=DATA_DIR / "coffee.schema.json")


@pytest.fixture(scope="session")
def courses_relation():
    """Eight course/teacher/time rows with both captioned dependencies."""
    return load_relation(DATA_DIR / "courses.csv")
