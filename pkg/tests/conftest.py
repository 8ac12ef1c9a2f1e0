import json
import os
import random

import pytest
from hypothesis import settings

from klschow.harness import random_graded_poset
from klschow.verify import FIXTURE_DIR

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


def fixture_path(name: str) -> str:
    return os.path.join(FIXTURE_DIR, name + ".json")


def load_fixture(name: str) -> dict:
    with open(fixture_path(name)) as fh:
        return json.load(fh)


def seeded_posets(count: int, seed: int = 2024, max_rank: int = 6, max_width: int = 3):
    rng = random.Random(seed)
    return [random_graded_poset(rng, max_rank=max_rank, max_width=max_width) for _ in range(count)]


@pytest.fixture
def fixtures_dir():
    return FIXTURE_DIR


# (number, verdict, line) tuples filled in by test_acceptance
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for _, _, line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
