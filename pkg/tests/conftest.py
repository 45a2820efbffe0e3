import random

import pytest
from hypothesis import strategies as st

from sysnet.model import SysNetDb

ACCEPTANCE_RESULTS = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_RESULTS):
        status, detail = ACCEPTANCE_RESULTS[key]
        terminalreporter.write_line(f"{status:<4}  {key}: {detail}")


@st.composite
def small_dbs(draw, max_pairs=8, max_id=6):
    ids = st.integers(1, max_id)
    side = st.frozensets(ids, min_size=1, max_size=max_id)
    pairs = draw(st.lists(st.tuples(side, side), min_size=0, max_size=max_pairs))
    return SysNetDb.from_sets("s", pairs)


def random_db(rng: random.Random, max_pairs=8, max_id=6, label="s") -> SysNetDb:
    # side sizes skewed towards 1-3 so rules of several sizes show up
    pairs = []
    ids = range(1, max_id + 1)

    def size():
        return min(max_id, rng.choice([1, 1, 2, 2, 3, rng.randint(1, max_id)]))

    for _ in range(rng.randint(0, max_pairs)):
        pairs.append((rng.sample(ids, size()), rng.sample(ids, size())))
    return SysNetDb.from_sets(label, pairs)


@pytest.fixture
def rng():
    return random.Random(20240601)
