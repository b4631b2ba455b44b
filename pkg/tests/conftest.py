import random
from fractions import Fraction
from itertools import combinations

import pytest

from typeb_free.dual import DualScalar

POOL = [Fraction(p, q) for p in range(-5, 6) for q in (1, 2, 3, 7)]

_ACCEPTANCE_LINES: list[str] = []


def record_acceptance(line: str) -> None:
    _ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def all_set_partitions(elems):
    """Every set partition of ``elems`` (independent of the library)."""
    elems = list(elems)
    if not elems:
        yield []
        return
    first, rest = elems[0], elems[1:]
    for part in all_set_partitions(rest):
        yield [[first]] + part
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1 :]


def crossing_by_definition(blocks, position=lambda v: v) -> bool:
    """a < b < c < d with a, c in one block and b, d in another."""
    label = {v: k for k, b in enumerate(blocks) for v in b}
    pts = sorted(label, key=position)
    for a, b, c, d in combinations(pts, 4):
        if label[a] == label[c] and label[b] == label[d] and label[a] != label[b]:
            return True
    return False


@pytest.fixture
def rng():
    return random.Random(1234)


def rand_q(rng):
    return rng.choice(POOL)


def rand_dual(rng, invertible=False):
    while True:
        d = DualScalar(rand_q(rng), rand_q(rng))
        if not invertible or d.x != 0:
            return d
