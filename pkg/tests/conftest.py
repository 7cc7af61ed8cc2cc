import random

import pytest

from torus_curves.fgword import LETTERS, cyclic_canonical, is_primitive


def random_primitive_words(count: int, max_length: int, seed: int) -> list:
    """Canonical primitive cyclic words drawn with a fixed seed."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = rng.randint(1, max_length)
        w = [rng.choice(LETTERS)]
        while len(w) < n:
            x = rng.choice(LETTERS)
            if x != w[-1] ^ 2:
                w.append(x)
        if len(w) > 1 and w[-1] == w[0] ^ 2:
            continue
        cw = cyclic_canonical(w)
        if is_primitive(cw):
            out.append(cw)
    return out


@pytest.fixture(scope="session")
def primitive_sample():
    return random_primitive_words(1000, 10, seed=20240611)


class CensusCache:
    """Census records per length, computed once per test session."""

    def __init__(self):
        self._data = {}

    def __call__(self, length: int):
        from torus_curves.census import census_records, default_jobs

        if length not in self._data:
            self._data[length] = census_records(length, jobs=min(4, default_jobs()))
        return self._data[length]


@pytest.fixture(scope="session")
def census_cache():
    return CensusCache()


ACCEPTANCE_RESULTS: dict[int, str] = {}


@pytest.fixture
def criterion():
    """Record a pass/fail line for an acceptance criterion."""

    def record(number: int, title: str, ok: bool, detail: str = "") -> None:
        line = f"criterion {number:2d} {'PASS' if ok else 'FAIL'}  {title}"
        if detail:
            line += f"  ({detail})"
        ACCEPTANCE_RESULTS[number] = line
        print(line)
        assert ok, line

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_RESULTS:
        terminalreporter.section("acceptance criteria")
        for number in sorted(ACCEPTANCE_RESULTS):
            terminalreporter.write_line(ACCEPTANCE_RESULTS[number])
