"""Exhaustive enumeration of conjugacy classes by word length.

Classes are generated directly in canonical form with the
Fredricksen-Kessler-Maiorana recursion, restricted to reduced words: every
prefix of a least rotation is a prenecklace, and a prenecklace of length L
whose Lyndon prefix has length p is a least rotation iff p divides L (and is
aperiodic iff p == L). The reduction constraint only prunes branches, so each
class appears exactly once and in lexicographic order.
"""

from __future__ import annotations

import json
import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator

from . import __version__
from .fgword import CyclicWord, is_essential
from .linking import self_intersection

DEFAULT_CAP = 14
SHARD_DEPTH = 3


class BudgetExceeded(ValueError):
    pass


def _prefixes(depth: int) -> list[tuple[tuple[int, ...], int]]:
    """Reduced prenecklaces of the given length, with their Lyndon period."""
    out = []

    def rec(a: list[int], p: int) -> None:
        t = len(a)
        if t == depth:
            out.append((tuple(a), p))
            return
        lo = a[t - p] if t else 0
        for x in range(lo, 4):
            if t and x == a[-1] ^ 2:
                continue
            a.append(x)
            rec(a, p if t and x == lo else t + 1)
            a.pop()

    rec([], 1)
    return out


def _walk(L: int, prefix: tuple[int, ...], p: int, emit) -> None:
    a = list(prefix)

    def rec(p: int) -> None:
        t = len(a)
        if t == L:
            if L % p == 0 and a[-1] != a[0] ^ 2:
                emit(tuple(a), p)
            return
        lo = a[t - p]
        prev_inv = a[-1] ^ 2
        for x in range(lo, 4):
            if x == prev_inv:
                continue
            a.append(x)
            rec(p if x == lo else t + 1)
            a.pop()

    if len(a) == L:
        if L % p == 0 and a[-1] != a[0] ^ 2:
            emit(tuple(a), p)
        return
    rec(p)


def _shards(L: int) -> list[tuple[tuple[int, ...], int]]:
    return _prefixes(min(SHARD_DEPTH, L))


def enumerate_classes(L: int) -> Iterator[CyclicWord]:
    """Every cyclically reduced circular word of length L once, in canonical order."""
    if L < 1:
        raise ValueError("length must be positive")
    for prefix, p in _shards(L):
        found: list[tuple[int, ...]] = []
        _walk(L, prefix, p, lambda w, _p: found.append(w))
        yield from (CyclicWord(w) for w in found)


def enumerate_positioned(n: int) -> Iterator[tuple[int, ...]]:
    """Every cyclically reduced word of length n (rotations distinct)."""
    if n < 1:
        raise ValueError("length must be positive")
    a: list[int] = []

    def rec():
        if len(a) == n:
            if a[-1] != a[0] ^ 2:
                yield tuple(a)
            return
        for x in range(4):
            if a and x == a[-1] ^ 2:
                continue
            a.append(x)
            yield from rec()
            a.pop()

    yield from rec()


@dataclass(frozen=True)
class CensusRecord:
    word: CyclicWord
    length: int
    primitive: bool
    essential: bool
    self_intersection: int | None

    def to_tsv(self) -> str:
        si = "-" if self.self_intersection is None else str(self.self_intersection)
        return f"{self.length}\t{self.word}\t{int(self.primitive)}\t{int(self.essential)}\t{si}"

    def to_json(self) -> dict:
        return {
            "word": str(self.word),
            "length": self.length,
            "primitive": self.primitive,
            "essential": self.essential,
            "self_intersection": self.self_intersection,
        }


@dataclass
class CensusTable:
    """Histogram of one length.

    ``counts`` maps ``(self_intersection, primitive, essential)`` to a class
    count, with ``None`` as the self-intersection of non-primitive classes.
    ``powers`` maps ``(root self-intersection, root essential, exponent)`` for
    the non-primitive classes.
    """

    length: int
    counts: Counter = field(default_factory=Counter)
    powers: Counter = field(default_factory=Counter)

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    @property
    def primitive_total(self) -> int:
        return sum(c for (_, prim, _), c in self.counts.items() if prim)

    def primitive(self, si: int, essential: bool = True) -> int:
        return self.counts[(si, True, essential)]

    @property
    def simple_multicurves(self) -> int:
        """Essential classes that are powers (including first powers) of simple essential curves."""
        powers = sum(c for (si, ess, _), c in self.powers.items() if si == 0 and ess)
        return self.primitive(0) + powers

    @property
    def si1_all(self) -> int:
        """Primitive si-1 classes plus squares of primitive simple essential classes."""
        squares = self.powers[(0, True, 2)]
        return self.primitive(1) + squares

    def merge(self, other: CensusTable) -> CensusTable:
        if other.length != self.length:
            raise ValueError("cannot merge tables of different lengths")
        return CensusTable(self.length, self.counts + other.counts, self.powers + other.powers)

    def to_json(self) -> dict:
        rows = [
            {"self_intersection": si, "primitive": prim, "essential": ess, "count": c}
            for (si, prim, ess), c in sorted(self.counts.items(), key=_count_key)
        ]
        return {
            "length": self.length,
            "total": self.total,
            "primitive_total": self.primitive_total,
            "simple_multicurves": self.simple_multicurves,
            "si1_all": self.si1_all,
            "counts": rows,
        }


def _count_key(item):
    (si, prim, ess), _ = item
    return (si is None, -1 if si is None else si, not prim, not ess)


def _root_si(root: tuple[int, ...], cache: dict) -> tuple[int, bool]:
    hit = cache.get(root)
    if hit is None:
        cw = CyclicWord(root)
        hit = cache[root] = (self_intersection(root), is_essential(cw))
    return hit


def _census_shard(args) -> list[tuple[tuple[int, ...], bool, bool, int | None, int]]:
    L, prefix, p = args
    rows: list = []
    cache: dict = {}

    def emit(w: tuple[int, ...], period: int) -> None:
        cw = CyclicWord(w)
        if period == L:
            rows.append((w, True, is_essential(cw), self_intersection(w), 1))
        else:
            root = w[:period]
            root_si, root_ess = _root_si(root, cache)
            # root info is kept in the last slot for the power tallies
            rows.append((w, False, is_essential(cw), None, (root_si, root_ess, L // period)))

    _walk(L, prefix, p, emit)
    return rows


def default_jobs() -> int:
    env = os.environ.get("CURVES_JOBS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def census_records(L: int, jobs: int = 1, cap: int = DEFAULT_CAP) -> tuple[list[CensusRecord], CensusTable]:
    if L < 1:
        raise ValueError("length must be positive")
    if L > cap:
        raise BudgetExceeded(f"census length {L} exceeds cap {cap}; raise the cap explicitly")
    tasks = [(L, prefix, p) for prefix, p in _shards(L)]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            shard_rows = list(pool.map(_census_shard, tasks))
    else:
        shard_rows = [_census_shard(t) for t in tasks]
    records: list[CensusRecord] = []
    table = CensusTable(L)
    for rows in shard_rows:
        for w, prim, ess, si, extra in rows:
            records.append(CensusRecord(CyclicWord(w), L, prim, ess, si))
            table.counts[(si, prim, ess)] += 1
            if not prim:
                table.powers[extra] += 1
    return records, table


def census(L: int, jobs: int = 1, cap: int = DEFAULT_CAP) -> CensusTable:
    return census_records(L, jobs, cap)[1]


TSV_HEADER = "length\tword\tprimitive\tessential\tsi"


def write_census(L: int, out_dir: str | Path, jobs: int = 1, cap: int = DEFAULT_CAP) -> Path:
    """Write ``census-L{L}.tsv`` and ``manifest.json`` into ``out_dir``."""
    records, table = census_records(L, jobs, cap)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    path = out / f"census-L{L}.tsv"
    with path.open("w", encoding="utf-8", newline="\n") as fh:
        fh.write(TSV_HEADER + "\n")
        for rec in records:
            fh.write(rec.to_tsv() + "\n")
    manifest_path = out / "manifest.json"
    manifest = {}
    if manifest_path.exists():
        manifest = json.loads(manifest_path.read_text(encoding="utf-8"))
    manifest["tool"] = "torus-curves"
    manifest["version"] = __version__
    manifest.setdefault("files", {})[path.name] = {"length": L, "rows": len(records)}
    manifest["L"] = L
    manifest["rows"] = len(records)
    manifest_path.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return path


def read_census(path: str | Path) -> list[CensusRecord]:
    from .fgword import cyclic_canonical, parse_word

    records = []
    with Path(path).open(encoding="utf-8") as fh:
        header = fh.readline().rstrip("\n")
        if header != TSV_HEADER:
            raise ValueError(f"unexpected census header {header!r}")
        for line in fh:
            length, word, prim, ess, si = line.rstrip("\n").split("\t")
            records.append(
                CensusRecord(
                    cyclic_canonical(parse_word(word)),
                    int(length),
                    prim == "1",
                    ess == "1",
                    None if si == "-" else int(si),
                )
            )
    return records
