"""Necklaces of positive integers: runs, small variation, 2-variation.

A necklace is stored in its least rotation. Two-valued necklaces with
entries in ``{m, m+1}`` carry a profile ``(m, x, y)`` with ``x`` copies of
``m`` and ``y`` copies of ``m + 1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import gcd
from typing import Iterable, Iterator, NamedTuple

from .fgword import least_rotation, rotate, smallest_period


class SpreadError(ValueError):
    """Necklace values do not lie in a single pair {m, m+1}."""


@dataclass(frozen=True, order=True)
class IntNecklace:
    entries: tuple[int, ...]

    @classmethod
    def of(cls, entries: Iterable[int]) -> IntNecklace:
        seq = tuple(entries)
        if not seq:
            raise ValueError("necklace must be nonempty")
        if any(n < 1 for n in seq):
            raise ValueError("necklace entries must be positive")
        return cls(rotate(seq, least_rotation(seq)))

    @classmethod
    def parse(cls, text: str) -> IntNecklace:
        body = text.strip()
        if not (body.startswith("[") and body.endswith("]")):
            raise ValueError(f"necklace must be bracketed: {text!r}")
        return cls.of(int(t) for t in body[1:-1].split(","))

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[int]:
        return iter(self.entries)

    def __str__(self) -> str:
        return "[" + ",".join(map(str, self.entries)) + "]"

    def __repr__(self) -> str:
        return f"IntNecklace({self})"

    @property
    def word_length(self) -> int:
        """Length of the word a^n1 b ... a^nk b."""
        return len(self.entries) + sum(self.entries)

    def is_aperiodic(self) -> bool:
        return smallest_period(self.entries) == len(self.entries)

    def power(self, k: int) -> IntNecklace:
        return IntNecklace(self.entries * k)


class Profile(NamedTuple):
    m: int
    x: int
    y: int


def _as_seq(w) -> tuple[int, ...]:
    return w.entries if isinstance(w, IntNecklace) else tuple(w)


def runs(w, v: int) -> list[int]:
    """Sorted lengths of the maximal circular runs of value ``v``."""
    seq = _as_seq(w)
    k = len(seq)
    if all(n == v for n in seq):
        return [k]
    start = next(i for i in range(k) if seq[i] != v)
    out: list[int] = []
    length = 0
    for j in range(1, k + 1):
        if seq[(start + j) % k] == v:
            length += 1
        elif length:
            out.append(length)
            length = 0
    return sorted(out)


def window_sums(seq: tuple[int, ...], s: int) -> list[int]:
    k = len(seq)
    doubled = seq + seq
    total = sum(doubled[:s])
    sums = [total]
    for i in range(1, k):
        total += doubled[i + s - 1] - doubled[i - 1]
        sums.append(total)
    return sums


def has_small_variation(w) -> bool:
    """All sums of ``s`` consecutive entries differ by at most one, for every s."""
    seq = _as_seq(w)
    for s in range(1, len(seq) + 1):
        sums = window_sums(seq, s)
        if max(sums) - min(sums) > 1:
            return False
    return True


def profile(w) -> Profile:
    seq = _as_seq(w)
    lo, hi = min(seq), max(seq)
    if hi - lo > 1:
        raise SpreadError(f"values {lo} and {hi} are not consecutive")
    if lo == hi:
        return Profile(lo, len(seq), 0)
    return Profile(lo, seq.count(lo), seq.count(hi))


def a_map(w) -> IntNecklace:
    """Collapse a two-valued necklace to the necklace of its majority runs."""
    seq = _as_seq(w)
    m, x, y = profile(seq)
    if y == 0:
        return IntNecklace.of([x])
    keep = m + 1 if y >= x else m
    return run_necklace(seq, keep)


def run_necklace(w, keep: int) -> IntNecklace:
    """Necklace of the lengths of the circular runs of ``keep``, in order."""
    seq = _as_seq(w)
    k = len(seq)
    start = next(i for i in range(k) if seq[i] != keep)
    out: list[int] = []
    length = 0
    for j in range(1, k + 1):
        if seq[(start + j) % k] == keep:
            length += 1
        elif length:
            out.append(length)
            length = 0
    return IntNecklace.of(out)


def b_map(m: int, w, variant: str = "plain") -> IntNecklace:
    """Expand each entry into a run, separated by single values.

    ``plain`` uses runs of ``m + 1`` separated by ``m``; ``tilde`` swaps them.
    """
    if variant == "plain":
        run_value, sep = m + 1, m
    elif variant == "tilde":
        run_value, sep = m, m + 1
    else:
        raise ValueError(f"unknown variant {variant!r}")
    out: list[int] = []
    for n in _as_seq(w):
        out.extend([run_value] * n)
        out.append(sep)
    return IntNecklace.of(out)


def reduced_profile(x: int, y: int) -> Profile:
    """Profile of A(w) for any small-variation w with counts (x, y), both >= 1."""
    lo, hi = min(x, y), max(x, y)
    q, r = divmod(hi, lo)
    return Profile(q, lo - r, r)


def unique_sv_necklace(p: Profile) -> IntNecklace:
    """The small-variation necklace with profile ``p``, built by Euclidean descent."""
    m, x, y = p
    if x + y < 1 or m < 1:
        raise ValueError(f"invalid profile {p}")
    if y == 0:
        return IntNecklace.of([m] * x)
    if x == 0:
        return IntNecklace.of([m + 1] * y)
    inner = unique_sv_necklace(reduced_profile(x, y))
    return b_map(m, inner, "plain" if y >= x else "tilde")


def circular_blocks(w, max_size: int | None = None) -> set[tuple[int, ...]]:
    """All contiguous circular blocks of size at most the necklace size."""
    seq = _as_seq(w)
    k = len(seq)
    limit = k if max_size is None else min(k, max_size)
    doubled = seq + seq
    return {doubled[i : i + s] for s in range(1, limit + 1) for i in range(k)}


class EssentialPair(NamedTuple):
    """Occurrences of (m, u, m) at ``low_start`` and (m+1, u, m+1) at ``high_start``."""

    interior: tuple[int, ...]
    low_start: int
    high_start: int


def essential_pairs(w) -> list[EssentialPair]:
    """Every pair of block occurrences (m, u, m), (m+1, u, m+1), counted by position.

    Blocks are read on the stored rotation and are at most as long as the
    necklace.
    """
    seq = _as_seq(w)
    m, x, y = profile(seq)
    if x == 0 or y == 0:
        raise SpreadError("essential pairs need both values present")
    k = len(seq)
    doubled = seq + seq
    out = []
    for size in range(2, k + 1):
        low: dict[tuple[int, ...], list[int]] = {}
        high: dict[tuple[int, ...], list[int]] = {}
        for i in range(k):
            blk = doubled[i : i + size]
            if blk[0] == blk[-1] == m:
                low.setdefault(blk[1:-1], []).append(i)
            elif blk[0] == blk[-1] == m + 1:
                high.setdefault(blk[1:-1], []).append(i)
        for u, starts in low.items():
            for j in high.get(u, ()):
                out.extend(EssentialPair(u, i, j) for i in starts)
    return sorted(out)


def has_two_variation(w) -> bool:
    return len(essential_pairs(w)) == 1


def _two_variation_base(m: int, x: int, y: int) -> IntNecklace:
    # min(x, y) == 2: two majority runs of sizes q - 1 and q + 1
    if x <= y:
        q = y // 2
        return IntNecklace.of([m] + [m + 1] * (q - 1) + [m] + [m + 1] * (q + 1))
    q = x // 2
    return IntNecklace.of([m + 1] + [m] * (q - 1) + [m + 1] + [m] * (q + 1))


def unique_2v_necklace(p: Profile) -> IntNecklace | None:
    """The 2-variation necklace with profile ``p``, or None unless gcd(x, y) == 2."""
    m, x, y = p
    if min(m, x, y) < 1:
        raise ValueError(f"invalid profile {p}")
    if gcd(x, y) != 2:
        return None
    if min(x, y) == 2:
        return _two_variation_base(m, x, y)
    inner = unique_2v_necklace(reduced_profile(x, y))
    return b_map(m, inner, "plain" if y >= x else "tilde")


def necklaces_with_profile(p: Profile) -> Iterator[IntNecklace]:
    """Brute-force enumeration of every necklace with profile ``p``."""
    m, x, y = p
    k = x + y
    seen: set[IntNecklace] = set()
    for bits in product((0, 1), repeat=k):
        if sum(bits) != y:
            continue
        neck = IntNecklace.of(m + b for b in bits)
        if neck not in seen:
            seen.add(neck)
            yield neck
