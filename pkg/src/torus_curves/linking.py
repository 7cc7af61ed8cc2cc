"""Self-intersection numbers from linking pairs of cyclic permutations.

Words are compared in the cyclic lexicographic order: the first letters are
ranked ``a < b < a^-1 < b^-1`` and, once the words agree on a letter ``x``,
the next letters are ranked by the cyclic shift of that order starting at
``x^-1``. Because both words share the previous letter, the order can be
turned into a plain string key: the rank of each letter relative to its
predecessor. Comparing keys is comparing words.
"""

from __future__ import annotations

from enum import IntEnum
from typing import NamedTuple, Sequence

from .fgword import CyclicWord, format_word, inverse, smallest_period


class NonPrimitiveError(ValueError):
    """Linking pairs are only defined here for primitive circular words."""


class Order(IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


INITIAL_RANKING = (0, 1, 2, 3)


def next_ranking(x: int) -> tuple[int, int, int, int]:
    """Ranking used after the compared words agreed on letter ``x``."""
    start = x ^ 2
    return tuple((start + i) % 4 for i in range(4))


# _STEP[prev][cur] is the position of cur in next_ranking(prev)
_STEP = tuple(tuple((cur - (prev ^ 2)) % 4 for cur in range(4)) for prev in range(4))
_CHARS = "0123"


def cl_key(w: Sequence[int]) -> str:
    if not w:
        return ""
    chars = [_CHARS[w[0]]]
    for prev, cur in zip(w, w[1:]):
        chars.append(_CHARS[_STEP[prev][cur]])
    return "".join(chars)


def cl_compare(u: Sequence[int], v: Sequence[int]) -> Order:
    """Compare two words of equal length letter by letter, threading the ranking."""
    if len(u) != len(v):
        raise ValueError(f"length mismatch: {len(u)} != {len(v)}")
    ranking = INITIAL_RANKING
    for x, y in zip(u, v):
        if x != y:
            return Order.LESS if ranking.index(x) < ranking.index(y) else Order.GREATER
        ranking = next_ranking(x)
    return Order.EQUAL


def rotation_keys(w: Sequence[int]) -> list[str]:
    """CL keys of every rotation ``w_i = x_i ... x_n x_1 ... x_{i-1}``."""
    n = len(w)
    steps = "".join(_CHARS[_STEP[w[i - 1]][w[i]]] for i in range(n))
    doubled = steps + steps
    return [_CHARS[w[i]] + doubled[i + 1 : i + n] for i in range(n)]


class LinkingPair(NamedTuple):
    """Rotation indices ``i < j`` (0-based) whose four words interleave.

    ``flavor`` is 1 when ``w_j`` lies strictly between ``w_i`` and
    ``w_i^-1`` and 2 when ``w_j^-1`` does.
    """

    i: int
    j: int
    flavor: int


def _interleave(a: str, ai: str, b: str, bi: str) -> int:
    """1 or 2 if the chords {a, ai} and {b, bi} cross, else 0."""
    if len({a, ai, b, bi}) < 4:
        return 0
    lo, hi = (a, ai) if a < ai else (ai, a)
    inside_b = lo < b < hi
    if inside_b == (lo < bi < hi):
        return 0
    return 1 if inside_b else 2


def _keys(w: Sequence[int]) -> tuple[list[str], list[str]]:
    n = len(w)
    forward = rotation_keys(w)
    inv = inverse(w)
    inv_keys = rotation_keys(inv)
    # w_i^-1 = x_{i-1}^-1 ... x_i^-1 is rotation (n - i) % n of the inverse word
    backward = [inv_keys[(n - i) % n] for i in range(n)]
    return forward, backward


def _check_primitive(w: Sequence[int]) -> None:
    p = smallest_period(w)
    if p != len(w):
        root = format_word(w[:p])
        raise NonPrimitiveError(f"non-primitive: ({root})^{len(w) // p}")


def _letters(w) -> tuple[int, ...]:
    return w.letters if isinstance(w, CyclicWord) else tuple(w)


def linking_pairs(w) -> list[LinkingPair]:
    letters = _letters(w)
    _check_primitive(letters)
    forward, backward = _keys(letters)
    n = len(letters)
    out = []
    for i in range(n):
        a, ai = forward[i], backward[i]
        for j in range(i + 1, n):
            flavor = _interleave(a, ai, forward[j], backward[j])
            if flavor:
                out.append(LinkingPair(i, j, flavor))
    return out


def linking_classes(w) -> list[list[tuple[int, int]]]:
    """Equivalence classes of linking pairs, each sorted, in order of first pair."""
    letters = _letters(w)
    n = len(letters)
    pairs = [(p.i, p.j) for p in linking_pairs(letters)]
    parent = {p: p for p in pairs}

    def find(p):
        while parent[p] != p:
            parent[p] = parent[parent[p]]
            p = parent[p]
        return p

    def union(p, q):
        rp, rq = find(p), find(q)
        if rp != rq:
            if rq < rp:
                rp, rq = rq, rp
            parent[rq] = rp

    def norm(i, j):
        i %= n
        j %= n
        return (i, j) if i < j else (j, i)

    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            if letters[i] == letters[j]:
                p, q = norm(i, j), norm(i + 1, j + 1)
            elif letters[i] == letters[j] ^ 2:
                p, q = norm(i + 1, j), norm(i, j + 1)
            else:
                continue
            if p in parent and q in parent:
                union(p, q)
    classes: dict[tuple[int, int], list[tuple[int, int]]] = {}
    for p in pairs:
        classes.setdefault(find(p), []).append(p)
    return [sorted(c) for c in classes.values()]


def self_intersection(w) -> int:
    """Number of classes of linking pairs of a primitive cyclic word."""
    return len(linking_classes(w))
