"""Structural classification of simple and single-self-intersection curves."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Union

from .arith import solution_set
from .fgword import (
    A,
    A_INV,
    B,
    B_INV,
    CyclicWord,
    Orientation,
    PUNCTURE_CLASSES,
    ShapeError,
    cyclic_blocks,
    cyclic_canonical,
    exponent_necklace,
    format_word,
    is_essential,
    primitive_root,
    renaming_orbit,
    word_from_necklace,
)
from .linking import self_intersection
from .necklace import (
    IntNecklace,
    Profile,
    SpreadError,
    has_small_variation,
    has_two_variation,
    profile,
    unique_2v_necklace,
    unique_sv_necklace,
)

log = logging.getLogger(__name__)

COMMUTATOR = (A, B_INV, A_INV, B)  # a b^-1 a^-1 b


# -- result types ------------------------------------------------------------

@dataclass(frozen=True)
class Generator:
    multiplicity: int


@dataclass(frozen=True)
class Puncture:
    multiplicity: int


@dataclass(frozen=True)
class General:
    orientation: Orientation
    necklace: IntNecklace
    multiplicity: int


@dataclass(frozen=True)
class NotSimple:
    pass


SimpleType = Union[Generator, Puncture, General]


@dataclass(frozen=True)
class Exceptional:
    word: str  # one of "aabb", "abAb", "aBAbb"


@dataclass(frozen=True)
class CommutatorInsertion:
    sign: int
    necklace: IntNecklace


@dataclass(frozen=True)
class TwoVariation:
    necklace: IntNecklace


@dataclass(frozen=True)
class GapTwo:
    m: int


@dataclass(frozen=True)
class NotSi1:
    pass


Si1Case = Union[Exceptional, CommutatorInsertion, TwoVariation, GapTwo, NotSi1]

EXCEPTIONAL_WORDS = ("aabb", "abAb", "aBAbb")
_EXCEPTIONAL_ORBITS = {
    c: name for name in EXCEPTIONAL_WORDS for c in renaming_orbit(CyclicWord.parse(name))
}


# -- simple curves -----------------------------------------------------------

def classify_simple(w: CyclicWord) -> SimpleType | NotSimple:
    letters = w.letters
    if len(set(letters)) == 1:
        return Generator(len(letters))
    root, k = primitive_root(w)
    if root in PUNCTURE_CLASSES:
        return Puncture(k)
    try:
        orient, neck = exponent_necklace(w)
    except ShapeError:
        return NotSimple()
    if has_small_variation(neck):
        return General(orient, neck, k)
    return NotSimple()


# -- self-intersection one ---------------------------------------------------

def _positive_necklace(w: CyclicWord) -> IntNecklace | None:
    """Necklace of ``w`` if some renaming puts it in the form a^n1 b ... a^nk b."""
    try:
        _, neck = exponent_necklace(w)
    except ShapeError:
        return None
    return neck


def _sigma_blocks(sigma: tuple[int, ...]) -> tuple[int, list[int]] | None:
    """``(sign, exponents)`` if sigma = a^{+-n1} b ... a^{+-nk} b, else None."""
    if not sigma or sigma[-1] != B:
        return None
    exps: list[int] = []
    i = 0
    while i < len(sigma):
        j = i
        while j < len(sigma) and sigma[j] in (A, A_INV) and sigma[j] == sigma[i]:
            j += 1
        if j == i or j >= len(sigma) or sigma[j] != B:
            return None
        exps.append(j - i if sigma[i] == A else -(j - i))
        i = j + 1
    signs = {e > 0 for e in exps}
    if len(signs) != 1:
        return None
    return (1 if signs.pop() else -1), [abs(e) for e in exps]


def commutator_word(sign: int, exponents: list[int] | tuple[int, ...]) -> tuple[int, ...]:
    """a b^-1 a^-1 b . a^{s n1} b ... a^{s nk} b"""
    return COMMUTATOR + word_from_necklace(exponents, Orientation("a", sign, 1))


def block_rotations(exponents: tuple[int, ...]) -> list[tuple[int, ...]]:
    k = len(exponents)
    return [exponents[i:] + exponents[:i] for i in range(k)]


def admissible_rotations(sign: int, necklace: IntNecklace) -> list[tuple[int, ...]]:
    """Block rotations sigma of the necklace making (commutator . sigma) have si 1."""
    return [
        rot
        for rot in dict.fromkeys(block_rotations(necklace.entries))
        if self_intersection(commutator_word(sign, rot)) == 1
    ]


def _match_commutator(w: CyclicWord) -> CommutatorInsertion | None:
    for image in sorted(renaming_orbit(w)):
        letters = image.letters
        n = len(letters)
        for r in range(n):
            rot = letters[r:] + letters[:r]
            if rot[:4] != COMMUTATOR:
                continue
            parsed = _sigma_blocks(rot[4:])
            if parsed is None:
                continue
            sign, exps = parsed
            neck = IntNecklace.of(exps)
            if not neck.is_aperiodic() or not has_small_variation(neck):
                continue
            if tuple(exps) in admissible_rotations(sign, neck):
                return CommutatorInsertion(sign, neck)
    return None


def _match_positive(w: CyclicWord) -> Si1Case | None:
    neck = _positive_necklace(w)
    if neck is None:
        return None
    entries = neck.entries
    if len(entries) == 2 and abs(entries[0] - entries[1]) == 2:
        return GapTwo(min(entries))
    try:
        m, x, y = profile(neck)
    except SpreadError:
        return None
    if x and y and has_two_variation(neck):
        return TwoVariation(neck)
    return None


def classify_si1(w: CyclicWord) -> Si1Case:
    root, k = primitive_root(w)
    if k != 1:
        raise ValueError(f"{w} is not primitive")
    if not is_essential(w):
        raise ValueError(f"{w} is not essential")
    name = _EXCEPTIONAL_ORBITS.get(w)
    if name is not None:
        return Exceptional(name)
    case = _match_commutator(w)
    if case is not None:
        return case
    case = _match_positive(w)
    if case is not None:
        return case
    return NotSi1()


# -- constructive generators -------------------------------------------------

def orbit_union(words) -> set[CyclicWord]:
    out: set[CyclicWord] = set()
    for w in words:
        out |= renaming_orbit(cyclic_canonical(w))
    return out


def simple_primitive_necklaces(L: int) -> list[IntNecklace]:
    """Aperiodic small-variation necklaces whose word a^n1 b ... has length L."""
    necks = []
    for x, y, m in sorted(solution_set(L, "S")):
        neck = unique_sv_necklace(Profile(m, x, y))
        if neck.is_aperiodic():
            necks.append(neck)
    return sorted(necks)


def generate_simple_primitive(L: int) -> list[CyclicWord]:
    """All primitive essential simple classes of length L, sorted."""
    if L < 1:
        raise ValueError("length must be positive")
    words = [word_from_necklace(n) for n in simple_primitive_necklaces(L)]
    if L == 1:
        words.append((A,))
    return sorted(orbit_union(words))


def generate_si1_primitive(L: int) -> list[CyclicWord]:
    """All primitive classes of length L with self-intersection one, sorted."""
    if L < 4:
        raise ValueError("length must be at least 4")
    words: list[tuple[int, ...]] = []
    for name in EXCEPTIONAL_WORDS:
        if len(name) == L:
            words.append(CyclicWord.parse(name).letters)
    for neck in simple_primitive_necklaces(L - 4):
        for sign in (1, -1):
            rots = admissible_rotations(sign, neck)
            if len(rots) != 1:
                log.warning("necklace %s sign %d has %d admissible rotations", neck, sign, len(rots))
            words.extend(commutator_word(sign, r) for r in rots)
    for x, y, m in sorted(solution_set(L, "S2")):
        neck = unique_2v_necklace(Profile(m, x, y))
        words.append(word_from_necklace(neck))
    if L % 2 == 0 and L >= 6:
        m = (L - 4) // 2
        words.append(word_from_necklace((m, m + 2)))
    return sorted(orbit_union(words))


# -- serialization -----------------------------------------------------------

def to_json(w: CyclicWord, result) -> dict:
    """JSON form with frozen keys ``word``, ``class``, ``payload``."""
    word = format_word(w.letters)
    if isinstance(result, Generator):
        return {"word": word, "class": "simple-generator", "payload": {"multiplicity": result.multiplicity}}
    if isinstance(result, Puncture):
        return {"word": word, "class": "simple-puncture", "payload": {"multiplicity": result.multiplicity}}
    if isinstance(result, General):
        o = result.orientation
        return {
            "word": word,
            "class": "simple-general",
            "payload": {
                "necklace": str(result.necklace),
                "multiplicity": result.multiplicity,
                "orientation": {"base": o.base, "sign": o.sign, "separator_sign": o.separator_sign},
            },
        }
    if isinstance(result, Exceptional):
        return {"word": word, "class": "si1-exceptional", "payload": {"representative": result.word}}
    if isinstance(result, CommutatorInsertion):
        return {
            "word": word,
            "class": "si1-commutator-insertion",
            "payload": {"sign": result.sign, "necklace": str(result.necklace)},
        }
    if isinstance(result, TwoVariation):
        return {"word": word, "class": "si1-two-variation", "payload": {"necklace": str(result.necklace)}}
    if isinstance(result, GapTwo):
        return {"word": word, "class": "si1-gap-two", "payload": {"m": result.m}}
    raise TypeError(f"cannot serialize {result!r}")


def describe(w: CyclicWord, max_length: int | None = None) -> dict:
    """Full classification of a class as JSON, falling back to its self-intersection."""
    simple = classify_simple(w)
    if not isinstance(simple, NotSimple):
        return to_json(w, simple)
    root, k = primitive_root(w)
    word = format_word(w.letters)
    if k == 1 and is_essential(w):
        case = classify_si1(w)
        if not isinstance(case, NotSi1):
            return to_json(w, case)
    if k != 1:
        return {"word": word, "class": "other", "payload": {"primitive": False, "root": str(root), "power": k}}
    if max_length is not None and len(w) > max_length:
        return {"word": word, "class": "other", "payload": {"si": None}}
    return {"word": word, "class": "other", "payload": {"si": self_intersection(w)}}
