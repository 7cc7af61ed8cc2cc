"""Words and circular words in the free group on ``a`` and ``b``.

Letters are small integers so that words can be plain tuples::

    a = 0, b = 1, a^-1 = 2, b^-1 = 3

With this encoding the inverse of ``x`` is ``x ^ 2``, the base generator is
``x & 1`` and the storage order ``a < b < a^-1 < b^-1`` is integer order.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

A, B, A_INV, B_INV = 0, 1, 2, 3
LETTERS = (A, B, A_INV, B_INV)
LETTER_CHARS = "abAB"

Word = tuple[int, ...]


class WordSyntaxError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at byte offset {offset}")
        self.offset = offset


class TrivialClassError(ValueError):
    """The word is conjugate to the identity."""


class ShapeError(ValueError):
    """The word is not of the form x^n1 y^e ... x^nk y^e."""


def inverse_letter(x: int) -> int:
    return x ^ 2


def base(x: int) -> int:
    return x & 1


def sign(x: int) -> int:
    return 1 if x < 2 else -1


def letter(base_: int, sign_: int) -> int:
    return base_ if sign_ > 0 else base_ | 2


def inverse(w: Sequence[int]) -> Word:
    return tuple(x ^ 2 for x in reversed(w))


def free_reduce(letters: Iterable[int]) -> Word:
    stack: list[int] = []
    for x in letters:
        if stack and stack[-1] == x ^ 2:
            stack.pop()
        else:
            stack.append(x)
    return tuple(stack)


def format_word(w: Sequence[int]) -> str:
    return "".join(LETTER_CHARS[x] for x in w)


_EXPONENT = re.compile(rb"[+-]?[0-9]+")


def _skip_space(data: bytes, pos: int) -> int:
    while pos < len(data) and data[pos : pos + 1].isspace():
        pos += 1
    return pos


def parse_word(text: str) -> Word:
    """Parse ``text`` into a freely reduced word.

    Grammar: a sequence of tokens ``letter`` or ``letter^n`` with ``n`` a
    nonzero signed integer; ``A`` and ``B`` stand for the inverses of ``a``
    and ``b``. Whitespace is ignored.
    """
    data = text.encode("utf-8")
    out: list[int] = []
    pos = _skip_space(data, 0)
    while pos < len(data):
        ch = data[pos : pos + 1]
        if ch not in (b"a", b"b", b"A", b"B"):
            raise WordSyntaxError(f"invalid character {ch!r}", pos)
        x = LETTER_CHARS.index(ch.decode())
        pos = _skip_space(data, pos + 1)
        exponent = 1
        if data[pos : pos + 1] == b"^":
            pos = _skip_space(data, pos + 1)
            m = _EXPONENT.match(data, pos)
            if m is None:
                raise WordSyntaxError("malformed exponent", pos)
            exponent = int(m.group())
            if exponent == 0:
                raise WordSyntaxError("zero exponent", pos)
            pos = _skip_space(data, m.end())
        if exponent < 0:
            x ^= 2
        out.extend([x] * abs(exponent))
    return free_reduce(out)


def cyclic_reduce(w: Sequence[int]) -> Word:
    w = free_reduce(w)
    i, j = 0, len(w)
    while j - i >= 2 and w[i] == w[j - 1] ^ 2:
        i += 1
        j -= 1
    return w[i:j]


def least_rotation(s: Sequence) -> int:
    """Index of the lexicographically least rotation (Booth's algorithm)."""
    n = len(s)
    f = [-1] * (2 * n)
    k = 0
    for j in range(1, 2 * n):
        sj = s[j % n]
        i = f[j - k - 1]
        while i != -1 and sj != s[(k + i + 1) % n]:
            if sj < s[(k + i + 1) % n]:
                k = j - i - 1
            i = f[i]
        if sj != s[(k + i + 1) % n]:
            if sj < s[k % n]:
                k = j
            f[j - k] = -1
        else:
            f[j - k] = i + 1
    return k % n if n else 0


def rotate(w: Sequence, k: int) -> tuple:
    w = tuple(w)
    if not w:
        return w
    k %= len(w)
    return w[k:] + w[:k]


@dataclass(frozen=True, order=True)
class CyclicWord:
    """A cyclically reduced circular word stored in its least rotation.

    Build instances with :func:`cyclic_canonical` (or :meth:`parse`); the
    constructor trusts its input.
    """

    letters: Word

    @classmethod
    def parse(cls, text: str) -> CyclicWord:
        return cyclic_canonical(parse_word(text))

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return format_word(self.letters)

    def __repr__(self) -> str:
        return f"CyclicWord({str(self)!r})"

    def inverse(self) -> CyclicWord:
        return cyclic_canonical(inverse(self.letters))

    def rotations(self) -> list[Word]:
        w = self.letters
        return [w[i:] + w[:i] for i in range(len(w))]


def cyclic_canonical(w: Sequence[int]) -> CyclicWord:
    r = cyclic_reduce(w)
    if not r:
        raise TrivialClassError("word is conjugate to the identity")
    return CyclicWord(rotate(r, least_rotation(r)))


def smallest_period(w: Sequence) -> int:
    n = len(w)
    for p in range(1, n + 1):
        if n % p == 0 and all(w[i] == w[i - p] for i in range(p, n)):
            return p
    return n


def primitive_root(w: CyclicWord) -> tuple[CyclicWord, int]:
    p = smallest_period(w.letters)
    return CyclicWord(w.letters[:p]), len(w) // p


def is_primitive(w: CyclicWord) -> bool:
    return smallest_period(w.letters) == len(w)


# -- renamings ---------------------------------------------------------------

class Renaming(NamedTuple):
    """Automorphism sending a to ``image_of_a`` and b to ``image_of_b``."""

    image_of_a: int
    image_of_b: int

    @property
    def table(self) -> tuple[int, int, int, int]:
        ia, ib = self.image_of_a, self.image_of_b
        return (ia, ib, ia ^ 2, ib ^ 2)

    def __call__(self, w: Sequence[int]) -> Word:
        t = self.table
        return tuple(t[x] for x in w)

    def compose(self, other: Renaming) -> Renaming:
        """``self`` after ``other``."""
        t = self.table
        return Renaming(t[other.image_of_a], t[other.image_of_b])

    def inverse(self) -> Renaming:
        return next(r for r in RENAMINGS if self.compose(r) == IDENTITY_RENAMING)


RENAMINGS: tuple[Renaming, ...] = tuple(
    Renaming(x, y) for x in LETTERS for y in LETTERS if base(x) != base(y)
)
IDENTITY_RENAMING = Renaming(A, B)
COMPOSITION = {(r, s): r.compose(s) for r in RENAMINGS for s in RENAMINGS}


def renaming_orbit(w: CyclicWord) -> frozenset[CyclicWord]:
    return frozenset(cyclic_canonical(r(w.letters)) for r in RENAMINGS)


# -- exponent necklaces --------------------------------------------------------

class Orientation(NamedTuple):
    """Which generator carries the exponents, and the signs involved.

    ``base`` is ``"a"`` for words a^n1 b^e ... a^nk b^e and ``"b"`` for
    b^n1 a^e ... b^nk a^e.
    """

    base: str = "a"
    sign: int = 1
    separator_sign: int = 1


def cyclic_blocks(w: Sequence[int]) -> list[tuple[int, int]]:
    """Maximal circular blocks ``(base, signed exponent)`` of a reduced word.

    The first block starts at the first block boundary of ``w``. Raises
    :class:`ShapeError` if ``w`` uses a single generator only.
    """
    n = len(w)
    start = next((i for i in range(n) if base(w[i]) != base(w[i - 1])), None)
    if start is None:
        raise ShapeError("word involves a single generator")
    blocks: list[tuple[int, int]] = []
    for k in range(n):
        x = w[(start + k) % n]
        if blocks and blocks[-1][0] == base(x):
            b_, e = blocks[-1]
            blocks[-1] = (b_, e + sign(x))
        else:
            blocks.append((base(x), sign(x)))
    return blocks


def exponent_necklace(w: CyclicWord):
    """Return ``(Orientation, IntNecklace)`` for a word of general shape."""
    from .necklace import IntNecklace

    blocks = cyclic_blocks(w.letters)
    for exp_base in (A, B):
        exps = [e for b_, e in blocks if b_ == exp_base]
        seps = [e for b_, e in blocks if b_ != exp_base]
        if len(set(seps)) == 1 and abs(seps[0]) == 1:
            signs = {1 if e > 0 else -1 for e in exps}
            if len(signs) == 1:
                orient = Orientation("ab"[exp_base], signs.pop(), seps[0])
                return orient, IntNecklace.of(abs(e) for e in exps)
    raise ShapeError(f"{format_word(w.letters)} is not of exponent-necklace shape")


def word_from_necklace(entries: Iterable[int], orientation: Orientation = Orientation()) -> Word:
    """Build x^n1 y^e ... x^nk y^e for the given orientation."""
    exp_base = "ab".index(orientation.base)
    x = letter(exp_base, orientation.sign)
    y = letter(1 - exp_base, orientation.separator_sign)
    out: list[int] = []
    for n in entries:
        out.extend([x] * n)
        out.append(y)
    return tuple(out)


# -- the alpha_m automorphisms -------------------------------------------------

def _power(w: Word, k: int) -> Word:
    return free_reduce(w * k if k >= 0 else inverse(w) * -k)


def _alpha_images(m: int, variant: str, direction: str) -> tuple[Word, Word]:
    """Images of ``a`` and ``b``.

    With X = a^m b and Y = a^(m+1) b we have a = Y X^-1 and b = a^-m X, so
    alpha_m (X -> b, Y -> a) sends a -> a b^-1 and b -> (b a^-1)^m b; the
    tilde variant swaps the roles of the targets.
    """
    if m < 1:
        raise ValueError("m must be a positive integer")
    x_img = (A,) * m + (B,)
    y_img = (A,) * (m + 1) + (B,)
    if direction == "inverse":
        return (y_img, x_img) if variant == "plain" else (x_img, y_img)
    if direction != "forward":
        raise ValueError(f"unknown direction {direction!r}")
    if variant == "plain":
        img_x, img_y = (B,), (A,)
    elif variant == "tilde":
        img_x, img_y = (A,), (B,)
    else:
        raise ValueError(f"unknown variant {variant!r}")
    img_a = free_reduce(img_y + inverse(img_x))
    img_b = free_reduce(_power(inverse(img_a), m) + img_x)
    return img_a, img_b


_ALPHA_CACHE: dict[tuple[int, str, str], tuple[Word, ...]] = {}


def apply_alpha(w: Sequence[int], m: int, variant: str = "plain", direction: str = "forward") -> Word:
    key = (m, variant, direction)
    table = _ALPHA_CACHE.get(key)
    if table is None:
        img_a, img_b = _alpha_images(m, variant, direction)
        table = (img_a, img_b, inverse(img_a), inverse(img_b))
        _ALPHA_CACHE[key] = table
    return free_reduce(y for x in w for y in table[x])


PUNCTURE_CLASSES = frozenset(
    {cyclic_canonical((A, B, A_INV, B_INV)), cyclic_canonical((B, A, B_INV, A_INV))}
)


def is_essential(w: CyclicWord) -> bool:
    return w not in PUNCTURE_CLASSES
