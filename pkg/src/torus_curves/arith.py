"""Arithmetic functions and closed-form curve counts."""

from __future__ import annotations

import threading
from math import ceil, gcd, pi

import numpy as np

MAX_FORMULA_LENGTH = 39  # 3**L stays below 2**63
MAX_SIEVE = 10**7

# Census values below the lengths where the closed forms apply.
SMALL_SIMPLE_PRIMITIVE = {1: 4, 2: 4, 3: 8}
SMALL_ALL_PRIMITIVE = {1: 4, 2: 4}
# Reference values quoted for the same lengths; the length-2 entry disagrees
# with enumeration and is kept so the discrepancy can be reported.
REFERENCE_ALL_PRIMITIVE = {1: 4, 2: 8}
SI1_PRIMITIVE_AT_4 = 8


def factorize(n: int) -> dict[int, int]:
    if n < 1:
        raise ValueError("n must be positive")
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def euler_phi(n: int) -> int:
    """Euler's totient, with the convention phi(0) = 0."""
    if n == 0:
        return 0
    result = n
    for p in factorize(n):
        result -= result // p
    return result


def moebius(n: int) -> int:
    f = factorize(n)
    if any(e > 1 for e in f.values()):
        return 0
    return -1 if len(f) % 2 else 1


class _TotientSieve:
    def __init__(self) -> None:
        self._lock = threading.Lock()
        self._phi = np.zeros(1, dtype=np.int64)
        self._cumulative = np.zeros(1, dtype=np.int64)

    def _build(self, n: int) -> None:
        phi = np.arange(n + 1, dtype=np.int64)
        is_prime = np.ones(n + 1, dtype=bool)
        is_prime[:2] = False
        for p in range(2, int(n**0.5) + 1):
            if is_prime[p]:
                is_prime[p * p :: p] = False
        for p in np.flatnonzero(is_prime):
            phi[p::p] -= phi[p::p] // p
        self._phi = phi
        self._cumulative = np.cumsum(phi)
        self._cumulative -= phi[0]

    def ensure(self, n: int) -> None:
        if n > MAX_SIEVE:
            raise ValueError(f"sieve limited to {MAX_SIEVE}")
        if len(self._phi) > n:
            return
        with self._lock:
            if len(self._phi) <= n:
                self._build(max(n, 2 * len(self._phi), 1000))

    def phi(self, n: int) -> int:
        self.ensure(n)
        return int(self._phi[n])

    def summatory(self, n: int) -> int:
        self.ensure(n)
        return int(self._cumulative[n])


_SIEVE = _TotientSieve()


def totients(n: int) -> np.ndarray:
    """Array ``t`` with ``t[k] = phi(k)`` for ``0 <= k <= n``."""
    _SIEVE.ensure(n)
    return _SIEVE._phi[: n + 1]


def phi_summatory(n: int) -> int:
    """Sum of phi(k) for 1 <= k <= n (0 for n <= 0)."""
    if n <= 0:
        return 0
    return _SIEVE.summatory(n)


# -- the Diophantine sets x(m+1) + y(m+2) = L --------------------------------

def solution_set(L: int, which: str = "S") -> set[tuple[int, int, int]]:
    """Triples ``(x, y, m)`` by brute force.

    ``S``: x, m >= 1 and y >= 0. ``S1`` / ``S2``: x, y, m >= 1 with
    gcd(x, y) equal to 1 / 2.
    """
    if which not in ("S", "S1", "S2"):
        raise ValueError(f"unknown solution set {which!r}")
    y_min = 0 if which == "S" else 1
    out = set()
    for m in range(1, L + 1):
        for x in range(1, L // (m + 1) + 1):
            rest = L - x * (m + 1)
            if rest < 0 or rest % (m + 2):
                continue
            y = rest // (m + 2)
            if y < y_min:
                continue
            if which == "S1" and gcd(x, y) != 1:
                continue
            if which == "S2" and gcd(x, y) != 2:
                continue
            out.add((x, y, m))
    return out


def solution_count(L: int, which: str = "S") -> int:
    """Closed-form size of :func:`solution_set`."""
    if which == "S":
        return L // 2
    if which == "S1":
        return ceil(euler_phi(L) / 2) - 1
    if which == "S2":
        return ceil(euler_phi(L // 2) / 2) - 1 if L % 2 == 0 else 0
    raise ValueError(f"unknown solution set {which!r}")


# -- curve counts ------------------------------------------------------------

def _check_length(L: int, minimum: int = 1, capped: bool = True) -> None:
    if L < minimum:
        raise ValueError(f"length must be at least {minimum}")
    if capped and L > MAX_FORMULA_LENGTH:
        raise ValueError(f"formula domain capped at L <= {MAX_FORMULA_LENGTH}")


def count_cyclically_reduced(n: int) -> int:
    """Cyclically reduced words of length n, rotations counted separately."""
    _check_length(n)
    return 2 + (-1) ** n + 3**n


def count_simple_primitive(L: int) -> int:
    _check_length(L, capped=False)
    if L in SMALL_SIMPLE_PRIMITIVE:
        return SMALL_SIMPLE_PRIMITIVE[L]
    return 4 * euler_phi(L)


def count_simple_primitive_cumulative(L: int, variant: str = "census") -> int:
    """Primitive essential simple classes of length at most L.

    ``census`` sums the exact per-length counts, which gives 4 Phi(L) for
    every L >= 1. ``plus-two`` is the reference closed form 4 Phi(L) + 2.
    """
    if L < 1:
        raise ValueError("length must be positive")
    if variant == "census":
        return 4 * phi_summatory(L)
    if variant == "plus-two":
        return 4 * phi_summatory(L) + 2
    raise ValueError(f"unknown variant {variant!r}")


def count_simple_multicurve(L: int) -> int:
    if L < 1:
        raise ValueError("length must be positive")
    return 4 * L


def count_simple_multicurve_cumulative(L: int) -> int:
    if L < 1:
        raise ValueError("length must be positive")
    return 2 * L * L + 2 * L


def count_si1_primitive(L: int) -> int:
    _check_length(L, 4, capped=False)
    if L == 4:
        return SI1_PRIMITIVE_AT_4
    if L % 2:
        return 8 * euler_phi(L - 4)
    # phi(L/2) is even once L/2 >= 3
    return 8 * euler_phi(L - 4) + 4 * euler_phi(L // 2)


def count_si1_all(L: int) -> int:
    """Primitive si-1 classes plus squares of primitive simple classes."""
    extra = count_simple_primitive(L // 2) if L % 2 == 0 else 0
    return count_si1_primitive(L) + extra


def count_si1_primitive_cumulative(L: int, variant: str = "sum") -> int:
    """Primitive si-1 classes of length at most L (L >= 4).

    ``sum`` adds the per-length counts; ``closed`` evaluates
    8 (Phi(L-4) + Phi(floor(L/2)) / 2). The two agree.
    """
    if L < 4:
        raise ValueError("length must be at least 4")
    if variant == "sum":
        return sum(count_si1_primitive(n) for n in range(4, L + 1))
    if variant == "closed":
        return 8 * phi_summatory(L - 4) + 4 * phi_summatory(L // 2)
    raise ValueError(f"unknown variant {variant!r}")


def count_si1_all_cumulative(L: int) -> int:
    return sum(count_si1_all(n) for n in range(4, L + 1))


def count_all_primitive(L: int, reference: bool = False) -> int:
    """Primitive classes of length L (necklace formula for L >= 3).

    With ``reference`` the small-length values come from the reference
    table instead of the census table.
    """
    _check_length(L)
    table = REFERENCE_ALL_PRIMITIVE if reference else SMALL_ALL_PRIMITIVE
    if L in table:
        return table[L]
    return sum(moebius(d) * 3 ** (L // d) for d in divisors(L)) // L


def count_all_primitive_positioned(L: int) -> int:
    """Moebius inversion of the positioned count, divided by L (exact for all L)."""
    _check_length(L)
    total = sum(moebius(d) * count_cyclically_reduced(L // d) for d in divisors(L))
    return total // L


def count_all_classes(L: int) -> int:
    _check_length(L)
    necklaces = sum(euler_phi(d) * 3 ** (L // d) for d in divisors(L)) // L
    return necklaces + (3 + (-1) ** L) // 2


def count_all_classes_burnside(L: int) -> int:
    """Burnside count over rotations of the positioned words."""
    _check_length(L)
    return sum(euler_phi(d) * count_cyclically_reduced(L // d) for d in divisors(L)) // L


def asymptotic_report(L: int) -> dict[str, float]:
    """Cumulative counts at L against their limiting constants."""
    simple = count_simple_primitive_cumulative(L)
    si1 = count_si1_primitive_cumulative(L, "closed")
    ratio = 4 / 9
    return {
        "L": L,
        "simple_cumulative": simple,
        "si1_cumulative": si1,
        "simple_over_si1": simple / si1,
        "simple_over_si1_limit": ratio,
        "simple_over_L2": simple / L**2,
        "simple_over_L2_limit": 12 / pi**2,
        "si1_over_L2": si1 / L**2,
        "si1_over_L2_limit": 27 / pi**2,
        "si1_share_limit": 1 / (1 + ratio),
    }
