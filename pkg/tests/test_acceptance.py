"""End-to-end acceptance checks; each test reports one PASS/FAIL line."""

import os
import time
from itertools import product
from math import ceil, gcd, pi

import sympy

from torus_curves import arith
from torus_curves.census import enumerate_positioned, write_census
from torus_curves.cli import run_verify
from torus_curves.fgword import RENAMINGS, apply_alpha, cyclic_canonical, word_from_necklace
from torus_curves.linking import self_intersection
from torus_curves.necklace import (
    IntNecklace,
    Profile,
    SpreadError,
    a_map,
    b_map,
    essential_pairs,
    has_small_variation,
    has_two_variation,
    necklaces_with_profile,
    profile,
    reduced_profile,
    runs,
)


def test_simple_primitive_counts(census_cache, criterion):
    got = {L: census_cache(L)[1].primitive(0) for L in range(4, 13)}
    want = {L: 4 * arith.euler_phi(L) for L in range(4, 13)}
    ok = got == want and got[4] == 8 and got[5] == 16
    criterion(1, "simple primitive classes = 4 phi(L), L = 4..12", ok, f"census {list(got.values())}")


def test_simple_multicurves(census_cache, criterion):
    got = {L: census_cache(L)[1].simple_multicurves for L in range(4, 13)}
    per_length = all(got[L] == 4 * L for L in got)
    n, L = sympy.symbols("n L", positive=True, integer=True)
    symbolic = sympy.simplify(sympy.summation(4 * n, (n, 1, L)) - (2 * L**2 + 2 * L)) == 0
    running, numeric = 0, True
    for k in range(1, 10_001):
        running += arith.count_simple_multicurve(k)
        numeric &= running == arith.count_simple_multicurve_cumulative(k)
    criterion(2, "simple multicurves = 4L; sum equals 2L^2 + 2L", per_length and symbolic and numeric)


def test_self_intersection_one(census_cache, criterion):
    lengths = (4, 6, 7, 8, 9, 10, 11, 12)
    got = {L: census_cache(L)[1].primitive(1) for L in lengths}
    exact = all(got[L] == arith.count_si1_primitive(L) for L in lengths)
    anchors = (got[4], got[6], got[8]) == (8, 16, 24)
    report = run_verify(5, jobs=1)
    slot = next(e for e in report.entries if (e.family, e.length) == ("si1-primitive", 5))
    if slot.census == 8:
        length_five = slot.status == "match"
    else:
        length_five = slot.status == "erratum" and run_verify(5, jobs=1, strict=True).failed
    detail = f"L=5 census {slot.census}, status {slot.status}"
    criterion(3, "si-1 primitive counts match the closed form", exact and anchors and length_five, detail)


def test_all_classes(census_cache, criterion):
    totals = all(census_cache(L)[1].total == arith.count_all_classes(L) for L in range(1, 13))
    primitive = all(
        census_cache(L)[1].primitive_total
        == sum(arith.moebius(d) * 3 ** (L // d) for d in arith.divisors(L)) // L
        for L in range(3, 13)
    )
    small = [census_cache(L)[1].primitive_total for L in (1, 2)]
    report = run_verify(2, jobs=1)
    statuses = {e.length: e.status for e in report.entries if e.family == "all-primitive"}
    flagged = small == [4, 4] and statuses == {1: "match", 2: "erratum"} and any(
        "all-primitive at L=2" in note for note in report.errata
    )
    criterion(4, "class totals and primitive totals; L = 2 erratum flagged", totals and primitive and flagged)


def test_positioned_words(criterion):
    counts = [sum(1 for _ in enumerate_positioned(n)) for n in range(1, 13)]
    ok = counts == [2 + (-1) ** n + 3**n for n in range(1, 13)]
    criterion(5, "cyclically reduced words = 2 + (-1)^n + 3^n, n = 1..12", ok)


def test_necklace_uniqueness(criterion):
    bad = []
    for m in range(1, 4):
        for x in range(1, 10):
            for y in range(1, 11 - x):
                found = list(necklaces_with_profile(Profile(m, x, y)))
                sv = sum(has_small_variation(n) for n in found)
                tv = sum(has_two_variation(n) for n in found)
                if sv != 1 or tv != (1 if gcd(x, y) == 2 else 0):
                    bad.append((m, x, y, sv, tv))
    criterion(6, "one small-variation necklace per profile; one 2-variation iff gcd = 2", not bad, f"{len(bad)} bad")


def _positive_necklaces(max_word_length: int):
    seen = set()

    def rec(seq, rest):
        if seq:
            neck = IntNecklace.of(seq)
            if neck not in seen:
                seen.add(neck)
                yield neck
        for v in range(1, rest):
            yield from rec(seq + [v], rest - v - 1)

    yield from rec([], max_word_length)


def test_equivalences(criterion):
    bad, gap_two, checked = [], [], 0
    for neck in _positive_necklaces(12):
        if not neck.is_aperiodic():
            continue
        checked += 1
        value = self_intersection(word_from_necklace(neck))
        if has_small_variation(neck) != (value == 0):
            bad.append(neck)
        try:
            _, x, y = profile(neck)
        except SpreadError:
            if value == 1:
                gap_two.append(neck)
            continue
        if x and y and (has_two_variation(neck) != (value == 1) or len(essential_pairs(neck)) != value):
            bad.append(neck)
    # words a^m b a^(m+2) b have si 1 through a separate family, not through 2-variation
    ok = not bad and all(n.entries[1] - n.entries[0] == 2 and len(n) == 2 for n in gap_two)
    criterion(7, "small variation <=> si 0, 2-variation <=> si 1, pairs = classes", ok, f"{checked} words")


def test_diophantine_counts(criterion):
    ok = True
    for L in range(1, 501):
        ok &= len(arith.solution_set(L, "S")) == (L // 2 if L % 2 == 0 else (L - 1) // 2)
        expected = ceil(arith.euler_phi(L // 2) / 2) - 1 if L % 2 == 0 and L >= 2 else 0
        ok &= len(arith.solution_set(L, "S2")) == max(expected, 0)
    criterion(8, "|S(L)| and |S2(L)| match their closed forms, L = 1..500", ok)


def test_invariance(primitive_sample, criterion):
    bad = 0
    for w in primitive_sample:
        value = self_intersection(w)
        images = [cyclic_canonical(r(w.letters)) for r in RENAMINGS]
        images.append(w.inverse())
        for m, variant, direction in product((1, 2), ("plain", "tilde"), ("forward", "inverse")):
            images.append(cyclic_canonical(apply_alpha(w.letters, m, variant, direction)))
        bad += any(self_intersection(image) != value for image in images)
    criterion(9, "self-intersection invariant under renamings, inversion, alpha maps", bad == 0, f"{len(primitive_sample)} words")


def test_run_map_roundtrips(criterion):
    bad = 0
    checked = 0
    for m in (1, 2, 3):
        for k in range(2, 11):
            seen = set()
            for bits in product((0, 1), repeat=k):
                if not 0 < sum(bits) < k:
                    continue
                neck = IntNecklace.of(m + b for b in bits)
                if neck in seen:
                    continue
                seen.add(neck)
                _, x, y = profile(neck)
                minority = m if y >= x else m + 1
                if set(runs(neck, minority)) == {1}:
                    checked += 1
                    bad += b_map(m, a_map(neck), "plain" if y >= x else "tilde") != neck
                if has_small_variation(neck):
                    bad += profile(a_map(neck)) != reduced_profile(x, y)
    for k in range(1, 11):
        for entries in product((1, 2), repeat=k):
            for variant in ("plain", "tilde"):
                bad += a_map(b_map(2, entries, variant)) != IntNecklace.of(entries)
    criterion(10, "A/B roundtrips and profile recursion, size <= 10", bad == 0, f"{checked} roundtrips")


def test_asymptotics(criterion):
    report = arith.asymptotic_report(10**6)
    ratio = abs(report["simple_over_si1"] / (4 / 9) - 1)
    density = abs(report["simple_over_L2"] / (12 / pi**2) - 1)
    criterion(11, "cumulative ratios at L = 10^6", ratio < 0.01 and density < 0.01, f"{ratio:.1e}, {density:.1e}")


def test_determinism_and_speed(tmp_path, criterion):
    start = time.perf_counter()
    serial = write_census(12, tmp_path / "serial", jobs=1)
    elapsed = time.perf_counter() - start
    workers = max(2, min(4, os.cpu_count() or 1))
    parallel = write_census(12, tmp_path / "parallel", jobs=workers)
    same = serial.read_bytes() == parallel.read_bytes()
    same &= (serial.parent / "manifest.json").read_bytes() == (parallel.parent / "manifest.json").read_bytes()
    criterion(12, "census(12) within 60 s, identical for 1 and N workers", elapsed <= 60 and same, f"{elapsed:.1f} s")
