"""Command line front end: ``torus-curves <command> ...``."""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass, field
from pathlib import Path

from . import __version__, arith
from .census import DEFAULT_CAP, BudgetExceeded, census, census_records, default_jobs, enumerate_positioned, write_census
from .classify import describe
from .fgword import TrivialClassError, WordSyntaxError, cyclic_canonical, is_essential, parse_word
from .linking import NonPrimitiveError, linking_classes

FAMILIES = (
    "simple-primitive",
    "simple-multicurve",
    "si1-primitive",
    "si1-all",
    "all-primitive",
    "all-classes",
)

# (family, length) slots where the reference value is known to disagree
# with direct enumeration, or where it is worth double checking.
ERRATA = {
    ("all-primitive", 2): "reference value is 8 primitive classes of length 2; enumeration finds 4 (the ab-type classes)",
    ("si1-primitive", 5): "length-5 slot: a^2b^-1ab (= ab^-1aba) has self-intersection 2, so the orbit of ab^-1a^-1b^2 is the only length-5 family",
    ("simple-primitive-cumulative", None): "reference closed form is 4 Phi(L) + 2; summing the per-length counts gives 4 Phi(L)",
}


class UsageError(Exception):
    pass


def _formula(family: str, L: int) -> int | None:
    """Reference closed-form value, or None outside the range where it applies."""
    try:
        if family == "simple-primitive":
            return 4 * arith.euler_phi(L) if L >= 4 else None
        if family == "simple-multicurve":
            return arith.count_simple_multicurve(L) if L >= 4 else None
        if family == "si1-primitive":
            return arith.count_si1_primitive(L) if L >= 4 else None
        if family == "si1-all":
            return arith.count_si1_all(L) if L >= 4 else None
        if family == "all-primitive":
            return arith.count_all_primitive(L, reference=True)
        if family == "all-classes":
            return arith.count_all_classes(L)
        if family == "simple-primitive-cumulative":
            return arith.count_simple_primitive_cumulative(L, "plus-two") if L >= 4 else None
    except ValueError:
        return None
    raise UsageError(f"unknown family {family!r}")


def _census_value(family: str, table) -> int:
    if family == "simple-primitive":
        return table.primitive(0)
    if family == "simple-multicurve":
        return table.simple_multicurves
    if family == "si1-primitive":
        return table.primitive(1)
    if family == "si1-all":
        return table.si1_all
    if family == "all-primitive":
        return table.primitive_total
    if family == "all-classes":
        return table.total
    raise UsageError(f"unknown family {family!r}")


# -- commands ----------------------------------------------------------------

def _parse_class(text: str):
    try:
        return cyclic_canonical(parse_word(text))
    except WordSyntaxError as exc:
        raise UsageError(f"parse error: {exc}") from exc
    except TrivialClassError as exc:
        raise UsageError(f"trivial class: {exc}") from exc


def cmd_intersect(args) -> int:
    w = _parse_class(args.word)
    try:
        classes = linking_classes(w)
    except NonPrimitiveError as exc:
        raise UsageError(str(exc)) from exc
    print(len(classes))
    if args.explain:
        rotations = w.rotations()
        for k, cls in enumerate(classes, 1):
            pairs = ", ".join(
                f"({i + 1},{j + 1}) {''.join('abAB'[x] for x in rotations[i])}|{''.join('abAB'[x] for x in rotations[j])}"
                for i, j in cls
            )
            print(f"class {k}: {pairs}")
    return 0


def cmd_classify(args) -> int:
    w = _parse_class(args.word)
    print(json.dumps(describe(w, args.max_length)))
    return 0


def cmd_count(args) -> int:
    L, family, mode = args.length, args.family, args.mode
    formula = census_value = None
    if mode in ("formula", "both"):
        formula = _formula(family, L)
    if mode in ("census", "both"):
        table = census(L, jobs=args.jobs, cap=args.cap)
        census_value = _census_value(family, table)
    fmt = lambda v: "n/a" if v is None else str(v)  # noqa: E731
    if mode == "formula":
        print(fmt(formula))
    elif mode == "census":
        print(census_value)
    else:
        status = "formula-n/a" if formula is None else ("match" if formula == census_value else "mismatch")
        print(f"{fmt(formula)} {census_value} {status}")
    return 0


def cmd_enumerate(args) -> int:
    records, _ = census_records(args.length, jobs=args.jobs, cap=args.cap)
    out = sys.stdout
    for rec in records:
        if args.primitive and not rec.primitive:
            continue
        if args.essential and not rec.essential:
            continue
        if args.si is not None and rec.self_intersection != args.si:
            continue
        out.write(f"{rec.word}\n")
    return 0


def cmd_census(args) -> int:
    if args.json:
        records, table = census_records(args.length, jobs=args.jobs, cap=args.cap)
        print(json.dumps(table.to_json(), indent=2))
        return 0
    path = write_census(args.length, args.out, jobs=args.jobs, cap=args.cap)
    print(path)
    return 0


@dataclass
class VerifyEntry:
    family: str
    length: int
    formula: int | None
    census: int
    status: str


@dataclass
class VerifyReport:
    max_length: int
    strict: bool
    entries: list[VerifyEntry] = field(default_factory=list)
    errata: list[str] = field(default_factory=list)

    @property
    def failed(self) -> bool:
        bad = {"mismatch"} | ({"erratum"} if self.strict else set())
        return any(e.status in bad for e in self.entries)

    def to_json(self) -> dict:
        return {
            "tool": "torus-curves",
            "version": __version__,
            "max_length": self.max_length,
            "strict": self.strict,
            "ok": not self.failed,
            "entries": [asdict(e) for e in self.entries],
            "errata": self.errata,
        }


def _status(family: str, L: int, formula: int | None, value: int) -> str:
    if formula is None:
        return "formula-n/a"
    if formula == value:
        return "match"
    if (family, L) in ERRATA or (family, None) in ERRATA:
        return "erratum"
    return "mismatch"


def run_verify(max_length: int, jobs: int = 1, strict: bool = False, cap: int = DEFAULT_CAP) -> VerifyReport:
    report = VerifyReport(max_length, strict)
    cumulative_simple = 0
    for L in range(1, max_length + 1):
        table = census(L, jobs=jobs, cap=cap)
        for family in FAMILIES:
            formula = _formula(family, L)
            value = _census_value(family, table)
            report.entries.append(VerifyEntry(family, L, formula, value, _status(family, L, formula, value)))
        cumulative_simple += table.primitive(0)
        formula = _formula("simple-primitive-cumulative", L)
        family = "simple-primitive-cumulative"
        report.entries.append(
            VerifyEntry(family, L, formula, cumulative_simple, _status(family, L, formula, cumulative_simple))
        )
        if L <= 12:
            positioned = sum(1 for _ in enumerate_positioned(L))
            formula = arith.count_cyclically_reduced(L)
            report.entries.append(
                VerifyEntry("cyclically-reduced-words", L, formula, positioned, _status("", L, formula, positioned))
            )
    hit = {(e.family, e.length) for e in report.entries if e.status == "erratum"}
    for (family, L), note in ERRATA.items():
        if L is None:
            lengths = sorted(length for f, length in hit if f == family)
            if lengths:
                report.errata.append(f"{family} at L={lengths[0]}..{lengths[-1]}: {note}")
        elif (family, L) in hit:
            report.errata.append(f"{family} at L={L}: {note}")
        elif L <= max_length:
            report.errata.append(f"{family} at L={L}: checked, census agrees with the closed form ({note})")
    return report


def cmd_verify(args) -> int:
    report = run_verify(args.max_length, jobs=args.jobs, strict=args.strict, cap=args.cap)
    for e in report.entries:
        formula = "n/a" if e.formula is None else e.formula
        print(f"{e.family:30s} L={e.length:<3d} formula={formula!s:<8} census={e.census:<8} {e.status}")
    for note in report.errata:
        print(f"note: {note}")
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(json.dumps(report.to_json(), indent=2) + "\n", encoding="utf-8")
    print("FAIL" if report.failed else "OK")
    return 1 if report.failed else 0


# -- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="torus-curves", description=__doc__)
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_census_opts(p):
        p.add_argument("--jobs", type=int, default=None, help="census worker processes (default: CURVES_JOBS or CPU count)")
        p.add_argument("--cap", type=int, default=DEFAULT_CAP, help="maximum census length")

    p = sub.add_parser("intersect", help="self-intersection number of a primitive class")
    p.add_argument("word")
    p.add_argument("--explain", action="store_true", help="list the linking-pair classes")
    p.set_defaults(func=cmd_intersect)

    p = sub.add_parser("classify", help="classify a class as JSON")
    p.add_argument("word")
    p.add_argument("--max-length", type=int, default=None, help="skip the self-intersection fallback above this length")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("count", help="count classes by formula and/or census")
    p.add_argument("--length", type=int, required=True)
    p.add_argument("--family", choices=FAMILIES, required=True)
    p.add_argument("--mode", choices=("formula", "census", "both"), default="formula")
    add_census_opts(p)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("enumerate", help="list canonical classes of a length")
    p.add_argument("--length", type=int, required=True)
    p.add_argument("--si", type=int, default=None, help="keep primitive classes with this self-intersection")
    p.add_argument("--primitive", action="store_true")
    p.add_argument("--essential", action="store_true")
    add_census_opts(p)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("census", help="write census-L{L}.tsv and manifest.json")
    p.add_argument("--length", type=int, required=True)
    p.add_argument("--out", default=".", help="output directory")
    p.add_argument("--json", action="store_true", help="print the histogram as JSON instead")
    add_census_opts(p)
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("verify", help="compare every formula with the census")
    p.add_argument("--max-length", type=int, default=10)
    p.add_argument("--strict", action="store_true", help="treat documented errata as failures")
    p.add_argument("--out", default="verify-report.json", help="report path")
    add_census_opts(p)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    if getattr(args, "jobs", 1) is None:
        args.jobs = default_jobs()
    for name in ("length", "max_length"):
        value = getattr(args, name, None)
        if value is not None and value < 1:
            print(f"error: --{name.replace('_', '-')} must be positive", file=sys.stderr)
            return 2
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except BudgetExceeded as exc:
        print(f"error: budget exceeded: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
