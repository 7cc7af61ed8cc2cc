import json

import pytest

from torus_curves import arith
from torus_curves.census import (
    TSV_HEADER,
    BudgetExceeded,
    CensusTable,
    census,
    census_records,
    default_jobs,
    enumerate_classes,
    enumerate_positioned,
    read_census,
    write_census,
)
from torus_curves.fgword import cyclic_canonical


def brute_classes(L: int) -> list:
    return sorted({cyclic_canonical(w) for w in enumerate_positioned(L)})


class TestEnumeration:
    @pytest.mark.parametrize("L, count", [(1, 4), (2, 8), (3, 12), (4, 26)])
    def test_counts(self, L, count):
        assert len(list(enumerate_classes(L))) == count

    def test_matches_brute_force_and_is_sorted(self):
        for L in range(1, 8):
            found = list(enumerate_classes(L))
            assert found == brute_classes(L)
            assert len(set(found)) == len(found)

    def test_positioned_words(self):
        for n in range(1, 11):
            assert sum(1 for _ in enumerate_positioned(n)) == arith.count_cyclically_reduced(n)

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            list(enumerate_classes(0))
        with pytest.raises(ValueError):
            list(enumerate_positioned(0))


class TestTables:
    def test_small_histogram(self):
        table = census(4)
        assert table.total == 26
        assert table.primitive_total == 18
        assert table.primitive(0) == 8
        assert table.primitive(1) == 8
        assert table.primitive(0, essential=False) == 2
        assert table.simple_multicurves == 16
        assert table.si1_all == 8 + 4

    def test_burnside_totals(self):
        for L in range(1, 10):
            assert census(L).total == arith.count_all_classes(L)

    def test_merge(self):
        a = census(5)
        merged = a.merge(CensusTable(5))
        assert merged.counts == a.counts
        with pytest.raises(ValueError):
            a.merge(CensusTable(6))

    def test_json(self):
        payload = census(5).to_json()
        assert payload["total"] == 52
        assert sum(row["count"] for row in payload["counts"]) == 52
        json.dumps(payload)

    def test_budget(self):
        with pytest.raises(BudgetExceeded):
            census(13, cap=12)
        with pytest.raises(ValueError):
            census(0)

    def test_parallel_equals_serial(self):
        serial, t1 = census_records(8, jobs=1)
        parallel, t2 = census_records(8, jobs=3)
        assert serial == parallel
        assert t1.counts == t2.counts and t1.powers == t2.powers

    def test_default_jobs(self, monkeypatch):
        monkeypatch.setenv("CURVES_JOBS", "3")
        assert default_jobs() == 3
        monkeypatch.delenv("CURVES_JOBS")
        assert default_jobs() >= 1


class TestFiles:
    def test_tsv_roundtrip(self, tmp_path):
        path = write_census(6, tmp_path, jobs=1)
        lines = path.read_text(encoding="utf-8").splitlines()
        assert lines[0] == TSV_HEADER
        assert len(lines) == 1 + arith.count_all_classes(6)
        records = read_census(path)
        assert records == census_records(6)[0]

        manifest = json.loads((tmp_path / "manifest.json").read_text(encoding="utf-8"))
        assert manifest["L"] == 6
        assert manifest["rows"] == len(records)
        assert manifest["files"]["census-L6.tsv"]["rows"] == len(records)

    def test_manifest_accumulates(self, tmp_path):
        write_census(3, tmp_path)
        write_census(4, tmp_path)
        manifest = json.loads((tmp_path / "manifest.json").read_text(encoding="utf-8"))
        assert set(manifest["files"]) == {"census-L3.tsv", "census-L4.tsv"}

    def test_rejects_foreign_file(self, tmp_path):
        bad = tmp_path / "x.tsv"
        bad.write_text("nope\n", encoding="utf-8")
        with pytest.raises(ValueError):
            read_census(bad)

    def test_non_primitive_rows(self, tmp_path):
        path = write_census(4, tmp_path)
        rows = [line.split("\t") for line in path.read_text(encoding="utf-8").splitlines()[1:]]
        abab = next(r for r in rows if r[1] == "abab")
        assert abab == ["4", "abab", "0", "1", "-"]
