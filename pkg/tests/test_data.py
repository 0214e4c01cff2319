"""CSV loading, schema checks, and stratified contingency counts."""
import numpy as np
import pytest

from causeway.data import DataTable, Schema, load_table, stratified_counts
from causeway.errors import HeaderMismatch, MissingCell, OverlappingRoles, UnknownLevel
from causeway.graph import Variable

SCHEMA = Schema([
    Variable("X", ("a", "b")),
    Variable("Y", ("0", "1", "2")),
    Variable("Z", ("n", "y")),
])

CSV = "X,Y,Z\na,0,n\nb,2,y\na,1,y\nb,0,n\n"


class TestLoad:
    def test_basic(self):
        t = load_table(CSV, SCHEMA)
        assert t.row_count == 4
        assert t.level_strings("Y") == ["0", "2", "1", "0"]
        assert list(t.column("X")) == [0, 1, 0, 1]

    def test_header_any_order(self):
        shuffled = "Z,X,Y\nn,a,0\n"
        t = load_table(shuffled, SCHEMA)
        assert t.level_strings("X") == ["a"] and t.level_strings("Z") == ["n"]

    def test_header_mismatch(self):
        with pytest.raises(HeaderMismatch):
            load_table("X,Y\na,0\n", SCHEMA)

    def test_unknown_level_reports_row(self):
        with pytest.raises(UnknownLevel, match="row 3"):
            load_table("X,Y,Z\na,0,n\na,9,n\n", SCHEMA)

    def test_missing_cell(self):
        with pytest.raises(MissingCell):
            load_table("X,Y,Z\na,0\n", SCHEMA)

    def test_drop_incomplete(self):
        t = load_table("X,Y,Z\na,0,n\na,,n\nb,1,y\n", SCHEMA, drop_incomplete=True)
        assert t.row_count == 2
        assert t.dropped_rows == 1

    def test_round_trip(self):
        t = load_table(CSV, SCHEMA)
        assert load_table(t.to_csv(), SCHEMA) == t

    def test_select_rows(self):
        t = load_table(CSV, SCHEMA)
        sub = t.select_rows(np.array([0, 2]))
        assert sub.row_count == 2
        assert sub.level_strings("Y") == ["0", "1"]


class TestStratifiedCounts:
    def test_counts_sum_to_rows(self):
        t = load_table(CSV, SCHEMA)
        tables = stratified_counts(t, "X", "Y", ("Z",))
        assert sum(tab.counts.sum() for tab in tables) == t.row_count

    def test_unconditional_single_table(self):
        t = load_table(CSV, SCHEMA)
        (tab,) = stratified_counts(t, "X", "Y", ())
        assert tab.counts.shape == (2, 3)
        assert tab.counts[0, 0] == 1

    def test_zero_strata_omitted(self):
        t = load_table("X,Y,Z\na,0,n\nb,1,n\n", SCHEMA)
        tables = stratified_counts(t, "X", "Y", ("Z",))
        assert [tab.stratum for tab in tables] == [(("Z", "n"),)]

    def test_overlapping_roles(self):
        t = load_table(CSV, SCHEMA)
        with pytest.raises(OverlappingRoles):
            stratified_counts(t, "X", "Y", ("X",))

    def test_strata_ordered_by_level_codes(self):
        csv = "X,Y,Z\na,0,y\na,0,n\nb,1,y\nb,1,n\n"
        t = load_table(csv, SCHEMA)
        tables = stratified_counts(t, "X", "Y", ("Z",))
        assert [tab.stratum for tab in tables] == [(("Z", "n"),), (("Z", "y"),)]
