"""Categorical data ingestion, schema validation, and contingency tables.

Rows are stored column-wise as integer level codes; tables are immutable
after load. Loading is all-or-nothing: any malformed cell raises a located
error unless ``drop_incomplete`` explicitly permits dropping rows with empty
cells.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from causeway.errors import (
    HeaderMismatch,
    MissingCell,
    OverlappingRoles,
    UnknownLevel,
    UnknownVariable,
)
from causeway.graph import Variable


class Schema:
    """Ordered list of categorical variables defining a table layout."""

    def __init__(self, variables: Sequence[Variable]):
        names = [v.name for v in variables]
        if len(set(names)) != len(names):
            raise ValueError("duplicate variable names in schema")
        self.variables: tuple[Variable, ...] = tuple(variables)
        self._index = {name: i for i, name in enumerate(names)}

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(v.name for v in self.variables)

    def variable(self, name: str) -> Variable:
        return self.variables[self.index(name)]

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UnknownVariable(name) from None

    def __eq__(self, other):
        return isinstance(other, Schema) and self.variables == other.variables

    def __contains__(self, name: str) -> bool:
        return name in self._index


@dataclass(frozen=True)
class ContingencyTable:
    """Counts for one (x, y) cross-tabulation within one stratum of z."""

    x: str
    y: str
    stratum: tuple[tuple[str, str], ...]  # (z variable, level) pairs, sorted by variable
    counts: np.ndarray  # shape (levels(x), levels(y)), int64

    @property
    def total(self) -> int:
        return int(self.counts.sum())


class DataTable:
    """Immutable table of categorical observations conforming to a schema."""

    def __init__(self, schema: Schema, codes: np.ndarray, dropped_rows: int = 0):
        codes = np.asarray(codes, dtype=np.int32)
        if codes.ndim != 2 or codes.shape[1] != len(schema.variables):
            raise ValueError("codes shape does not match schema")
        self.schema = schema
        self.codes = codes
        self.codes.setflags(write=False)
        self.dropped_rows = dropped_rows

    @property
    def row_count(self) -> int:
        return int(self.codes.shape[0])

    def column(self, name: str) -> np.ndarray:
        """Integer level codes for one variable (codes index into its level list)."""
        return self.codes[:, self.schema.index(name)]

    def level_strings(self, name: str) -> list[str]:
        levels = self.schema.variable(name).levels
        return [levels[c] for c in self.column(name)]

    def select_rows(self, indices: np.ndarray) -> "DataTable":
        return DataTable(self.schema, self.codes[indices])

    def __eq__(self, other):
        return (
            isinstance(other, DataTable)
            and self.schema == other.schema
            and np.array_equal(self.codes, other.codes)
        )

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(self.schema.names)
        level_maps = [v.levels for v in self.schema.variables]
        for row in self.codes:
            writer.writerow([level_maps[j][c] for j, c in enumerate(row)])
        return buf.getvalue()


def load_table(source, schema: Schema, drop_incomplete: bool = False) -> DataTable:
    """Load delimited text (file object, path, or string content) into a table.

    The first record must name exactly the schema variables, in any order;
    columns are normalized to schema order. Every failure is a located error,
    never a partial table.
    """
    if hasattr(source, "read"):
        text = source.read()
    else:
        text = str(source)
        if "\n" not in text and "," not in text:
            with open(text, "r", encoding="utf-8") as fh:
                text = fh.read()
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise HeaderMismatch(schema.names, []) from None
    header = [h.strip() for h in header]
    if sorted(header) != sorted(schema.names):
        raise HeaderMismatch(schema.names, header)
    col_order = [header.index(name) for name in schema.names]
    level_index = [
        {level: i for i, level in enumerate(v.levels)} for v in schema.variables
    ]
    rows: list[list[int]] = []
    dropped = 0
    for rownum, record in enumerate(reader, start=2):
        if not record or all(not c.strip() for c in record):
            continue
        coded: list[int] = []
        incomplete = False
        for j, src_col in enumerate(col_order):
            value = record[src_col].strip() if src_col < len(record) else ""
            if not value:
                if drop_incomplete:
                    incomplete = True
                    break
                raise MissingCell(rownum, schema.names[j])
            try:
                coded.append(level_index[j][value])
            except KeyError:
                raise UnknownLevel(schema.names[j], value, row=rownum) from None
        if incomplete:
            dropped += 1
            continue
        rows.append(coded)
    codes = np.array(rows, dtype=np.int32).reshape(len(rows), len(schema.variables))
    return DataTable(schema, codes, dropped_rows=dropped)


def stratified_counts(
    t: DataTable, x: str, y: str, z: Iterable[str] = ()
) -> list[ContingencyTable]:
    """One contingency table per observed combination of z levels.

    Strata with zero rows are omitted; stratum order is lexicographic in the
    level codes of the sorted z variables.
    """
    z_names = sorted(set(z))
    roles = [x, y, *z_names]
    if len(set(roles)) != len(roles):
        raise OverlappingRoles([n for n in roles if roles.count(n) > 1])
    xv, yv = t.schema.variable(x), t.schema.variable(y)
    xc, yc = t.column(x), t.column(y)
    nx, ny = len(xv.levels), len(yv.levels)

    def crosstab(mask: np.ndarray | None) -> np.ndarray:
        xs = xc if mask is None else xc[mask]
        ys = yc if mask is None else yc[mask]
        flat = np.bincount(xs * ny + ys, minlength=nx * ny)
        return flat.reshape(nx, ny).astype(np.int64)

    if not z_names:
        return [ContingencyTable(x, y, (), crosstab(None))]

    z_cols = np.stack([t.column(name) for name in z_names], axis=1)
    out: list[ContingencyTable] = []
    combos = sorted({tuple(int(c) for c in row) for row in z_cols})
    for combo in combos:
        mask = np.all(z_cols == np.array(combo, dtype=np.int32), axis=1)
        stratum = tuple(
            (name, t.schema.variable(name).levels[code])
            for name, code in zip(z_names, combo)
        )
        out.append(ContingencyTable(x, y, stratum, crosstab(mask)))
    return out
