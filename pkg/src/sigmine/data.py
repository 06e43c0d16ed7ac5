"""Dataset model and CSV ingestion.

A dataset is an immutable table of m transactions: categorical columns are
stored integer-coded (codes assigned in first-appearance order, with the
original strings kept for reporting), continuous columns as float64, and the
binary target as a 0/1 vector.  Instances are safe for concurrent shared
reads.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import bitset
from .errors import IngestionError, SchemaError


class Kind(str, Enum):
    CATEGORICAL = "categorical"
    CONTINUOUS = "continuous"
    TARGET = "target"


@dataclass(frozen=True)
class ColumnSchema:
    name: str
    kind: Kind


# A column is inferred continuous only when every value parses as a real
# number and the column has more than this many distinct values; low-arity
# integer columns (grades, counts) behave like categories in practice.
INFER_DISTINCT_THRESHOLD = 12


class LabelVector:
    """A binary vector of length m: observed targets or one resample.

    Keeps both the 0/1 array and the packed bitset form; the bitset is what
    the search hot loop intersects with covers.
    """

    __slots__ = ("bits", "mask", "m", "ones")

    def __init__(self, bits) -> None:
        arr = np.ascontiguousarray(bits, dtype=np.uint8)
        if arr.ndim != 1:
            raise ValueError("labels must be 1-d")
        if arr.size and arr.max() > 1:
            raise ValueError("labels must be 0/1")
        self.bits = arr
        self.bits.setflags(write=False)
        self.m = int(arr.size)
        self.mask = bitset.pack(arr)
        self.ones = int(arr.sum())

    def mean(self) -> float:
        return self.ones / self.m

    def __eq__(self, other) -> bool:
        return isinstance(other, LabelVector) and self.m == other.m and self.mask == other.mask

    def __hash__(self) -> int:
        return hash((self.m, self.mask))

    def __repr__(self) -> str:
        return f"LabelVector(m={self.m}, ones={self.ones})"


class Dataset:
    """Immutable feature matrix plus binary target.

    `schema` lists the feature columns only (CSV order, target removed);
    `values[i]` is the i-th feature column: int32 codes for categorical
    columns, float64 for continuous ones.
    """

    def __init__(
        self,
        schema: list[ColumnSchema],
        values: list[np.ndarray],
        target: LabelVector,
        cat_values: dict[int, list[str]] | None = None,
        target_name: str = "target",
    ) -> None:
        names = [c.name for c in schema] + [target_name]
        if len(set(names)) != len(names) or any(not n for n in names):
            raise SchemaError("column names must be unique and non-empty")
        if len(schema) != len(values):
            raise SchemaError("schema/values length mismatch")
        m = target.m
        if m < 1:
            raise SchemaError("dataset needs at least one transaction")
        self.schema = list(schema)
        self.values: list[np.ndarray] = []
        self.cat_values = dict(cat_values or {})
        for i, (col, arr) in enumerate(zip(schema, values)):
            if col.kind is Kind.CATEGORICAL:
                a = np.ascontiguousarray(arr, dtype=np.int32)
            elif col.kind is Kind.CONTINUOUS:
                a = np.ascontiguousarray(arr, dtype=np.float64)
                if not np.all(np.isfinite(a)):
                    raise SchemaError(f"column '{col.name}' contains non-finite values")
            else:
                raise SchemaError("feature schema must not contain a target column")
            if a.size != m:
                raise SchemaError(f"column '{col.name}' has length {a.size}, expected {m}")
            a.setflags(write=False)
            self.values.append(a)
        self.target = target
        self.target_name = target_name
        self.m = m

    @property
    def n_features(self) -> int:
        return len(self.schema)

    def mean_target(self) -> float:
        return self.target.mean()

    def column_index(self, name: str) -> int:
        for i, col in enumerate(self.schema):
            if col.name == name:
                return i
        raise KeyError(name)

    def decode(self, column: int, code: int) -> str:
        """Original string for a categorical code (falls back to the code)."""
        vals = self.cat_values.get(column)
        if vals is not None and 0 <= code < len(vals):
            return vals[code]
        return str(code)

    def fingerprint(self) -> str:
        """Stable content hash used to identify datasets in reports."""
        import hashlib

        h = hashlib.sha256()
        h.update(repr([(c.name, c.kind.value) for c in self.schema]).encode())
        h.update(self.target.bits.tobytes())
        for arr in self.values:
            h.update(arr.tobytes())
        return h.hexdigest()[:16]


def mean_target(dataset: Dataset) -> float:
    """Fraction of transactions with target 1 (exact count / m)."""
    return dataset.mean_target()


def _parse_real(text: str) -> float | None:
    try:
        v = float(text)
    except ValueError:
        return None
    return v if math.isfinite(v) else None


def read_schema_file(path) -> list[ColumnSchema]:
    """Sidecar schema: one `name=kind` line per column, in column order."""
    out = []
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise SchemaError(f"schema line {lineno}: expected name=kind, got {line!r}")
            name, _, kind = line.partition("=")
            try:
                out.append(ColumnSchema(name.strip(), Kind(kind.strip())))
            except ValueError:
                raise SchemaError(f"schema line {lineno}: unknown kind {kind.strip()!r}") from None
    return out


def _infer_schema(header: list[str], rows: list[list[str]], target_column: str | None) -> list[ColumnSchema]:
    tgt = target_column if target_column is not None else header[-1]
    if tgt not in header:
        raise SchemaError(f"target column {tgt!r} not in header")
    out = []
    for j, name in enumerate(header):
        if name == tgt:
            out.append(ColumnSchema(name, Kind.TARGET))
            continue
        cells = [r[j] for r in rows]
        numeric = all(_parse_real(c) is not None for c in cells)
        if numeric and len(set(cells)) > INFER_DISTINCT_THRESHOLD:
            out.append(ColumnSchema(name, Kind.CONTINUOUS))
        else:
            out.append(ColumnSchema(name, Kind.CATEGORICAL))
    return out


def load_csv(path, schema="infer", target_column: str | None = None) -> Dataset:
    """Load a comma-separated UTF-8 file with a header row.

    `schema` is a list of ColumnSchema covering every CSV column (exactly one
    of kind target), the string "infer", or a path to a sidecar schema file.
    Under inference the last column is the target unless `target_column`
    overrides it.  Rows with empty cells are rejected rather than imputed.
    """
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise IngestionError(f"{path}: empty file") from None
        rows = []
        for lineno, row in enumerate(reader, start=2):
            if len(row) != len(header):
                raise IngestionError(
                    f"{path}: line {lineno} has {len(row)} values, expected {len(header)}"
                )
            if any(cell.strip() == "" for cell in row):
                raise IngestionError(f"{path}: line {lineno} has an empty cell")
            rows.append(row)
    if not rows:
        raise IngestionError(f"{path}: no data rows")

    if isinstance(schema, str):
        cols = _infer_schema(header, rows, target_column) if schema == "infer" else read_schema_file(schema)
    else:
        cols = list(schema)
    if len(cols) != len(header):
        raise SchemaError(f"schema has {len(cols)} columns, file has {len(header)}")
    targets = [i for i, c in enumerate(cols) if c.kind is Kind.TARGET]
    if len(targets) != 1:
        raise SchemaError(f"schema must declare exactly one target column, found {len(targets)}")
    tcol = targets[0]

    target_bits = np.empty(len(rows), dtype=np.uint8)
    for i, row in enumerate(rows):
        cell = row[tcol].strip()
        if cell == "0":
            target_bits[i] = 0
        elif cell == "1":
            target_bits[i] = 1
        else:
            raise SchemaError(
                f"{path}: line {i + 2}: target value {cell!r} is not in {{0,1}}"
            )

    feat_schema: list[ColumnSchema] = []
    feat_values: list[np.ndarray] = []
    cat_values: dict[int, list[str]] = {}
    for j, col in enumerate(cols):
        if col.kind is Kind.TARGET:
            continue
        cells = [r[j] for r in rows]
        fidx = len(feat_schema)
        if col.kind is Kind.CONTINUOUS:
            parsed = np.empty(len(cells), dtype=np.float64)
            for i, cell in enumerate(cells):
                v = _parse_real(cell)
                if v is None:
                    raise SchemaError(
                        f"{path}: line {i + 2}: non-numeric value {cell!r} "
                        f"in continuous column '{col.name}'"
                    )
                parsed[i] = v
            feat_values.append(parsed)
        else:
            codes = np.empty(len(cells), dtype=np.int32)
            seen: dict[str, int] = {}
            for i, cell in enumerate(cells):
                code = seen.setdefault(cell, len(seen))
                codes[i] = code
            cat_values[fidx] = sorted(seen, key=seen.get)
            feat_values.append(codes)
        feat_schema.append(ColumnSchema(col.name, col.kind))

    return Dataset(
        feat_schema,
        feat_values,
        LabelVector(target_bits),
        cat_values,
        target_name=cols[tcol].name,
    )


def to_csv(dataset: Dataset, path) -> None:
    """Write a dataset back to CSV (categorical codes decoded to strings)."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow([c.name for c in dataset.schema] + [dataset.target_name])
        for i in range(dataset.m):
            row = []
            for j, col in enumerate(dataset.schema):
                if col.kind is Kind.CATEGORICAL:
                    row.append(dataset.decode(j, int(dataset.values[j][i])))
                else:
                    row.append(repr(float(dataset.values[j][i])))
            row.append(str(int(dataset.target.bits[i])))
            writer.writerow(row)
