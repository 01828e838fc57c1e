"""Categorical datasets: CSV ingest, level recoding, contingency counts, bootstrap.

A :class:`Dataset` stores an ``N x V`` matrix of level indices together with
the level vocabulary of every column. Datasets are treated as immutable; every
operation returns a new object.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import IO, Iterable, Mapping, Sequence

import numpy as np


class DatasetError(ValueError):
    """Base class for data loading and recoding problems."""


class CsvParseError(DatasetError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DegenerateVariableError(DatasetError):
    def __init__(self, name: str, levels: Sequence[str]):
        self.name = name
        super().__init__(
            f"column {name!r} has fewer than 2 observed levels: {list(levels)}"
        )


class RecodeError(DatasetError):
    pass


@dataclass(frozen=True)
class Variable:
    name: str
    levels: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "levels", tuple(self.levels))
        if len(self.levels) < 2:
            raise DegenerateVariableError(self.name, self.levels)
        if len(set(self.levels)) != len(self.levels):
            raise DatasetError(f"duplicate level labels in {self.name!r}")

    @property
    def arity(self) -> int:
        return len(self.levels)


class Dataset:
    """Rows of categorical level indices over named variables.

    Parameters
    ----------
    variables : sequence of Variable
        Column definitions, in column order.
    rows : array_like of int, shape (N, V)
        Level index of every cell.
    dropped_row_count : int
        Number of rows discarded at load time (listwise deletion).
    """

    def __init__(self, variables: Sequence[Variable], rows, dropped_row_count: int = 0):
        self.variables: tuple[Variable, ...] = tuple(variables)
        names = [v.name for v in self.variables]
        if len(set(names)) != len(names):
            raise DatasetError(f"duplicate variable names: {names}")
        rows = np.asarray(rows, dtype=np.int64)
        if rows.ndim != 2 or rows.shape[1] != len(self.variables):
            raise DatasetError(
                f"rows must have shape (N, {len(self.variables)}), got {rows.shape}"
            )
        if rows.shape[0] < 1:
            raise DatasetError("dataset has no rows")
        arities = np.array([v.arity for v in self.variables])
        if rows.size and ((rows < 0).any() or (rows >= arities).any()):
            raise DatasetError("level index out of range for its column")
        rows.setflags(write=False)
        self.rows = rows
        self.dropped_row_count = int(dropped_row_count)
        self._index = {name: i for i, name in enumerate(names)}

    @property
    def names(self) -> list[str]:
        return [v.name for v in self.variables]

    @property
    def n_rows(self) -> int:
        return self.rows.shape[0]

    def __len__(self) -> int:
        return self.n_rows

    def __contains__(self, name: str) -> bool:
        return name in self._index

    def __repr__(self) -> str:
        return f"Dataset(N={self.n_rows}, variables={self.names})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, Dataset):
            return NotImplemented
        return self.variables == other.variables and np.array_equal(self.rows, other.rows)

    def column_index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown variable {name!r}") from None

    def variable(self, name: str) -> Variable:
        return self.variables[self.column_index(name)]

    def arity(self, name: str) -> int:
        return self.variable(name).arity

    def column(self, name: str) -> np.ndarray:
        return self.rows[:, self.column_index(name)]

    def labels(self, name: str) -> list[str]:
        levels = self.variable(name).levels
        return [levels[i] for i in self.column(name)]

    def subset(self, names: Iterable[str]) -> "Dataset":
        """Dataset restricted to ``names`` (in the given order)."""
        names = list(names)
        idx = [self.column_index(n) for n in names]
        return Dataset([self.variables[i] for i in idx], self.rows[:, idx], self.dropped_row_count)

    def with_rows(self, rows) -> "Dataset":
        return Dataset(self.variables, rows, self.dropped_row_count)


def _read_records(source) -> list[list[str]]:
    if isinstance(source, (str, Path)):
        with open(source, newline="", encoding="utf-8") as fh:
            return list(csv.reader(fh))
    data = source.read()
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    return list(csv.reader(io.StringIO(data, newline="")))


def load_csv(source, levels: Mapping[str, Sequence[str]] | None = None) -> Dataset:
    """Load a comma-separated file with a header row.

    Levels are indexed in order of first appearance unless ``levels`` fixes the
    vocabulary of a column. Rows with an empty cell are dropped and counted.

    Parameters
    ----------
    source : path or file-like
        Text or byte stream, UTF-8.
    levels : mapping, optional
        Explicit level order for some columns. Observed labels missing from
        the mapping raise :class:`CsvParseError`.
    """
    records = _read_records(source)
    if not records:
        raise CsvParseError("empty input, header required", line=1)
    header = [h.strip() for h in records[0]]
    if len(set(header)) != len(header) or any(h == "" for h in header):
        raise CsvParseError(f"header names must be unique and non-empty: {header}", line=1)
    width = len(header)
    levels = dict(levels or {})

    kept: list[list[str]] = []
    dropped = 0
    for lineno, rec in enumerate(records[1:], start=2):
        if not rec:
            continue  # blank line
        if len(rec) != width:
            raise CsvParseError(f"expected {width} fields, got {len(rec)}", line=lineno)
        rec = [c.strip() for c in rec]
        if any(c == "" for c in rec):
            dropped += 1
            continue
        kept.append(rec)
    if not kept:
        raise DatasetError("no complete rows after removing rows with missing cells")

    variables = []
    matrix = np.empty((len(kept), width), dtype=np.int64)
    for j, name in enumerate(header):
        column = [rec[j] for rec in kept]
        if name in levels:
            vocab = list(levels[name])
            lookup = {lab: i for i, lab in enumerate(vocab)}
            for r, lab in enumerate(column):
                if lab not in lookup:
                    raise CsvParseError(f"label {lab!r} not among levels of {name!r}", line=None)
                matrix[r, j] = lookup[lab]
        else:
            lookup = {}
            for r, lab in enumerate(column):
                matrix[r, j] = lookup.setdefault(lab, len(lookup))
            vocab = list(lookup)
            if len(vocab) < 2:
                raise DegenerateVariableError(name, vocab)
        variables.append(Variable(name, tuple(vocab)))
    return Dataset(variables, matrix, dropped_row_count=dropped)


def write_csv(d: Dataset, target) -> None:
    """Write level labels with a header row; inverse of :func:`load_csv`."""
    own = isinstance(target, (str, Path))
    fh: IO[str] = open(target, "w", newline="", encoding="utf-8") if own else target
    try:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(d.names)
        cols = [np.asarray(v.levels, dtype=object)[d.rows[:, j]] for j, v in enumerate(d.variables)]
        writer.writerows(zip(*cols))
    finally:
        if own:
            fh.close()


@dataclass
class RecodeSpec:
    """Level grouping and variable removal.

    ``level_maps[var][original_label] -> grouped_label``. The grouped levels of
    a variable are ordered by ``group_order[var]`` if given, otherwise by first
    appearance while walking the variable's original levels in order.
    """

    level_maps: dict[str, dict[str, str]] = field(default_factory=dict)
    drop_variables: list[str] = field(default_factory=list)
    group_order: dict[str, list[str]] = field(default_factory=dict)

    @classmethod
    def from_dict(cls, obj: Mapping) -> "RecodeSpec":
        unknown = set(obj) - {"recode", "drop", "order"}
        if unknown:
            raise RecodeError(f"unknown recode keys: {sorted(unknown)}")
        return cls(
            level_maps={k: dict(v) for k, v in (obj.get("recode") or {}).items()},
            drop_variables=list(obj.get("drop") or []),
            group_order={k: list(v) for k, v in (obj.get("order") or {}).items()},
        )

    @classmethod
    def load(cls, path) -> "RecodeSpec":
        with open(path, encoding="utf-8") as fh:
            return cls.from_dict(json.load(fh))


def apply_recode(d: Dataset, spec: RecodeSpec) -> Dataset:
    """Group levels and drop variables; untouched columns are copied as-is."""
    for name in list(spec.level_maps) + list(spec.drop_variables):
        if name not in d:
            raise RecodeError(f"recode references unknown variable {name!r}")

    variables = []
    columns = []
    for j, var in enumerate(d.variables):
        if var.name in spec.drop_variables:
            continue
        col = d.rows[:, j]
        mapping = spec.level_maps.get(var.name)
        if mapping is None:
            variables.append(var)
            columns.append(col)
            continue
        extra = set(mapping) - set(var.levels)
        if extra:
            raise RecodeError(f"{var.name}: recode maps unknown levels {sorted(extra)}")
        for lab in var.levels:
            if lab not in mapping:
                raise RecodeError(f"{var.name}: level {lab!r} is not mapped")
        if var.name in spec.group_order:
            grouped = list(spec.group_order[var.name])
            missing = {mapping[lab] for lab in var.levels} - set(grouped)
            if missing:
                raise RecodeError(f"{var.name}: order omits groups {sorted(missing)}")
        else:
            grouped = list(dict.fromkeys(mapping[lab] for lab in var.levels))
        if len(grouped) < 2:
            raise RecodeError(f"{var.name}: grouped arity must be at least 2")
        pos = {g: i for i, g in enumerate(grouped)}
        table = np.array([pos[mapping[lab]] for lab in var.levels], dtype=np.int64)
        variables.append(Variable(var.name, tuple(grouped)))
        columns.append(table[col])
    if not variables:
        raise RecodeError("recode drops every variable")
    rows = np.column_stack(columns)
    return Dataset(variables, rows, d.dropped_row_count)


def bootstrap_indices(n: int, replicate_index: int, master_seed: int) -> np.ndarray:
    rng = np.random.default_rng(np.random.SeedSequence([int(master_seed), int(replicate_index)]))
    return rng.integers(0, n, size=n)


def bootstrap_resample(d: Dataset, replicate_index: int, master_seed: int) -> Dataset:
    """Nonparametric bootstrap sample of ``N`` rows.

    The drawn row indices depend only on ``(master_seed, replicate_index)``,
    so replicates can be produced in any order or in parallel.
    """
    return d.with_rows(d.rows[bootstrap_indices(d.n_rows, replicate_index, master_seed)])


@dataclass(frozen=True)
class ContingencyTable:
    """Joint counts of ``(x, y)`` for each configuration of a conditioning set.

    ``strata`` has shape ``(n_configs, x_arity, y_arity)``; configurations
    with no rows are present as all-zero matrices. Configurations are ordered
    with the first conditioning variable varying slowest.
    """

    x_arity: int
    y_arity: int
    strata: np.ndarray

    @property
    def total_count(self) -> int:
        return int(self.strata.sum())


def counts(d: Dataset, x: str, y: str, z: Sequence[str] = ()) -> ContingencyTable:
    z = list(z)
    if x == y:
        raise ValueError("x and y must differ")
    if x in z or y in z:
        raise ValueError("x and y must not be in the conditioning set")
    rx, ry = d.arity(x), d.arity(y)
    config = np.zeros(d.n_rows, dtype=np.int64)
    n_configs = 1
    for name in z:
        r = d.arity(name)
        config = config * r + d.column(name)
        n_configs *= r
    flat = (config * rx + d.column(x)) * ry + d.column(y)
    table = np.bincount(flat, minlength=n_configs * rx * ry).reshape(n_configs, rx, ry)
    return ContingencyTable(rx, ry, table)
