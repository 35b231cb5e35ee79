"""Utility datasets: per-user opponent utility vectors, optionally with demographics.

Rows are users; columns are demographic features (always first) followed by
one utility column per tree leaf in canonical leaf order. CSV headers prefix
demographic columns with ``demo:`` and utility columns with ``leaf:``; an
optional trailing ``cluster`` column carries ground-truth subpopulation ids,
which generators retain for diagnostics but predictors never see.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

DEMO_PREFIX = "demo:"
LEAF_PREFIX = "leaf:"
CLUSTER_COLUMN = "cluster"


class DatasetError(ValueError):
    """Raised for malformed dataset files or shape mismatches."""


@dataclass
class UtilityDataset:
    """Matrix of user utility vectors with named columns."""

    demo_columns: tuple[str, ...]
    leaf_columns: tuple[str, ...]
    rows: np.ndarray
    cluster_labels: np.ndarray | None = None

    def __post_init__(self) -> None:
        self.rows = np.asarray(self.rows, dtype=float)
        if self.rows.ndim != 2:
            raise DatasetError("rows must be a 2-d matrix")
        expected = len(self.demo_columns) + len(self.leaf_columns)
        if self.rows.shape[1] != expected:
            raise DatasetError(
                f"row width {self.rows.shape[1]} != {expected} named columns")
        if self.cluster_labels is not None:
            self.cluster_labels = np.asarray(self.cluster_labels)
            if self.cluster_labels.shape != (self.rows.shape[0],):
                raise DatasetError("cluster_labels length must match row count")

    @property
    def n_rows(self) -> int:
        return self.rows.shape[0]

    @property
    def n_demo(self) -> int:
        return len(self.demo_columns)

    @property
    def n_leaves(self) -> int:
        return len(self.leaf_columns)

    @property
    def columns(self) -> tuple[str, ...]:
        return self.demo_columns + self.leaf_columns

    @property
    def demo_matrix(self) -> np.ndarray:
        return self.rows[:, : self.n_demo]

    @property
    def leaf_matrix(self) -> np.ndarray:
        return self.rows[:, self.n_demo:]

    def subset(self, indices: Sequence[int] | np.ndarray) -> "UtilityDataset":
        labels = None if self.cluster_labels is None else self.cluster_labels[indices]
        return UtilityDataset(self.demo_columns, self.leaf_columns,
                              self.rows[indices], labels)

    def row_answers(self, row: int, columns: Sequence[str]) -> dict[str, float]:
        """Answers a user would give for the named columns, read off their row."""
        lookup = {name: i for i, name in enumerate(self.columns)}
        return {c: float(self.rows[row, lookup[c]]) for c in columns}


def write_dataset_csv(path: str | Path, dataset: UtilityDataset) -> None:
    header = ([DEMO_PREFIX + c for c in dataset.demo_columns]
              + [LEAF_PREFIX + c for c in dataset.leaf_columns])
    with_labels = dataset.cluster_labels is not None
    if with_labels:
        header.append(CLUSTER_COLUMN)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for i in range(dataset.n_rows):
            row = [repr(float(v)) for v in dataset.rows[i]]
            if with_labels:
                row.append(str(dataset.cluster_labels[i]))
            writer.writerow(row)


def read_dataset_csv(path: str | Path) -> UtilityDataset:
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise DatasetError(f"{path}: empty dataset file") from None
        demo_cols, leaf_cols = [], []
        has_labels = False
        for name in header:
            if name.startswith(DEMO_PREFIX):
                demo_cols.append(name[len(DEMO_PREFIX):])
            elif name.startswith(LEAF_PREFIX):
                leaf_cols.append(name[len(LEAF_PREFIX):])
            elif name == CLUSTER_COLUMN:
                has_labels = True
            else:
                raise DatasetError(f"{path}: unrecognized column {name!r}")
        values, labels = [], []
        width = len(demo_cols) + len(leaf_cols)
        for line in reader:
            if not line:
                continue
            values.append([float(v) for v in line[:width]])
            if has_labels:
                labels.append(line[width])
        label_arr = None
        if has_labels:
            try:
                label_arr = np.array([int(v) for v in labels])
            except ValueError:
                label_arr = np.array(labels)
        return UtilityDataset(tuple(demo_cols), tuple(leaf_cols),
                              np.array(values, dtype=float), label_arr)
