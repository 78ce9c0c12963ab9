"""Loading, validation, normalization and export of multivariate time series.

Supported on-disk formats:

* plain CSV: comma separated, optional single header row, decimal point,
  LF or CRLF line endings;
* DREAM4-style tables: tab or comma separated, first column header contains
  "Time" (case insensitive), replicate boundaries marked by the time value
  resetting (next time <= previous time).
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DegenerateError,
    EmptyError,
    FormatError,
    IoError,
    UnknownColumnError,
)


@dataclass(frozen=True)
class TimeSeries:
    """Labeled T x n matrix of observations at uniform sampling.

    ``segments`` lists half-open ``(start, end)`` row ranges marking
    independent replicate trajectories; they are disjoint, ordered and cover
    all rows. Values are finite and read-only after construction, so
    instances are safe to share across workers.
    """

    names: tuple[str, ...]
    values: np.ndarray
    segments: tuple[tuple[int, int], ...] = field(default=None)  # type: ignore[assignment]

    def __post_init__(self):
        values = np.asarray(self.values, dtype=np.float64)
        if values.ndim != 2:
            raise FormatError("values must be a 2-D matrix")
        object.__setattr__(self, "names", tuple(str(n) for n in self.names))
        if len(self.names) != values.shape[1]:
            raise FormatError(
                f"{len(self.names)} names for {values.shape[1]} columns"
            )
        if len(set(self.names)) != len(self.names):
            raise FormatError("variable names must be unique")
        if any(not n for n in self.names):
            raise FormatError("variable names must be non-empty")
        if not np.isfinite(values).all():
            bad = np.argwhere(~np.isfinite(values))[0]
            raise FormatError(
                f"non-finite value at row {bad[0] + 1}, column {bad[1] + 1}",
                row=int(bad[0] + 1),
                column=int(bad[1] + 1),
            )
        segments = self.segments
        if segments is None:
            segments = ((0, values.shape[0]),)
        segments = tuple((int(a), int(b)) for a, b in segments)
        cursor = 0
        for start, end in segments:
            if start != cursor or end <= start:
                raise FormatError(f"segment ({start}, {end}) breaks coverage")
            cursor = end
        if cursor != values.shape[0]:
            raise FormatError("segments do not cover all rows")
        values = values.copy()
        values.setflags(write=False)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "segments", segments)

    @property
    def n_rows(self) -> int:
        return self.values.shape[0]

    @property
    def n_columns(self) -> int:
        return self.values.shape[1]

    def column_index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise UnknownColumnError(
                f"unknown column {name!r}; available: {', '.join(self.names)}"
            ) from None

    def column(self, name: str) -> np.ndarray:
        """Return one variable as a 1-D array (read-only view)."""
        return self.values[:, self.column_index(name)]


def _read_rows(path) -> list[list[str]]:
    try:
        with open(path, "r", newline="") as fh:
            return [row for row in csv.reader(fh) if row and any(c.strip() for c in row)]
    except OSError as exc:
        raise IoError(f"cannot read {path}: {exc}") from exc


def _parse_cell(cell: str, row: int, column: int) -> float:
    try:
        return float(cell)
    except ValueError:
        raise FormatError(
            f"non-numeric cell {cell!r} at row {row}, column {column}",
            row=row,
            column=column,
        ) from None


def load_csv(path, has_header: bool = True) -> TimeSeries:
    """Load a plain CSV file into a single-segment :class:`TimeSeries`.

    Column labels come from the header row when ``has_header`` is true,
    otherwise they are auto-generated as ``v1..vn``.
    """
    rows = _read_rows(path)
    if not rows:
        raise EmptyError(f"{path} has no rows")
    if has_header:
        names = [c.strip() for c in rows[0]]
        data_rows = rows[1:]
        first_data_row = 2
    else:
        names = [f"v{i + 1}" for i in range(len(rows[0]))]
        data_rows = rows
        first_data_row = 1
    if not data_rows:
        raise EmptyError(f"{path} has no data rows")
    width = len(names)
    values = np.empty((len(data_rows), width))
    for i, row in enumerate(data_rows):
        if len(row) != width:
            raise FormatError(
                f"row {first_data_row + i} has {len(row)} cells, expected {width}",
                row=first_data_row + i,
            )
        for j, cell in enumerate(row):
            values[i, j] = _parse_cell(cell.strip(), first_data_row + i, j + 1)
    return TimeSeries(names=tuple(names), values=values, segments=None)


def load_dream4(path) -> TimeSeries:
    """Load a DREAM4-format table, splitting replicates on time resets.

    The first column must be the time axis (header contains "Time",
    case-insensitive); it is dropped from the returned series. A new segment
    starts wherever the time value fails to increase.
    """
    try:
        with open(path, "r", newline="") as fh:
            text = fh.read()
    except OSError as exc:
        raise IoError(f"cannot read {path}: {exc}") from exc
    lines = text.splitlines()
    delimiter = "\t" if lines and "\t" in lines[0] else ","
    rows = [
        row
        for row in csv.reader(lines, delimiter=delimiter)
        if row and any(c.strip() for c in row)
    ]
    if not rows:
        raise EmptyError(f"{path} has no rows")
    header = [c.strip() for c in rows[0]]
    if not header or "time" not in header[0].lower():
        raise FormatError(
            f"first column header must contain 'Time', got {header[0]!r}"
            if header
            else "missing header row"
        )
    names = header[1:]
    data_rows = rows[1:]
    if not data_rows:
        raise EmptyError(f"{path} has no data rows")
    width = len(header)
    times = np.empty(len(data_rows))
    values = np.empty((len(data_rows), width - 1))
    for i, row in enumerate(data_rows):
        if len(row) != width:
            raise FormatError(
                f"row {i + 2} has {len(row)} cells, expected {width}", row=i + 2
            )
        times[i] = _parse_cell(row[0].strip(), i + 2, 1)
        for j, cell in enumerate(row[1:]):
            values[i, j] = _parse_cell(cell.strip(), i + 2, j + 2)
    boundaries = [0]
    for i in range(1, len(times)):
        if times[i] <= times[i - 1]:
            boundaries.append(i)
    boundaries.append(len(times))
    segments = tuple(
        (boundaries[k], boundaries[k + 1]) for k in range(len(boundaries) - 1)
    )
    return TimeSeries(names=tuple(names), values=values, segments=segments)


def zscore(series: TimeSeries) -> TimeSeries:
    """Standardize every column to mean 0, standard deviation 1.

    Statistics are computed jointly over all segments; segment boundaries
    are preserved. Raises :class:`DegenerateError` for a constant column.
    """
    values = series.values
    mean = values.mean(axis=0)
    sd = values.std(axis=0)
    for j, s in enumerate(sd):
        if s < 1e-15:
            raise DegenerateError(
                f"column {series.names[j]!r} is constant; cannot z-score"
            )
    return TimeSeries(
        names=series.names,
        values=(values - mean) / sd,
        segments=series.segments,
    )


def export_csv(series: TimeSeries, path) -> None:
    """Write the values with a header row at 17 significant digits.

    Segment boundaries are not representable in plain CSV and are dropped;
    numeric content round-trips through :func:`load_csv` exactly.
    """
    try:
        with open(path, "w", newline="\n") as fh:
            fh.write(",".join(series.names) + "\n")
            for row in series.values:
                fh.write(",".join(format(v, ".17g") for v in row) + "\n")
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc}") from exc
