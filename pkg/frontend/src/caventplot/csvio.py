"""Reader for the sweep CSV contract.

Layout: any number of '# key=value' metadata lines, then the literal header
row 'axis1,axis2,S,born_ratio,tau_coh,skipped_nodes', then one row per grid
point in row-major order (axis1 slowest).  Failed points are NaN rows with
skipped_nodes = -1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["CsvError", "SweepData", "read_sweep_csv", "COLUMNS"]

COLUMNS = ("axis1", "axis2", "S", "born_ratio", "tau_coh", "skipped_nodes")


class CsvError(ValueError):
    """Raised when a file does not follow the sweep CSV contract."""


@dataclass(frozen=True)
class SweepData:
    metadata: dict  # str -> str, verbatim from the '# key=value' block
    data: np.ndarray  # float array of shape (n_rows, 6)

    def column(self, name: str) -> np.ndarray:
        try:
            return self.data[:, COLUMNS.index(name)]
        except ValueError:
            raise CsvError(f"no column {name!r}; columns are {', '.join(COLUMNS)}") from None

    @property
    def axis1_key(self) -> str:
        return self.metadata.get("axis1_key", "axis1")

    @property
    def axis2_key(self) -> str:
        return self.metadata.get("axis2_key", "")

    @property
    def is_grid(self) -> bool:
        """True for a two-axis sweep (full rectangular grid)."""
        return bool(self.axis2_key)

    def grid_shape(self) -> tuple:
        if not self.is_grid:
            return (self.data.shape[0],)
        a1 = self.column("axis1")
        nx = len(np.unique(a1))
        n = self.data.shape[0]
        if nx == 0 or n % nx != 0:
            raise CsvError(f"rows ({n}) do not form a rectangular grid over "
                           f"{nx} distinct axis1 values")
        return (nx, n // nx)

    def grid(self, name: str) -> np.ndarray:
        """Column reshaped to the (nx, ny) grid; row-major as written."""
        return self.column(name).reshape(self.grid_shape())


def read_sweep_csv(path) -> SweepData:
    metadata = {}
    header = None
    rows = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.strip()
            if not line:
                continue
            if line.startswith("#"):
                if header is not None:
                    raise CsvError(f"{path}:{lineno}: metadata after the header row")
                body = line[1:].strip()
                key, sep, value = body.partition("=")
                if not sep:
                    raise CsvError(f"{path}:{lineno}: metadata line without '='")
                metadata[key.strip()] = value.strip()
                continue
            if header is None:
                header = tuple(line.split(","))
                if header != COLUMNS:
                    raise CsvError(f"{path}:{lineno}: header {','.join(header)!r} "
                                   f"does not match {','.join(COLUMNS)!r}")
                continue
            fields = line.split(",")
            if len(fields) != len(COLUMNS):
                raise CsvError(f"{path}:{lineno}: expected {len(COLUMNS)} fields, "
                               f"got {len(fields)}")
            try:
                rows.append([float(f) for f in fields])
            except ValueError as exc:
                raise CsvError(f"{path}:{lineno}: {exc}") from None
    if header is None:
        raise CsvError(f"{path}: no header row found")
    if not rows:
        raise CsvError(f"{path}: no data rows")
    return SweepData(metadata=metadata, data=np.array(rows, dtype=float))
