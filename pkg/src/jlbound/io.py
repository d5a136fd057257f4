"""CSV matrices: comma separated, no header unless asked, 17 significant digits."""

from __future__ import annotations

import io
from pathlib import Path

import numpy as np
from numpy.typing import NDArray

from .errors import DomainError

__all__ = ["read_csv_matrix", "write_csv_matrix", "format_csv_matrix"]


def read_csv_matrix(path: str | Path, header: bool = False) -> NDArray[np.float64]:
    """Read one point per row. Raises OSError on I/O failure, DomainError on bad content."""
    text = Path(path).read_text(encoding="ascii")
    try:
        X = np.loadtxt(io.StringIO(text), delimiter=",", skiprows=1 if header else 0, ndmin=2)
    except ValueError as exc:
        raise DomainError(f"could not parse {path} as a numeric CSV matrix: {exc}") from exc
    if X.size == 0:
        raise DomainError(f"{path} contains no data")
    if not np.all(np.isfinite(X)):
        raise DomainError(f"{path} contains non-finite entries")
    return X


def format_csv_matrix(X: NDArray[np.float64], header: bool = False) -> str:
    X = np.asarray(X, dtype=float)
    lines = []
    if header:
        lines.append(",".join(f"y{j + 1}" for j in range(X.shape[1])))
    lines.extend(",".join(format(v, ".17g") for v in row) for row in X)
    return "\n".join(lines) + "\n"


def write_csv_matrix(path: str | Path, X: NDArray[np.float64], header: bool = False) -> None:
    Path(path).write_text(format_csv_matrix(X, header), encoding="ascii")
