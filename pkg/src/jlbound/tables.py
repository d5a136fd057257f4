"""Grid sweeps of the bound methods and their text renderings."""

from __future__ import annotations

import csv
import io
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import product
from typing import Literal

from .bounds import BoundQuery, Method, compute_bound
from .errors import DomainError

__all__ = ["TableRequest", "build_table", "render", "TABLE2_TYPO_NOTE", "PRESET_GRID"]

PRESET_GRID = ((50, 100, 500, 1000), (0.1, 0.3), (1.0, 2.0))

TABLE2_TYPO_NOTE = (
    "note: the published Table 2 labels the fourth row of every n-block "
    "'eps=.1, beta=2' a second time; its values match eps=.3, beta=2, which is "
    "what is computed here (see the published_label column)."
)

_COLUMNS = {
    "table1": (Method.EXACT, Method.THEOREM1, Method.DG),
    "table2": (Method.MATOUSEK, Method.THEOREM3),
    "custom": (Method.EXACT, Method.THEOREM1, Method.DG, Method.MATOUSEK, Method.THEOREM3),
}


@dataclass
class TableRequest:
    which: Literal["table1", "table2", "custom"] = "table1"
    n_values: list[int] = field(default_factory=list)
    epsilon_values: list[float] = field(default_factory=list)
    beta_values: list[float] = field(default_factory=list)

    def __post_init__(self) -> None:
        if self.which not in _COLUMNS:
            raise DomainError(f"unknown table {self.which!r}")
        if self.which != "custom":
            ns, eps, betas = PRESET_GRID
            self.n_values, self.epsilon_values, self.beta_values = list(ns), list(eps), list(betas)
        elif not (self.n_values and self.epsilon_values and self.beta_values):
            raise DomainError("custom tables need at least one n, epsilon and beta")

    def cells(self) -> list[BoundQuery]:
        # published row order: by n, then (eps=.1,b=1), (.3,1), (.1,2), (.3,2)
        return [
            BoundQuery(n, e, b)
            for n, b, e in product(self.n_values, self.beta_values, self.epsilon_values)
        ]


def _published_label(q: BoundQuery) -> str:
    eps = 0.1 if q.beta == 2.0 else q.epsilon
    return f"eps={format(eps, 'g').lstrip('0')}, beta={format(q.beta, 'g')}"


def _reduction(better: int, baseline: int) -> float:
    return round(100.0 * (1.0 - better / baseline), 2)


def build_table(req: TableRequest, jobs: int = 1) -> tuple[list[str], list[dict]]:
    """Column names and one row dict per grid cell."""
    methods = _COLUMNS[req.which]
    cells = req.cells()  # validates every cell before any work starts

    def row(q: BoundQuery) -> dict:
        out: dict = {"n": q.n, "epsilon": q.epsilon, "beta": q.beta}
        if req.which == "table2":
            out["published_label"] = _published_label(q)
        for m in methods:
            out[m.value] = compute_bound(m, q).k
        if Method.DG in methods:
            out["reduction_theorem1_vs_dg_pct"] = _reduction(out["theorem1"], out["dg"])
        if Method.MATOUSEK in methods:
            out["reduction_theorem3_vs_matousek_pct"] = _reduction(out["theorem3"], out["matousek"])
        return out

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(row, cells))
    else:
        rows = [row(q) for q in cells]
    return list(rows[0].keys()), rows


def _cell(v) -> str:
    return format(v, "g") if isinstance(v, float) else str(v)


def render(columns: list[str], rows: list[dict], fmt: str, name: str = "") -> str:
    if fmt == "json":
        return json.dumps(
            {"schema_version": 1, "table": name, "columns": columns, "rows": rows},
            indent=2,
            sort_keys=False,
        ) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(columns)
        for r in rows:
            w.writerow([_cell(r[c]) for c in columns])
        return buf.getvalue()
    if fmt == "md":
        lines = ["| " + " | ".join(columns) + " |", "|" + "---|" * len(columns)]
        lines += ["| " + " | ".join(_cell(r[c]) for c in columns) + " |" for r in rows]
        return "\n".join(lines) + "\n"
    raise DomainError(f"unknown format {fmt!r}")
