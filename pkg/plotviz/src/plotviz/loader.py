"""Parse scan CSV artifacts into rectangular (alpha, J) surfaces.

The input contract is the scan command's CSV: header
``alpha,J,C0,Cfb,lambda_opt,delta`` (with an optional trailing ``error``
column), one row per grid point, J varying fastest.  Failed points carry an
error message and become NaN gaps in the pivoted grids; they are never
interpolated.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

EXPECTED_HEADER = ["alpha", "J", "C0", "Cfb", "lambda_opt", "delta"]
GRID_NAMES = ("C0", "Cfb", "delta")


class ScanFormatError(ValueError):
    """The file does not match the scan CSV contract."""


@dataclass(frozen=True)
class SurfaceData:
    """Pivoted scan data: sorted axes and one 2-D grid per quantity.

    Grids are indexed ``[alpha_index, J_index]``; gaps from error rows are NaN.
    """

    alphas: np.ndarray
    Js: np.ndarray
    C0: np.ndarray
    Cfb: np.ndarray
    delta: np.ndarray

    def grid(self, which: str) -> np.ndarray:
        if which not in GRID_NAMES:
            raise ScanFormatError(f"unknown surface {which!r}; expected one of {GRID_NAMES}")
        return getattr(self, which)


def _parse_rows(path: Path) -> tuple[list[dict], bool]:
    with open(path, newline="", encoding="utf-8") as handle:
        reader = csv.reader(handle)
        try:
            header = next(reader)
        except StopIteration:
            raise ScanFormatError(f"{path}: file is empty") from None
        if header == EXPECTED_HEADER:
            has_error_column = False
        elif header == EXPECTED_HEADER + ["error"]:
            has_error_column = True
        else:
            raise ScanFormatError(
                f"{path}: header {','.join(header)!r} does not match the scan contract "
                f"{','.join(EXPECTED_HEADER)!r} (optionally + ',error')"
            )
        rows = []
        for lineno, cells in enumerate(reader, start=2):
            if not cells:
                continue
            if len(cells) != len(header):
                raise ScanFormatError(f"{path}:{lineno}: expected {len(header)} fields, got {len(cells)}")
            try:
                record = {
                    "alpha": float(cells[0]),
                    "J": float(cells[1]),
                    "C0": float(cells[2]),
                    "Cfb": float(cells[3]),
                    "delta": float(cells[5]),
                    "raw": cells,
                }
            except ValueError as exc:
                raise ScanFormatError(f"{path}:{lineno}: {exc}") from None
            record["error"] = cells[6] if has_error_column else ""
            rows.append(record)
    if not rows:
        raise ScanFormatError(f"{path}: no data rows")
    return rows, has_error_column


def load_scan(path: str | Path) -> SurfaceData:
    """Load and pivot a scan CSV; raises :class:`ScanFormatError` on violations."""
    path = Path(path)
    rows, _ = _parse_rows(path)

    alphas = np.array(sorted({r["alpha"] for r in rows}))
    Js = np.array(sorted({r["J"] for r in rows}))
    if len(rows) != len(alphas) * len(Js):
        raise ScanFormatError(
            f"{path}: {len(rows)} rows cannot fill a rectangular "
            f"{len(alphas)}x{len(Js)} grid"
        )

    alpha_index = {a: i for i, a in enumerate(alphas)}
    j_index = {j: i for i, j in enumerate(Js)}
    grids = {name: np.full((len(alphas), len(Js)), np.nan) for name in GRID_NAMES}
    seen = set()
    for r in rows:
        key = (alpha_index[r["alpha"]], j_index[r["J"]])
        if key in seen:
            raise ScanFormatError(f"{path}: duplicate grid point alpha={r['alpha']}, J={r['J']}")
        seen.add(key)
        if r["error"]:
            continue  # gap stays NaN
        for name in GRID_NAMES:
            if not math.isnan(r[name]):
                grids[name][key] = r[name]
    return SurfaceData(alphas=alphas, Js=Js, **grids)
