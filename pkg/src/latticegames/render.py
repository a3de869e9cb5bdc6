"""Deterministic renderings of outcome grids.

Text uses '#' for P, '.' for N and 'x' for defeated cells, with y increasing
upward.  PBM (P1) and SVG carry the same raster, P cells black.  An optional
highlight stride m restricts the picture to the sublattice of positions whose
coordinates are both multiples of m.
"""

from __future__ import annotations

import numpy as np

from .engine import CODE_DEFEATED, CODE_N, CODE_P, OutcomeGrid

TEXT_SYMBOLS = {CODE_P: "#", CODE_N: ".", CODE_DEFEATED: "x"}

FORMATS = ("text", "pbm", "svg")


def render_grid(
    grid: OutcomeGrid,
    slice_index: int | None = None,
    fmt: str = "text",
    highlight_stride: int | None = None,
) -> bytes:
    if fmt not in FORMATS:
        raise ValueError(f"unsupported format {fmt!r}; choose from {FORMATS}")
    plane = grid.plane(slice_index)
    if highlight_stride is not None:
        if highlight_stride < 1:
            raise ValueError("highlight stride must be >= 1")
        plane = plane[::highlight_stride, ::highlight_stride]
    if fmt == "text":
        return _render_text(plane)
    if fmt == "pbm":
        return _render_pbm(plane)
    return _render_svg(plane)


def _rows_top_down(plane: np.ndarray):
    nx, ny = plane.shape
    for y in range(ny - 1, -1, -1):
        yield [int(plane[x, y]) for x in range(nx)]


def _render_text(plane: np.ndarray) -> bytes:
    lines = ["".join(TEXT_SYMBOLS[c] for c in row) for row in _rows_top_down(plane)]
    return ("\n".join(lines) + "\n").encode("ascii")


def _render_pbm(plane: np.ndarray) -> bytes:
    nx, ny = plane.shape
    lines = [f"P1", f"{nx} {ny}"]
    for row in _rows_top_down(plane):
        lines.append(" ".join("1" if c == CODE_P else "0" for c in row))
    return ("\n".join(lines) + "\n").encode("ascii")


def _render_svg(plane: np.ndarray, cell: int = 8) -> bytes:
    nx, ny = plane.shape
    w, h = nx * cell, ny * cell
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" '
        f'viewBox="0 0 {w} {h}">',
        f'<rect width="{w}" height="{h}" fill="white"/>',
    ]
    for y in range(ny - 1, -1, -1):
        for x in range(nx):
            code = int(plane[x, y])
            if code == CODE_N:
                continue
            fill = "black" if code == CODE_P else "silver"
            px = x * cell
            py = (ny - 1 - y) * cell
            parts.append(
                f'<rect x="{px}" y="{py}" width="{cell}" height="{cell}" fill="{fill}"/>'
            )
    parts.append("</svg>")
    return ("\n".join(parts) + "\n").encode("ascii")
