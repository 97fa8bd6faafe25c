"""SVG pictures of the symbolic squares.

Each matrix entry becomes a small ``g x g`` block.  Cell ``k`` of a block
(row-major) stands for the ``k``-th P coordinate; it is filled with the
colour of the A coordinate it is paired with, or left white if the term
is negated.  Cells beyond ``dim`` are grey padding.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

from .magic import TermPattern

DEFAULT_PALETTE = (
    "#e6194b", "#3cb44b", "#4363d8", "#f58231",
    "#911eb4", "#42d4f4", "#f032e6", "#9a6324",
)
WHITE = "#ffffff"
GREY = "#a0a0a0"


@dataclass(frozen=True)
class RenderSpec:
    dim: int
    grid: int
    palette: tuple[str, ...] = DEFAULT_PALETTE
    cell_px: int = 12
    gap_px: int = 6
    grey: str = GREY
    white: str = WHITE
    stroke: str = "#404040"

    def __post_init__(self):
        if self.grid * self.grid < self.dim:
            raise ValueError(f"a {self.grid}x{self.grid} block cannot hold {self.dim} cells")
        if len(self.palette) < self.dim:
            raise ValueError(f"palette has {len(self.palette)} colours, need {self.dim}")
        if len(set(self.palette[:self.dim]) | {self.white, self.grey}) != self.dim + 2:
            raise ValueError("palette colours must be distinct from each other, white and grey")

    @property
    def grey_cells(self) -> int:
        return self.grid * self.grid - self.dim

    @property
    def block_px(self) -> int:
        return self.grid * self.cell_px


def default_spec(dim: int) -> RenderSpec:
    return RenderSpec(dim=dim, grid=math.isqrt(dim - 1) + 1)


def render_pattern(patterns: Sequence[Sequence[TermPattern]], spec: Optional[RenderSpec] = None,
                   convention: str = "standard") -> str:
    """Return a standalone SVG 1.1 document for a matrix of term patterns."""
    n = len(patterns)
    if spec is None:
        spec = default_spec(n)
    if spec.dim != n or any(len(row) != n or any(len(p) != n for p in row) for row in patterns):
        raise ValueError(f"patterns do not match a {spec.dim}x{spec.dim} spec")
    step = spec.block_px + spec.gap_px
    size = spec.gap_px + n * step
    c = spec.cell_px
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{size}" height="{size}" viewBox="0 0 {size} {size}">',
        f"<!-- dim={n} convention={convention} layout=row-major(p-index) "
        f"grey=last-cells negated=white palette={','.join(spec.palette[:n])} -->",
        f'<rect x="0" y="0" width="{size}" height="{size}" fill="{spec.white}"/>',
    ]
    for i, row in enumerate(patterns):
        for j, pat in enumerate(row):
            x0 = spec.gap_px + j * step
            y0 = spec.gap_px + i * step
            out.append(f'<g class="subsquare" data-row="{i}" data-col="{j}">')
            for k in range(spec.grid * spec.grid):
                x = x0 + (k % spec.grid) * c
                y = y0 + (k // spec.grid) * c
                if k < n:
                    a, sign = pat.terms[k]
                    kind = "pos" if sign > 0 else "neg"
                    fill = spec.palette[a] if sign > 0 else spec.white
                    extra = f' data-a="{a}" data-p="{k}"'
                else:
                    kind, fill, extra = "grey", spec.grey, ""
                out.append(f'<rect class="cell {kind}" x="{x}" y="{y}" width="{c}" height="{c}" '
                           f'fill="{fill}" stroke="{spec.stroke}" stroke-width="0.5"{extra}/>')
            out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def write_svg(path, text: str) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
