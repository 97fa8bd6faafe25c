import xml.etree.ElementTree as ET

import pytest

from octomagic.magic import build_symbolic
from octomagic.render import DEFAULT_PALETTE, GREY, WHITE, RenderSpec, default_spec, render_pattern

SVG = "{http://www.w3.org/2000/svg}"


def blocks(svg_text):
    root = ET.fromstring(svg_text)
    return [g for g in root.iter(f"{SVG}g") if g.get("class") == "subsquare"]


def visual_pattern(g):
    return tuple(r.get("fill") for r in g.iter(f"{SVG}rect"))


@pytest.mark.parametrize("dim,grid", [(4, 2), (8, 3)])
def test_structure(dim, grid):
    svg = render_pattern(build_symbolic(dim))
    gs = blocks(svg)
    assert len(gs) == dim * dim
    for g in gs:
        cells = list(g.iter(f"{SVG}rect"))
        assert len(cells) == grid * grid
        kinds = [c.get("class").split()[1] for c in cells]
        assert kinds.count("grey") == grid * grid - dim
        assert kinds.count("pos") + kinds.count("neg") == dim
        assert all(k == "grey" for k in kinds[dim:])
    assert len({visual_pattern(g) for g in gs}) == dim * dim


def test_cells_follow_patterns():
    pats = build_symbolic(8)
    gs = blocks(render_pattern(pats))
    for g in gs:
        pat = pats[int(g.get("data-row"))][int(g.get("data-col"))]
        cells = list(g.iter(f"{SVG}rect"))
        for k, (a, sign) in enumerate(pat.terms):
            assert cells[k].get("fill") == (DEFAULT_PALETTE[a] if sign > 0 else WHITE)
            assert int(cells[k].get("data-p")) == k
        assert cells[8].get("fill") == GREY


def test_deterministic_and_metadata():
    first = render_pattern(build_symbolic(8))
    assert first == render_pattern(build_symbolic(8))
    assert "<!-- dim=8 convention=standard layout=row-major(p-index)" in first
    assert first.startswith('<?xml version="1.0" encoding="UTF-8"?>')


def test_spec_mismatch():
    with pytest.raises(ValueError):
        render_pattern(build_symbolic(4), default_spec(8))
    with pytest.raises(ValueError):
        RenderSpec(dim=8, grid=2)
    with pytest.raises(ValueError):
        RenderSpec(dim=4, grid=2, palette=("#000000",) * 4)
