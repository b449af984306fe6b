import pytest

from modules.errors import InvalidInputError, LevelCapError
from modules.svg_render import render_svg, write_svg


def test_cell_count_matches_level(specs):
    svg = render_svg(specs["circle-big"], 6)
    assert svg.count('<rect class="cell ') == 4 ** 5
    assert svg.startswith('<?xml version="1.0"')
    assert svg.rstrip().endswith("</svg>")


def test_cells_follow_the_count(specs):
    svg = render_svg(specs["octagon-fixed"], 4)
    assert svg.count('class="cell inside"') == 60
    assert svg.count('class="cell straddles"') == 4
    assert svg.count('class="cell outside"') == 0


def test_boundary_pieces_are_drawn(specs):
    svg = render_svg(specs["circle-big"], 3)
    # a disk wider than the square meets each side once and rounds off each corner
    assert svg.count('class="arc"') == 4
    assert svg.count('class="edge"') == 4


def test_correction_region_has_four_arcs(specs):
    assert render_svg(specs["correction-region"], 5).count('class="arc"') == 4


def test_octagon_has_only_edges(specs):
    svg = render_svg(specs["octagon-fixed"], 2)
    assert 'class="arc"' not in svg
    assert svg.count('class="edge"') == 8


def test_render_is_deterministic(specs, tmp_path):
    first = write_svg(specs["correction-region"], 5, tmp_path / "a.svg")
    second = write_svg(specs["correction-region"], 5, tmp_path / "b.svg")
    assert first.read_bytes() == second.read_bytes()


def test_legend_and_root_outline(specs):
    svg = render_svg(specs["circle-series"], 2)
    assert svg.count('class="legend"') == 3
    assert svg.count('class="root"') == 1
    assert "<title>circle-series at level 2</title>" in svg


def test_render_levels_are_capped(specs):
    with pytest.raises(LevelCapError):
        render_svg(specs["circle-big"], 10)
    with pytest.raises(InvalidInputError):
        render_svg(specs["circle-big"], 0)
