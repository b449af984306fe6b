"""
SVG figure of a cover set over the level-n squares of C x C: cells filled by
classification, the region boundary on top, then the root outline and a legend.
Output is a pure function of (region, level), so goldens stay byte-stable.
"""
import logging
from pathlib import Path
from typing import List, Tuple, Union

from modules import boundary
from modules.cantor_grid import _check_level, iter_classified_squares
from modules.config import Config
from modules.constructions import CoverSpec
from modules.exact_geometry import Classification, GridSquare

logger = logging.getLogger(__name__)

CANVAS = 600
MARGIN = 20
LEGEND_HEIGHT = 40

# Same palette as the report view.
COLORS = {
    Classification.INSIDE: "#10b981",
    Classification.STRADDLES: "#f59e0b",
    Classification.OUTSIDE: "#e11d48",
}
BOUNDARY_COLOR = "#00816D"
ROOT_COLOR = "#334155"
STROKE_WIDTH = 1.5
LEGEND_LABELS = (
    (Classification.INSIDE, "inside"),
    (Classification.STRADDLES, "straddles"),
    (Classification.OUTSIDE, "outside"),
)


def _fmt(value: float) -> str:
    return f"{value:.3f}"


class _Frame:
    """Maps root-square coordinates to canvas pixels, y pointing up."""

    def __init__(self, root: GridSquare):
        self.x0, self.y0 = float(root.x0), float(root.y0)
        self.scale = CANVAS / float(root.side)

    def point(self, x, y) -> Tuple[float, float]:
        px = MARGIN + (float(x) - self.x0) * self.scale
        py = MARGIN + CANVAS - (float(y) - self.y0) * self.scale
        return px, py

    def polyline(self, points, css_class: str) -> str:
        coords = " ".join(f"{_fmt(px)},{_fmt(py)}" for px, py in (self.point(x, y) for x, y in points))
        return (
            f'<polyline class="{css_class}" points="{coords}" fill="none" '
            f'stroke="{BOUNDARY_COLOR}" stroke-width="{STROKE_WIDTH}"/>'
        )


def _cells(frame: _Frame, root: GridSquare, spec: CoverSpec, level: int) -> List[str]:
    lines = []
    for sq, verdict in iter_classified_squares(root, spec.region, level):
        px, py = frame.point(sq.x0, sq.y1)
        size = float(sq.side) * frame.scale
        lines.append(
            f'<rect class="cell {verdict.value}" x="{_fmt(px)}" y="{_fmt(py)}" '
            f'width="{_fmt(size)}" height="{_fmt(size)}" fill="{COLORS[verdict]}"/>'
        )
    return lines


def _boundary(frame: _Frame, spec: CoverSpec) -> List[str]:
    lines = []
    for piece in boundary.boundary_pieces(spec.region):
        if isinstance(piece, boundary.ArcPiece):
            start, end = piece.theta_start, piece.theta_end
            points = [
                piece.point_at(start + (end - start) * j / Config.ARC_CHORDS)
                for j in range(Config.ARC_CHORDS + 1)
            ]
            lines.append(frame.polyline(points, "arc"))
        else:
            points = [piece.point_at(piece.t_start), piece.point_at(piece.t_end)]
            lines.append(frame.polyline(points, "edge"))
    return lines


def _legend() -> List[str]:
    lines = []
    y = MARGIN + CANVAS + 14
    for position, (verdict, label) in enumerate(LEGEND_LABELS):
        x = MARGIN + position * 140
        lines.append(f'<rect class="legend" x="{x}" y="{y}" width="14" height="14" fill="{COLORS[verdict]}"/>')
        lines.append(
            f'<text x="{x + 20}" y="{y + 12}" font-family="Manrope, sans-serif" font-size="13">{label}</text>'
        )
    return lines


def render_svg(spec: CoverSpec, level: int) -> str:
    _check_level(level, Config.RENDER_MAX_LEVEL)
    root = spec.root
    frame = _Frame(root)
    width = CANVAS + 2 * MARGIN
    height = CANVAS + 2 * MARGIN + LEGEND_HEIGHT

    ox, oy = frame.point(root.x0, root.y1)
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f"<title>{spec.name} at level {level}</title>",
        '<rect class="background" x="0" y="0" width="100%" height="100%" fill="#ffffff"/>',
        '<g id="cells">',
        *_cells(frame, root, spec, level),
        "</g>",
        '<g id="boundary">',
        *_boundary(frame, spec),
        "</g>",
        f'<rect class="root" x="{_fmt(ox)}" y="{_fmt(oy)}" width="{CANVAS}" height="{CANVAS}" '
        f'fill="none" stroke="{ROOT_COLOR}" stroke-width="1"/>',
        '<g id="legend">',
        *_legend(),
        "</g>",
        "</svg>",
    ]
    logger.debug("Rendered %s at level %d", spec.name, level)
    return "\n".join(lines) + "\n"


def write_svg(spec: CoverSpec, level: int, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.write_text(render_svg(spec, level), encoding="utf-8")
    return path
