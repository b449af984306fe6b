"""
Boundary pieces of a Region: each half-plane contributes the segment of its
edge line that survives the other primitives, each disk the arcs of its circle
that do. Points handed out here always pass an exact rational membership test
against the other primitives.
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple, Union

from mpmath import mp

from modules.config import Config
from modules.errors import DegenerateRegionError
from modules.exact_geometry import Disk, HalfPlane, Point, Region
from modules.precision import mpf_to_fraction, to_mpf

# Inward nudge for segment ends found through square roots.
_NUDGE = mp.mpf(2) ** -(Config.PRECISION_BITS // 2)
_BISECTION_STEPS = 90


@dataclass(frozen=True)
class EdgePiece:
    index: int
    origin: Tuple[Fraction, Fraction]
    direction: Tuple[Fraction, Fraction]
    t_start: object
    t_end: object
    exact_ends: Optional[Tuple[Point, Point]] = None

    def point_at(self, t):
        return (
            to_mpf(self.origin[0]) + t * to_mpf(self.direction[0]),
            to_mpf(self.origin[1]) + t * to_mpf(self.direction[1]),
        )


@dataclass(frozen=True)
class ArcPiece:
    index: int
    center: Tuple[object, object]
    radius: object
    theta_start: object
    theta_end: object

    def point_at(self, theta):
        return (
            self.center[0] + self.radius * mp.cos(theta),
            self.center[1] + self.radius * mp.sin(theta),
        )


Piece = Union[EdgePiece, ArcPiece]


def others_contain(region: Region, index: int, x, y) -> bool:
    """Exact test of (x, y) against every primitive except `index`."""
    point = Point(mpf_to_fraction(x), mpf_to_fraction(y))
    return all(
        prim.contains(point)
        for j, prim in enumerate(region.primitives)
        if j != index
    )


def _edge_piece(region: Region, index: int) -> Optional[EdgePiece]:
    edge = region.primitives[index]
    norm2 = edge.a * edge.a + edge.b * edge.b
    origin = (edge.a * edge.c / norm2, edge.b * edge.c / norm2)
    direction = (-edge.b, edge.a)

    t_lo = t_hi = None
    for j, other in enumerate(region.primitives):
        if j == index or not isinstance(other, HalfPlane):
            continue
        coef = other.a * direction[0] + other.b * direction[1]
        rhs = other.c - other.a * origin[0] - other.b * origin[1]
        if coef == 0:
            if rhs < 0:
                return None
            continue
        bound = rhs / coef
        if coef > 0:
            t_hi = bound if t_hi is None else min(t_hi, bound)
        else:
            t_lo = bound if t_lo is None else max(t_lo, bound)

    exact = True
    lo = None if t_lo is None else to_mpf(t_lo)
    hi = None if t_hi is None else to_mpf(t_hi)
    for j, other in enumerate(region.primitives):
        if j == index or not isinstance(other, Disk):
            continue
        ox, oy = origin[0] - other.center.x, origin[1] - other.center.y
        qa = direction[0] ** 2 + direction[1] ** 2
        qb = 2 * (ox * direction[0] + oy * direction[1])
        qc = ox * ox + oy * oy - other.r2
        disc = qb * qb - 4 * qa * qc
        if disc <= 0:
            return None
        root = mp.sqrt(to_mpf(disc))
        t1 = (-to_mpf(qb) - root) / to_mpf(2 * qa)
        t2 = (-to_mpf(qb) + root) / to_mpf(2 * qa)
        t1 += _NUDGE * (1 + abs(t1))
        t2 -= _NUDGE * (1 + abs(t2))
        lo = t1 if lo is None else max(lo, t1)
        hi = t2 if hi is None else min(hi, t2)
        exact = False

    if lo is None or hi is None:
        raise DegenerateRegionError("region is unbounded along one of its edges")
    if lo >= hi:
        return None
    exact_ends = None
    if exact:
        exact_ends = tuple(
            Point(origin[0] + t * direction[0], origin[1] + t * direction[1])
            for t in (t_lo, t_hi)
        )
    return EdgePiece(index, origin, direction, lo, hi, exact_ends)


def _refine(inside_at, theta_in, theta_out):
    """Bisect towards the boundary, keeping the end that stays inside."""
    for _ in range(_BISECTION_STEPS):
        mid = (theta_in + theta_out) / 2
        if inside_at(mid):
            theta_in = mid
        else:
            theta_out = mid
    return theta_in


def _arc_pieces(region: Region, index: int, samples: int) -> List[ArcPiece]:
    disk = region.primitives[index]
    center = (to_mpf(disk.center.x), to_mpf(disk.center.y))
    radius = mp.sqrt(to_mpf(disk.r2))

    def inside_at(theta):
        return others_contain(
            region, index,
            center[0] + radius * mp.cos(theta),
            center[1] + radius * mp.sin(theta),
        )

    step = 2 * mp.pi / samples
    mask = [inside_at(j * step) for j in range(samples)]
    if all(mask):
        return [ArcPiece(index, center, radius, mp.mpf(0), 2 * mp.pi)]
    if not any(mask):
        return []

    # Walk once around the circle starting just after an outside sample.
    first_out = mask.index(False)
    pieces = []
    run_start = None
    for offset in range(1, samples + 1):
        j = first_out + offset
        inside = mask[j % samples]
        if inside and run_start is None:
            run_start = j
        elif not inside and run_start is not None:
            start = _refine(inside_at, run_start * step, (run_start - 1) * step)
            end = _refine(inside_at, (j - 1) * step, j * step)
            pieces.append(ArcPiece(index, center, radius, start, end))
            run_start = None
    return pieces


def boundary_pieces(region: Region, samples: int = Config.ARC_SAMPLES) -> List[Piece]:
    pieces: List[Piece] = []
    for index, prim in enumerate(region.primitives):
        if isinstance(prim, HalfPlane):
            piece = _edge_piece(region, index)
            if piece is not None:
                pieces.append(piece)
        else:
            pieces.extend(_arc_pieces(region, index, samples))
    return pieces


def piece_parameters(piece: Piece):
    if isinstance(piece, EdgePiece):
        return piece.t_start, piece.t_end
    return piece.theta_start, piece.theta_end


def sample_piece(region: Region, piece: Piece, count: int) -> List[Tuple[object, object]]:
    """`count` evenly spaced points along the piece that pass the exact membership test."""
    start, end = piece_parameters(piece)
    count = max(count, 2)
    points = []
    for j in range(count):
        x, y = piece.point_at(start + (end - start) * j / (count - 1))
        if others_contain(region, piece.index, x, y):
            points.append((x, y))
    return points


def polygon_vertices(pieces: List[Piece]) -> List[Point]:
    vertices = []
    for piece in pieces:
        if isinstance(piece, EdgePiece) and piece.exact_ends:
            vertices.extend(piece.exact_ends)
    return vertices
