"""
Exact rational predicates for closed axis-aligned squares against cover
regions built from closed disks and half-planes.

Every coordinate is a `fractions.Fraction`; floats are refused at the door.
"""
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from numbers import Rational
from typing import Tuple, Union

from modules.errors import InvalidInputError


def as_rational(value) -> Fraction:
    """Coerce ints, Fractions and "p" / "p/q" text to a canonical Fraction."""
    if isinstance(value, bool) or isinstance(value, float):
        raise InvalidInputError(f"Expected an exact rational, got {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (Rational, str)):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidInputError(f"Not a rational: {value!r}") from exc
    raise InvalidInputError(f"Expected an exact rational, got {type(value).__name__}")


@dataclass(frozen=True)
class Point:
    x: Fraction
    y: Fraction

    def __post_init__(self):
        object.__setattr__(self, "x", as_rational(self.x))
        object.__setattr__(self, "y", as_rational(self.y))

    def scaled(self, factor) -> "Point":
        factor = as_rational(factor)
        return Point(self.x * factor, self.y * factor)


@dataclass(frozen=True)
class GridSquare:
    """The closed square [x0, x0+side] x [y0, y0+side]."""
    x0: Fraction
    y0: Fraction
    side: Fraction

    def __post_init__(self):
        object.__setattr__(self, "x0", as_rational(self.x0))
        object.__setattr__(self, "y0", as_rational(self.y0))
        object.__setattr__(self, "side", as_rational(self.side))
        if self.side <= 0:
            raise InvalidInputError(f"Square side must be positive, got {self.side}")

    @property
    def x1(self) -> Fraction:
        return self.x0 + self.side

    @property
    def y1(self) -> Fraction:
        return self.y0 + self.side

    def corners(self) -> Tuple[Point, Point, Point, Point]:
        return (
            Point(self.x0, self.y0),
            Point(self.x1, self.y0),
            Point(self.x0, self.y1),
            Point(self.x1, self.y1),
        )

    def scaled(self, factor) -> "GridSquare":
        factor = as_rational(factor)
        return GridSquare(self.x0 * factor, self.y0 * factor, self.side * factor)


@dataclass(frozen=True)
class Disk:
    """Closed disk (x - cx)^2 + (y - cy)^2 <= r2."""
    center: Point
    r2: Fraction

    def __post_init__(self):
        object.__setattr__(self, "r2", as_rational(self.r2))
        if self.r2 <= 0:
            raise InvalidInputError(f"Disk radius squared must be positive, got {self.r2}")

    def contains(self, p: Point) -> bool:
        dx = p.x - self.center.x
        dy = p.y - self.center.y
        return dx * dx + dy * dy <= self.r2

    def scaled(self, factor) -> "Disk":
        factor = as_rational(factor)
        return Disk(self.center.scaled(factor), self.r2 * factor * factor)


@dataclass(frozen=True)
class HalfPlane:
    """Closed half-plane a*x + b*y <= c."""
    a: Fraction
    b: Fraction
    c: Fraction

    def __post_init__(self):
        object.__setattr__(self, "a", as_rational(self.a))
        object.__setattr__(self, "b", as_rational(self.b))
        object.__setattr__(self, "c", as_rational(self.c))
        if self.a == 0 and self.b == 0:
            raise InvalidInputError("Half-plane needs (a, b) != (0, 0)")

    @classmethod
    def at_least(cls, a, b, c) -> "HalfPlane":
        """a*x + b*y >= c, stored negated."""
        return cls(-as_rational(a), -as_rational(b), -as_rational(c))

    def value(self, p: Point) -> Fraction:
        return self.a * p.x + self.b * p.y

    def contains(self, p: Point) -> bool:
        return self.value(p) <= self.c

    def scaled(self, factor) -> "HalfPlane":
        return HalfPlane(self.a, self.b, self.c * as_rational(factor))


Primitive = Union[Disk, HalfPlane]


@dataclass(frozen=True)
class Region:
    """Intersection of closed convex primitives (the cover set U)."""
    primitives: Tuple[Primitive, ...]

    def __post_init__(self):
        primitives = tuple(self.primitives)
        if not primitives:
            raise InvalidInputError("A region needs at least one primitive")
        for prim in primitives:
            if not isinstance(prim, (Disk, HalfPlane)):
                raise InvalidInputError(f"Unsupported primitive {prim!r}")
        object.__setattr__(self, "primitives", primitives)

    def __len__(self):
        return len(self.primitives)

    def scaled(self, factor) -> "Region":
        return Region(tuple(prim.scaled(factor) for prim in self.primitives))

    @property
    def is_polygon(self) -> bool:
        return all(isinstance(prim, HalfPlane) for prim in self.primitives)


class Classification(Enum):
    INSIDE = "inside"
    OUTSIDE = "outside"
    STRADDLES = "straddles"


def square_half_planes(sq: GridSquare) -> Tuple[HalfPlane, ...]:
    """The four half-planes whose intersection is `sq`."""
    return (
        HalfPlane(-1, 0, -sq.x0),
        HalfPlane(0, -1, -sq.y0),
        HalfPlane(1, 0, sq.x1),
        HalfPlane(0, 1, sq.y1),
    )


def point_in_region(p: Point, region: Region) -> bool:
    return all(prim.contains(p) for prim in region.primitives)


def _clamp(value: Fraction, lo: Fraction, hi: Fraction) -> Fraction:
    return min(max(value, lo), hi)


def classify_square_vs_primitive(sq: GridSquare, prim: Primitive) -> Classification:
    if isinstance(prim, HalfPlane):
        # a*x + b*y is linear, so its extremes over the square sit at corners.
        values = [prim.value(corner) for corner in sq.corners()]
        if max(values) <= prim.c:
            return Classification.INSIDE
        if min(values) > prim.c:
            return Classification.OUTSIDE
        return Classification.STRADDLES

    cx, cy = prim.center.x, prim.center.y
    far_dx = max(abs(sq.x0 - cx), abs(sq.x1 - cx))
    far_dy = max(abs(sq.y0 - cy), abs(sq.y1 - cy))
    if far_dx * far_dx + far_dy * far_dy <= prim.r2:
        return Classification.INSIDE
    near_dx = _clamp(cx, sq.x0, sq.x1) - cx
    near_dy = _clamp(cy, sq.y0, sq.y1) - cy
    if near_dx * near_dx + near_dy * near_dy > prim.r2:
        return Classification.OUTSIDE
    return Classification.STRADDLES


def classify_square_vs_region(sq: GridSquare, region: Region) -> Classification:
    """
    Inside only when inside every primitive, Outside as soon as one primitive
    rules the square out, otherwise Straddles.
    """
    all_inside = True
    for prim in region.primitives:
        verdict = classify_square_vs_primitive(sq, prim)
        if verdict is Classification.OUTSIDE:
            return Classification.OUTSIDE
        if verdict is Classification.STRADDLES:
            all_inside = False
    return Classification.INSIDE if all_inside else Classification.STRADDLES
