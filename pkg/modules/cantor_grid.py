"""
Addressing of the level-n squares of C x C and exact counting of how many of
them a Region covers.

`count_coverage` compiles the region onto the integer lattice of the target
level and prunes whole subtrees; `brute_force_coverage` walks every address
with the Fraction predicates of `exact_geometry` and serves as its oracle.
"""
import itertools
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, List, Tuple

from modules.config import Config
from modules.errors import InvalidInputError, LevelCapError
from modules.exact_geometry import (
    Classification,
    GridSquare,
    HalfPlane,
    Region,
    classify_square_vs_region,
)

logger = logging.getLogger(__name__)

# Digit d moves to the child with offset (d mod 2, d div 2) * (2/3) * side.
CHILD_BITS = ((0, 0), (1, 0), (0, 1), (1, 1))


@dataclass(frozen=True)
class Address:
    digits: Tuple[int, ...] = ()

    def __post_init__(self):
        digits = tuple(self.digits)
        for digit in digits:
            if digit not in (0, 1, 2, 3):
                raise InvalidInputError(f"Address digits must be in 0..3, got {digit!r}")
        object.__setattr__(self, "digits", digits)

    @property
    def level(self) -> int:
        return len(self.digits) + 1


@dataclass(frozen=True)
class CoverageCount:
    level: int
    total: int
    inside: int
    straddle: int
    outside: int

    def __post_init__(self):
        if min(self.inside, self.straddle, self.outside) < 0:
            raise InvalidInputError("Coverage tallies must be non-negative")
        if self.inside + self.straddle + self.outside != self.total:
            raise InvalidInputError(
                f"Tallies {self.inside}+{self.straddle}+{self.outside} do not add up to {self.total}"
            )

    def __add__(self, other: "CoverageCount") -> "CoverageCount":
        if self.level != other.level:
            raise InvalidInputError("Cannot combine counts taken at different levels")
        return CoverageCount(
            self.level,
            self.total + other.total,
            self.inside + other.inside,
            self.straddle + other.straddle,
            self.outside + other.outside,
        )

    @property
    def fraction(self) -> Fraction:
        """Certified coverage N / m^(k-1): only fully-inside squares count."""
        return Fraction(self.inside, self.total)

    @classmethod
    def empty(cls, level: int) -> "CoverageCount":
        return cls(level, 0, 0, 0, 0)


def square_for_address(root: GridSquare, addr) -> GridSquare:
    digits = addr.digits if isinstance(addr, Address) else Address(tuple(addr)).digits
    x, y, side = root.x0, root.y0, root.side
    for digit in digits:
        xbit, ybit = CHILD_BITS[digit]
        x += xbit * 2 * side / 3
        y += ybit * 2 * side / 3
        side /= 3
    return GridSquare(x, y, side)


def _check_level(n: int, cap: int):
    if not isinstance(n, int) or n < 1:
        raise InvalidInputError(f"Level must be a positive integer, got {n!r}")
    if n > cap:
        raise LevelCapError(f"Level {n} is above the cap of {cap}")


# --- Integer lattice form of a region ---

def _lcm_of_denominators(*values: Fraction) -> int:
    return math.lcm(*(v.denominator for v in values))


class _LatticeRegion:
    """
    The region rewritten in units of the level-n side, with the root corner as
    origin, so that every test is integer arithmetic.

    Half-plane a*x + b*y <= c becomes A*X + B*Y <= C. Disk becomes
    q * ((D*X - PX)^2 + (D*Y - PY)^2) <= p * D^2 with r2 / unit^2 = p / q.
    """

    def __init__(self, root: GridSquare, region: Region, n: int):
        unit = root.side / 3 ** (n - 1)
        self.half_planes = []
        self.disks = []
        for prim in region.primitives:
            if isinstance(prim, HalfPlane):
                a, b = prim.a * unit, prim.b * unit
                c = prim.c - prim.a * root.x0 - prim.b * root.y0
                scale = _lcm_of_denominators(a, b, c)
                self.half_planes.append((int(a * scale), int(b * scale), int(c * scale)))
            else:
                px = (prim.center.x - root.x0) / unit
                py = (prim.center.y - root.y0) / unit
                r2 = prim.r2 / (unit * unit)
                d = _lcm_of_denominators(px, py)
                self.disks.append((
                    d,
                    int(px * d),
                    int(py * d),
                    r2.denominator,
                    r2.numerator * d * d,
                ))

    def initial_pending(self) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
        return tuple(range(len(self.half_planes))), tuple(range(len(self.disks)))

    def classify(self, x: int, y: int, side: int, pending) -> Tuple[Classification, tuple]:
        """
        Classify against the primitives still pending. A square inside a
        primitive has all its sub-squares inside it, so those drop out of the
        pending sets handed to the children.
        """
        pending_hp, pending_disks = pending
        left_hp = []
        for index in pending_hp:
            a, b, c = self.half_planes[index]
            base = a * x + b * y
            low = base + min(0, a * side) + min(0, b * side)
            high = base + max(0, a * side) + max(0, b * side)
            if low > c:
                return Classification.OUTSIDE, pending
            if high > c:
                left_hp.append(index)
        left_disks = []
        for index in pending_disks:
            d, px, py, q, rhs = self.disks[index]
            lo_x, hi_x = d * x - px, d * (x + side) - px
            lo_y, hi_y = d * y - py, d * (y + side) - py
            far_x = max(abs(lo_x), abs(hi_x))
            far_y = max(abs(lo_y), abs(hi_y))
            if q * (far_x * far_x + far_y * far_y) <= rhs:
                continue
            near_x = lo_x if lo_x > 0 else (hi_x if hi_x < 0 else 0)
            near_y = lo_y if lo_y > 0 else (hi_y if hi_y < 0 else 0)
            if q * (near_x * near_x + near_y * near_y) > rhs:
                return Classification.OUTSIDE, pending
            left_disks.append(index)
        if not left_hp and not left_disks:
            return Classification.INSIDE, ((), ())
        return Classification.STRADDLES, (tuple(left_hp), tuple(left_disks))


def _count_subtree(lattice: _LatticeRegion, n: int, level: int, x: int, y: int, pending) -> CoverageCount:
    inside = straddle = outside = 0
    stack = [(level, x, y, pending)]
    while stack:
        lvl, cx, cy, pend = stack.pop()
        side = 3 ** (n - lvl)
        verdict, pend = lattice.classify(cx, cy, side, pend)
        weight = 4 ** (n - lvl)
        if verdict is Classification.INSIDE:
            inside += weight
        elif verdict is Classification.OUTSIDE:
            outside += weight
        elif lvl == n:
            straddle += 1
        else:
            step = 2 * side // 3
            for xbit, ybit in CHILD_BITS:
                stack.append((lvl + 1, cx + xbit * step, cy + ybit * step, pend))
    return CoverageCount(n, 4 ** (n - level), inside, straddle, outside)


def _count_child(args) -> CoverageCount:
    root, region, n, digit = args
    lattice = _LatticeRegion(root, region, n)
    step = 2 * 3 ** (n - 2)
    xbit, ybit = CHILD_BITS[digit]
    return _count_subtree(lattice, n, 2, xbit * step, ybit * step, lattice.initial_pending())


def coverage_by_child(root: GridSquare, region: Region, n: int, workers: int = None) -> List[CoverageCount]:
    """
    Per-quadrant tallies at level n >= 2, one for each top-level child in
    digit order. Each child is independent; with `workers` they run in a
    process pool and come back in the same order.
    """
    _check_level(n, Config.MAX_LEVEL)
    if n < 2:
        raise InvalidInputError("Per-child tallies need level 2 or deeper")
    jobs = [(root, region, n, digit) for digit in range(4)]
    if workers and workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_count_child, jobs))
    return [_count_child(job) for job in jobs]


def count_coverage(root: GridSquare, region: Region, n: int, workers: int = None) -> CoverageCount:
    _check_level(n, Config.MAX_LEVEL)
    if n == 1:
        lattice = _LatticeRegion(root, region, n)
        result = _count_subtree(lattice, n, 1, 0, 0, lattice.initial_pending())
    else:
        parts = coverage_by_child(root, region, n, workers=workers)
        result = CoverageCount.empty(n)
        for part in parts:
            result = result + part
    logger.debug(
        "level %d: inside=%d straddle=%d outside=%d",
        n, result.inside, result.straddle, result.outside,
    )
    return result


def iter_addresses(n: int) -> Iterator[Address]:
    for digits in itertools.product(range(4), repeat=n - 1):
        yield Address(digits)


def brute_force_coverage(root: GridSquare, region: Region, n: int, cap: int = None) -> CoverageCount:
    _check_level(n, Config.BRUTE_FORCE_CAP if cap is None else cap)
    tallies = {verdict: 0 for verdict in Classification}
    for addr in iter_addresses(n):
        tallies[classify_square_vs_region(square_for_address(root, addr), region)] += 1
    return CoverageCount(
        n,
        4 ** (n - 1),
        tallies[Classification.INSIDE],
        tallies[Classification.STRADDLES],
        tallies[Classification.OUTSIDE],
    )


def iter_classified_squares(root: GridSquare, region: Region, n: int) -> Iterator[Tuple[GridSquare, Classification]]:
    """
    Every level-n square with its classification, in address order. Subtrees
    settled as Inside or Outside above level n pass their verdict down.
    """
    _check_level(n, Config.MAX_LEVEL)

    def walk(sq: GridSquare, level: int, settled):
        verdict = settled or classify_square_vs_region(sq, region)
        if level == n:
            yield sq, verdict
            return
        inherited = verdict if verdict is not Classification.STRADDLES else None
        third = sq.side / 3
        for xbit, ybit in CHILD_BITS:
            child = GridSquare(sq.x0 + xbit * 2 * third, sq.y0 + ybit * 2 * third, third)
            yield from walk(child, level + 1, inherited)

    yield from walk(root, 1, None)
