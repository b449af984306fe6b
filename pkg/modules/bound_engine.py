"""
Certified evaluation of the partial-estimation inequality

    (N / m^(k-1)) * H^s(E) <= |U|^s

with interval-enclosed logarithms and exponentials, so that every published
number is an upper bound for the quantity it stands for.
"""
import logging
import math
from dataclasses import dataclass, field
from decimal import Decimal
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Tuple, Union

import numpy as np
from mpmath import iv, mp

from modules import boundary
from modules.cantor_grid import CoverageCount
from modules.config import Config
from modules.errors import DegenerateRegionError, InvalidInputError
from modules.exact_geometry import HalfPlane, Region, as_rational
from modules.precision import ceil_decimal, lower, mpf_to_fraction, to_interval, to_mpf, upper

logger = logging.getLogger(__name__)

# Relative width allowed between the enclosure ends of a power.
POWER_SLACK = mp.mpf(2) ** -80


def _split_square(n: int) -> Tuple[int, int]:
    """n = outer^2 * inner with small square factors pulled out."""
    outer, inner = 1, n
    factor = 2
    while factor * factor <= inner and factor < 100000:
        while inner % (factor * factor) == 0:
            inner //= factor * factor
            outer *= factor
        factor += 1
    return outer, inner


# --- Diameter values ---

@dataclass(frozen=True)
class ExactDiameter:
    """scale * sqrt(radicand)."""
    scale: Fraction
    radicand: Fraction

    def __post_init__(self):
        object.__setattr__(self, "scale", as_rational(self.scale))
        object.__setattr__(self, "radicand", as_rational(self.radicand))
        if self.scale <= 0:
            raise InvalidInputError(f"Diameter scale must be positive, got {self.scale}")
        if self.radicand < 0:
            raise InvalidInputError(f"Diameter radicand must be non-negative, got {self.radicand}")

    @property
    def squared(self) -> Fraction:
        return self.scale * self.scale * self.radicand

    def enclosure(self):
        return to_interval(self.scale) * iv.sqrt(to_interval(self.radicand))

    def upper(self):
        return upper(self.enclosure())

    def scaled(self, factor) -> "ExactDiameter":
        return ExactDiameter(self.scale * as_rational(factor), self.radicand)

    def __eq__(self, other):
        if isinstance(other, ExactDiameter):
            return self.squared == other.squared
        return NotImplemented

    def __hash__(self):
        return hash(self.squared)

    def __str__(self):
        # sqrt(p/q) = sqrt(p*q)/q, then pull square factors out of p*q.
        outer, inner = _split_square(self.radicand.numerator * self.radicand.denominator)
        coefficient = self.scale * outer / self.radicand.denominator
        if inner == 1:
            return str(coefficient)
        head = "" if coefficient.numerator == 1 else str(coefficient.numerator)
        tail = "" if coefficient.denominator == 1 else f"/{coefficient.denominator}"
        return f"{head}√{inner}{tail}"


@dataclass(frozen=True)
class IntervalDiameter:
    """A diameter known only through a proven enclosure [lo, hi]."""
    lo: object
    hi: object

    def __post_init__(self):
        lo, hi = mp.mpf(self.lo), mp.mpf(self.hi)
        if not 0 < lo <= hi:
            raise InvalidInputError(f"Interval diameter needs 0 < lo <= hi, got [{lo}, {hi}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @classmethod
    def from_text(cls, lo: str, hi: str) -> "IntervalDiameter":
        # The enclosure widens outward while converting from decimal text.
        return cls(lower(iv.mpf(lo)), upper(iv.mpf(hi)))

    @classmethod
    def from_enclosure(cls, interval) -> "IntervalDiameter":
        return cls(lower(interval), upper(interval))

    def upper(self):
        return self.hi

    def scaled(self, factor) -> "IntervalDiameter":
        factor = to_interval(as_rational(factor))
        return IntervalDiameter(lower(iv.mpf(self.lo) * factor), upper(iv.mpf(self.hi) * factor))

    def __str__(self):
        return f"≈{mp.nstr(self.hi, 12)}"


DiameterValue = Union[ExactDiameter, IntervalDiameter]


# --- High-precision values and bounds ---

@dataclass(frozen=True)
class HighFloat:
    """A high-precision value together with an enclosure [lo, hi] of the true value."""
    value: object
    fractional_bits: int
    lo: object = None
    hi: object = None

    def __post_init__(self):
        value = mp.mpf(self.value)
        object.__setattr__(self, "value", value)
        object.__setattr__(self, "lo", value if self.lo is None else mp.mpf(self.lo))
        object.__setattr__(self, "hi", value if self.hi is None else mp.mpf(self.hi))

    @classmethod
    def from_interval(cls, interval) -> "HighFloat":
        mid = mp.mpf(interval.mid)
        whole_bits = int(abs(mid)).bit_length()
        return cls(mid, Config.PRECISION_BITS - whole_bits, lower(interval), upper(interval))

    def enclosure(self):
        return iv.mpf([self.lo, self.hi])

    def __float__(self):
        return float(self.value)


@dataclass(frozen=True)
class Certified:
    coverage: CoverageCount


@dataclass(frozen=True)
class Fixture:
    name: str


Provenance = Union[Certified, Fixture]


@dataclass(frozen=True)
class UpperBound:
    value: object
    provenance: Provenance = field(default_factory=lambda: Fixture("ad-hoc"))

    def published(self, places: int = Config.PUBLISHED_PLACES) -> Decimal:
        return ceil_decimal(self.value, places)

    def __float__(self):
        return float(self.value)


# --- Dimension ---

def _rational_exponent(branch_count: int, inverse_ratio: Fraction, max_denominator: int = 8):
    """p/q with branch_count^q == inverse_ratio^p, if one exists with q <= max_denominator."""
    if branch_count == 1:
        return Fraction(0)
    # branch_count^q is an integer, which a reduced p/d with d > 1 never reaches
    if inverse_ratio.denominator != 1:
        return None
    base = inverse_ratio.numerator
    for q in range(1, max_denominator + 1):
        target = branch_count ** q
        estimate = round(q * math.log(branch_count) / math.log(base))
        for p in (estimate - 1, estimate, estimate + 1):
            if p > 0 and base ** p == target:
                return Fraction(p, q)
    return None


def hausdorff_dimension(branch_count: int, contraction_ratio) -> HighFloat:
    """s solving branch_count * contraction_ratio^s = 1."""
    ratio = as_rational(contraction_ratio)
    if not isinstance(branch_count, int) or branch_count < 1:
        raise InvalidInputError(f"Branch count must be a positive integer, got {branch_count!r}")
    if not 0 < ratio < 1:
        raise InvalidInputError(f"Contraction ratio must lie in (0, 1), got {ratio}")

    exact = _rational_exponent(branch_count, 1 / ratio)
    if exact is not None:
        return HighFloat.from_interval(to_interval(exact))
    enclosure = iv.log(iv.mpf(branch_count)) / iv.log(to_interval(1 / ratio))
    return HighFloat.from_interval(enclosure)


@lru_cache(maxsize=1)
def cantor_product_dimension() -> HighFloat:
    """log_3 4, the dimension of C x C."""
    return hausdorff_dimension(4, Fraction(1, 3))


# --- Powers and bounds ---

def diameter_upper(diameter: DiameterValue):
    return diameter.upper()


def pow_upper(base: DiameterValue, exponent: HighFloat, provenance: Optional[Provenance] = None) -> UpperBound:
    """
    An upper bound for base^exponent. Exact bases are enclosed through
    interval square roots; interval bases are evaluated at their upper end.
    """
    provenance = provenance or Fixture("power")
    if isinstance(base, ExactDiameter):
        if base.squared == 0:
            raise InvalidInputError("Base of a power bound must be positive")
        if base.squared == 1:
            return UpperBound(mp.mpf(1), provenance)
        enclosure = base.enclosure()
    elif isinstance(base, IntervalDiameter):
        enclosure = iv.mpf(base.hi)
    else:
        raise InvalidInputError(f"Unsupported diameter value {base!r}")

    result = iv.exp(exponent.enclosure() * iv.log(enclosure))
    low, high = lower(result), upper(result)
    if (high - low) > POWER_SLACK * low:
        logger.warning("Power enclosure wider than 2^-80 relative: [%s, %s]", low, high)
    return UpperBound(high, provenance)


def partial_estimation_bound(
    coverage_fraction,
    diameter: DiameterValue,
    s: HighFloat,
    provenance: Optional[Provenance] = None,
) -> UpperBound:
    """|U|^s divided by the covered fraction, rounded up."""
    fraction = as_rational(coverage_fraction)
    if not 0 < fraction <= 1:
        raise InvalidInputError(f"Coverage fraction must lie in (0, 1], got {fraction}")
    power = pow_upper(diameter, s).value
    if fraction == 1:
        value = power
    else:
        value = upper(iv.mpf(power) / to_interval(fraction))
    return UpperBound(value, provenance or Fixture("ad-hoc"))


def trivial_diameter_bound(diameter: DiameterValue, s: HighFloat) -> UpperBound:
    return partial_estimation_bound(1, diameter, s, provenance=Fixture("trivial"))


def certified_bound(coverage: CoverageCount, diameter: DiameterValue, s: HighFloat = None) -> Optional[UpperBound]:
    """The bound a certified count supports, or None when nothing is fully inside."""
    if coverage.inside == 0:
        return None
    if s is None:
        s = cantor_product_dimension()
    return partial_estimation_bound(coverage.fraction, diameter, s, provenance=Certified(coverage))


# --- Diameter verification ---

@dataclass(frozen=True)
class DiameterReport:
    max_sampled_distance: object
    maximizing_pair: Tuple[Tuple[float, float], Tuple[float, float]]
    area_estimate: float
    disk_area: float
    sample_count: int
    vertex_distance: object
    passed: bool
    diagnostic: str = ""


def _farthest_pair(points: np.ndarray, chunk: int = 256) -> Tuple[int, int]:
    best, pair = -1.0, (0, 0)
    for start in range(0, len(points), chunk):
        block = points[start:start + chunk]
        d2 = ((block[:, None, :] - points[None, :, :]) ** 2).sum(axis=-1)
        i, j = np.unravel_index(np.argmax(d2), d2.shape)
        if d2[i, j] > best:
            best, pair = float(d2[i, j]), (start + int(i), int(j))
    return pair


def estimate_area(region: Region, bbox, grid: int = Config.AREA_GRID, seed: int = Config.SAMPLE_SEED) -> float:
    """Jittered-grid Monte-Carlo area: one seeded point per cell of a grid x grid lattice."""
    xmin, ymin, xmax, ymax = bbox
    width, height = xmax - xmin, ymax - ymin
    rng = np.random.default_rng(seed)
    jitter = rng.random((grid, grid, 2))
    cells = np.arange(grid)
    xs = xmin + (cells[:, None] + jitter[..., 0]) / grid * width
    ys = ymin + (cells[None, :] + jitter[..., 1]) / grid * height
    mask = np.ones((grid, grid), dtype=bool)
    for prim in region.primitives:
        if isinstance(prim, HalfPlane):
            mask &= float(prim.a) * xs + float(prim.b) * ys <= float(prim.c)
        else:
            cx, cy = float(prim.center.x), float(prim.center.y)
            mask &= (xs - cx) ** 2 + (ys - cy) ** 2 <= float(prim.r2)
    return float(mask.mean()) * width * height


def _failed(diagnostic: str) -> DiameterReport:
    logger.warning("Diameter verification failed: %s", diagnostic)
    return DiameterReport(mp.mpf(0), ((0.0, 0.0), (0.0, 0.0)), 0.0, 0.0, 0, None, False, diagnostic)


def verify_diameter(region: Region, claimed: DiameterValue, boundary_samples: int = 4096) -> DiameterReport:
    """
    Sampling check of a claimed diameter: the largest distance between
    boundary samples must not exceed the claim, and (isoperimetric check) the
    area must not exceed that of the disk with the claimed diameter. Polygons
    also get the exact vertex-pair maximum.
    """
    if boundary_samples < 64:
        raise InvalidInputError("Diameter verification needs at least 64 boundary samples")
    try:
        pieces = boundary.boundary_pieces(region)
    except DegenerateRegionError as exc:
        return _failed(str(exc))
    if not pieces:
        return _failed("region is empty")

    # room for the two ends of a piece to fail the float membership test
    per_piece = -(-boundary_samples // len(pieces)) + 3
    samples = []
    for piece in pieces:
        samples.extend(boundary.sample_piece(region, piece, per_piece))
    if len(samples) < 2:
        return _failed("region boundary has fewer than two points")

    points = np.array([[float(x), float(y)] for x, y in samples])
    i, j = _farthest_pair(points)
    (xi, yi), (xj, yj) = samples[i], samples[j]
    max_sampled = mp.sqrt((xi - xj) ** 2 + (yi - yj) ** 2)

    claimed_hi = diameter_upper(claimed)
    distance_ok = max_sampled <= claimed_hi * (1 + to_mpf(Fraction(Config.DIAMETER_SLACK)))

    vertex_distance = None
    vertex_ok = True
    if region.is_polygon:
        vertices = boundary.polygon_vertices(pieces)
        best = max(
            ((p.x - q.x) ** 2 + (p.y - q.y) ** 2 for p in vertices for q in vertices),
            default=Fraction(0),
        )
        vertex_distance = mp.sqrt(to_mpf(best))
        if isinstance(claimed, ExactDiameter):
            vertex_ok = best <= claimed.squared
        else:
            vertex_ok = mpf_to_fraction(claimed_hi) ** 2 >= best

    bbox = (
        float(points[:, 0].min()), float(points[:, 1].min()),
        float(points[:, 0].max()), float(points[:, 1].max()),
    )
    area = estimate_area(region, bbox)
    disk_area = float(mp.pi * (claimed_hi / 2) ** 2)
    area_ok = area <= disk_area * (1 + float(Config.AREA_SLACK))

    passed = bool(distance_ok and area_ok and vertex_ok)
    diagnostic = ""
    if not distance_ok:
        diagnostic = f"sampled distance {mp.nstr(max_sampled, 15)} exceeds claimed {mp.nstr(claimed_hi, 15)}"
    elif not vertex_ok:
        diagnostic = f"vertex distance {mp.nstr(vertex_distance, 15)} exceeds claimed {mp.nstr(claimed_hi, 15)}"
    elif not area_ok:
        diagnostic = f"area {area:.6f} exceeds disk area {disk_area:.6f}"
    report = DiameterReport(
        max_sampled,
        ((float(xi), float(yi)), (float(xj), float(yj))),
        area,
        disk_area,
        len(samples),
        vertex_distance,
        passed,
        diagnostic,
    )
    if passed:
        logger.debug("Diameter verified: max sampled %s over %d samples", mp.nstr(max_sampled, 12), len(samples))
    else:
        logger.warning("Diameter verification failed: %s", diagnostic)
    return report
