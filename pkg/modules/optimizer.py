"""
Parameter searches over cover-set families: golden-section minimization of
the octagon-series bound f(k) over real k, the best integer k, and certified
sweeps over the radius of a centred disk.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Optional, Tuple

from mpmath import mp

from modules.bound_engine import (
    ExactDiameter,
    HighFloat,
    UpperBound,
    cantor_product_dimension,
    certified_bound,
)
from modules.cantor_grid import CoverageCount, count_coverage
from modules.constructions import UNIT_ROOT
from modules.errors import InvalidInputError
from modules.exact_geometry import Disk, GridSquare, Point, Region, as_rational, square_half_planes

logger = logging.getLogger(__name__)

INV_PHI = (mp.sqrt(5) - 1) / 2
INV_PHI_SQUARE = (3 - mp.sqrt(5)) / 2
DERIVATIVE_STEP = mp.mpf("1e-4")
# The double nearest 1e-12 sits just below the decimal value.
MIN_TOLERANCE = mp.mpf(1e-12)


@dataclass(frozen=True)
class ObjectiveResult:
    k: object
    value: object
    second_derivative: Optional[object] = None
    iterations: int = 0
    diagnostics: Tuple[str, ...] = ()

    @property
    def unimodal(self) -> bool:
        return not self.diagnostics


@dataclass(frozen=True)
class IntegerChoice:
    k: int
    bound: object


@dataclass(frozen=True)
class SweepRow:
    r2: Fraction
    coverage: CoverageCount
    diameter: ExactDiameter
    bound: Optional[UpperBound]


# --- Octagon-series objective ---

def _objective(k, s):
    k = mp.mpf(k)
    t = mp.power(3, k)
    q = mp.power(4, k)
    diameter = mp.sqrt(2 * t * t - 12 * t + 26) / (t - 1)
    return mp.power(diameter, s) * (q - 2) / (q - 6)


def f_octagon_series(k, s: HighFloat = None):
    """
    Bound from the series octagon with real parameter k:
    (sqrt(2*9^k - 12*3^k + 26) / (3^k - 1))^s * (4^k - 2) / (4^k - 6).
    """
    if mp.mpf(k) < 2:
        raise InvalidInputError(
            f"f(k) is defined for k >= 2, got {k} (k = 1 is infeasible: x = 1/2 > 1/4)"
        )
    s = cantor_product_dimension() if s is None else s
    return _objective(k, s.value)


def second_derivative(k, s: HighFloat = None, step=DERIVATIVE_STEP):
    """Central-difference estimate of f''(k)."""
    s = (cantor_product_dimension() if s is None else s).value
    k, h = mp.mpf(k), mp.mpf(step)
    return (_objective(k + h, s) - 2 * _objective(k, s) + _objective(k - h, s)) / (h * h)


def minimize_octagon_series(lo=2, hi=8, tol=1e-9, s: HighFloat = None) -> ObjectiveResult:
    """
    Golden-section search for the minimum of f on [lo, hi] down to a bracket
    of width `tol`. A bracket whose interior values contradict a single
    minimum is reported in `diagnostics` and the search carries on.
    """
    a, b, tol = mp.mpf(lo), mp.mpf(hi), mp.mpf(tol)
    if not 2 <= a < b:
        raise InvalidInputError(f"Search bracket must satisfy 2 <= lo < hi, got [{lo}, {hi}]")
    if tol < MIN_TOLERANCE:
        raise InvalidInputError(f"Tolerance must be at least 1e-12, got {mp.nstr(tol, 6)}")
    s_value = (cantor_product_dimension() if s is None else s).value

    def f(x):
        return _objective(x, s_value)

    diagnostics: List[str] = []
    h = b - a
    fa, fb = f(a), f(b)
    c, d = a + INV_PHI_SQUARE * h, a + INV_PHI * h
    yc, yd = f(c), f(d)
    iterations = 0

    while h > tol:
        if not diagnostics and (yc > max(fa, yd) or yd > max(yc, fb)):
            message = f"bracket [{mp.nstr(a, 10)}, {mp.nstr(b, 10)}] has an interior maximum; f may not be unimodal"
            logger.warning(message)
            diagnostics.append(message)
        if yc < yd:
            b, fb = d, yd
            d, yd = c, yc
            h = INV_PHI * h
            c = a + INV_PHI_SQUARE * h
            yc = f(c)
        else:
            a, fa = c, yc
            c, yc = d, yd
            h = INV_PHI * h
            d = a + INV_PHI * h
            yd = f(d)
        iterations += 1
        logger.debug("golden-section step %d: bracket [%s, %s]", iterations, mp.nstr(a, 12), mp.nstr(b, 12))

    k_star = (a + b) / 2
    value = f(k_star)
    if value > min(f(mp.mpf(lo)), f(mp.mpf(hi))):
        message = "minimum found in the interior is above an end of the bracket"
        logger.warning(message)
        diagnostics.append(message)
    curvature = second_derivative(k_star, s)
    logger.debug("k* = %s, f(k*) = %s, f''(k*) = %s", mp.nstr(k_star, 15), mp.nstr(value, 15), mp.nstr(curvature, 6))
    return ObjectiveResult(k_star, value, curvature, iterations, tuple(diagnostics))


def best_integer_k(k_min: int = 2, k_max: int = 5, s: HighFloat = None) -> IntegerChoice:
    if not isinstance(k_min, int) or not isinstance(k_max, int) or not 2 <= k_min <= k_max:
        raise InvalidInputError(f"Need integers 2 <= k_min <= k_max, got ({k_min}, {k_max})")
    best = None
    for k in range(k_min, k_max + 1):
        value = f_octagon_series(k, s)
        # strict comparison keeps the smaller k on ties
        if best is None or value < best.bound:
            best = IntegerChoice(k, value)
    return best


# --- Disk radius sweeps ---

def _sweep_diameter(r2: Fraction, root: GridSquare) -> ExactDiameter:
    disk = ExactDiameter(2, r2)
    diagonal = ExactDiameter(root.side, 2)
    return disk if disk.squared <= diagonal.squared else diagonal


def sweep_disk_radius(
    center: Point,
    r2_values: Iterable,
    level: int,
    workers: int = None,
    root: GridSquare = UNIT_ROOT,
) -> List[SweepRow]:
    """
    Certified bound for root square ∩ disk(center, r2) at each r2, sorted by
    bound and then r2. Rows with nothing fully inside carry no bound and go last.
    """
    values = sorted({as_rational(r2) for r2 in r2_values})
    if not values:
        raise InvalidInputError("Sweep needs at least one r2 value")
    for r2 in values:
        if r2 <= 0:
            raise InvalidInputError(f"r2 values must be positive, got {r2}")

    s = cantor_product_dimension()
    rows = []
    for r2 in values:
        region = Region(square_half_planes(root) + (Disk(center, r2),))
        coverage = count_coverage(root, region, level, workers=workers)
        diameter = _sweep_diameter(r2, root)
        rows.append(SweepRow(r2, coverage, diameter, certified_bound(coverage, diameter, s)))
        logger.debug("sweep r2=%s: inside %d of %d", r2, coverage.inside, coverage.total)

    return sorted(rows, key=lambda row: (row.bound is None, row.bound.value if row.bound else 0, row.r2))
