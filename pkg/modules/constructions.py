"""
Catalog of cover-set constructions for C x C. Every construction is emitted on
the unit root square; `side9_cover` gives the side-9 form some of them are
usually stated in, and `normalize_cover` maps any root back to the unit one.
"""
import logging
from dataclasses import dataclass, field
from decimal import Decimal
from fractions import Fraction
from pathlib import Path
from typing import Dict, Mapping, Optional, Tuple, Union

from mpmath import iv

from modules.bound_engine import DiameterValue, ExactDiameter, IntervalDiameter
from modules.data_loader import load_paper_fixtures, read_region_config
from modules.errors import InvalidInputError, UnknownConstructionError
from modules.exact_geometry import Disk, GridSquare, HalfPlane, Point, Region, as_rational, square_half_planes

logger = logging.getLogger(__name__)

CATALOG = (
    "basic-interval",
    "octagon-fixed",
    "octagon-series",
    "circle-big",
    "circle-series",
    "correction-region",
)

UNIT_ROOT = GridSquare(0, 0, 1)

RECOMMENDED_LEVELS = {
    "octagon-fixed": 4,
    "octagon-series": 9,
    "circle-big": 10,
    "circle-series": 9,
    "correction-region": 8,
}

DEFAULT_PARAMS = {
    "basic-interval": {"n": 2},
    "octagon-series": {"k": 3},
}


@dataclass(frozen=True)
class CoverSpec:
    name: str
    root: GridSquare
    region: Region
    diameter: DiameterValue
    recommended_level: int
    params: Dict[str, Fraction] = field(default_factory=dict)


@dataclass(frozen=True)
class Fixture:
    """A printed (fraction, diameter, bound) triple, stored as printed."""
    name: str
    fraction: Fraction
    diameter: DiameterValue
    expected_bound: Decimal
    tolerance: Decimal
    params: Dict[str, Fraction] = field(default_factory=dict)
    # (level, uncovered squares) quoted alongside some of the fractions
    narrative: Optional[Tuple[int, int]] = None


def catalog() -> Tuple[str, ...]:
    return CATALOG


# --- Parameters ---

def _resolve_params(name: str, params: Optional[Mapping]) -> Dict[str, Fraction]:
    if name not in CATALOG:
        raise UnknownConstructionError(f"Unknown construction {name!r}; expected one of {', '.join(CATALOG)}")
    resolved = dict(DEFAULT_PARAMS.get(name, {}))
    for key, value in (params or {}).items():
        if key not in resolved:
            raise InvalidInputError(f"Construction {name!r} takes no parameter {key!r}")
        resolved[key] = value
    return {key: as_rational(value) for key, value in resolved.items()}


def _integer_param(params: Mapping, key: str) -> int:
    value = params[key]
    if value.denominator != 1:
        raise InvalidInputError(f"Parameter {key} must be an integer, got {value}")
    return int(value)


def _series_k(params: Mapping) -> int:
    k = _integer_param(params, "k")
    if k < 2:
        # k = 1 gives x = 1/2, and the corner cuts 2x would overlap.
        raise InvalidInputError(
            f"octagon-series needs k >= 2: k = {k} gives x = 1/(3^k - 1) = "
            f"{Fraction(1, 3 ** k - 1) if k >= 1 else 'undefined'}, but a corner cut needs x <= 1/4 "
            "(k = 1 is infeasible since x = 1/2 > 1/4)"
        )
    return k


# --- Regions ---

def _corner_cut_octagon(cut: Fraction) -> Region:
    """Root square with its four corners cut along the diagonals at depth `cut`."""
    return Region(square_half_planes(UNIT_ROOT) + (
        HalfPlane.at_least(1, 1, cut),
        HalfPlane(1, -1, 1 - cut),
        HalfPlane(-1, 1, 1 - cut),
        HalfPlane(1, 1, 2 - cut),
    ))


def series_x(k: int) -> Fraction:
    """Sum of 1/3^(k*i) over i >= 1."""
    return Fraction(1, 3 ** k - 1)


def series_diameter(k: int) -> ExactDiameter:
    """sqrt(1 + (1 - 4x)^2) with x = 1/(3^k - 1)."""
    t = 3 ** k
    return ExactDiameter(Fraction(1, t - 1), 2 * t * t - 12 * t + 26)


def series_limit_fraction(k: int) -> Fraction:
    return Fraction(4 ** k - 6, 4 ** k - 2)


def series_fraction_oracle(k: int, terms: int) -> Fraction:
    """Partial sum 1 - 4 * sum_{i=1..terms} 2^(i-1) / 4^(k*i)."""
    if not isinstance(k, int) or k < 2:
        raise InvalidInputError(f"Series oracle needs an integer k >= 2, got {k!r}")
    if not isinstance(terms, int) or terms < 1:
        raise InvalidInputError(f"Series oracle needs a positive number of terms, got {terms!r}")
    removed = sum(Fraction(2 ** (i - 1), 4 ** (k * i)) for i in range(1, terms + 1))
    return 1 - 4 * removed


def _correction_diameter() -> IntervalDiameter:
    # Distance C1C3 on the side-9 figure, divided by 9.
    c = 2 * iv.sqrt(633) / 3 - 9
    return IntervalDiameter.from_enclosure(iv.sqrt(c * c + 81) / 9)


_CORRECTION_CENTERS = (
    (Fraction(2, 27), Fraction(0)),
    (Fraction(2, 27), Fraction(1)),
    (Fraction(25, 27), Fraction(1)),
    (Fraction(25, 27), Fraction(0)),
)


def build(name: str, params: Optional[Mapping] = None) -> CoverSpec:
    params = _resolve_params(name, params)
    root_planes = square_half_planes(UNIT_ROOT)

    if name == "basic-interval":
        n = _integer_param(params, "n")
        if n < 1:
            raise InvalidInputError(f"basic-interval needs n >= 1, got {n}")
        side = Fraction(1, 3 ** (n - 1))
        region = Region(root_planes + (HalfPlane(1, 0, side), HalfPlane(0, 1, side)))
        return CoverSpec(name, UNIT_ROOT, region, ExactDiameter(side, 2), n, params)

    if name == "octagon-fixed":
        region = _corner_cut_octagon(Fraction(2, 27))
        return CoverSpec(name, UNIT_ROOT, region, ExactDiameter(Fraction(1, 27), 1258), RECOMMENDED_LEVELS[name], params)

    if name == "octagon-series":
        k = _series_k(params)
        region = _corner_cut_octagon(2 * series_x(k))
        return CoverSpec(name, UNIT_ROOT, region, series_diameter(k), RECOMMENDED_LEVELS[name], params)

    if name == "circle-big":
        disk = Disk(Point(Fraction(1, 2), Fraction(1, 2)), Fraction(629, 1458))
        return CoverSpec(
            name, UNIT_ROOT, Region(root_planes + (disk,)),
            ExactDiameter(Fraction(1, 27), 1258), RECOMMENDED_LEVELS[name], params,
        )

    if name == "circle-series":
        disk = Disk(Point(Fraction(1, 2), Fraction(1, 2)), Fraction(290, 676))
        return CoverSpec(
            name, UNIT_ROOT, Region(root_planes + (disk,)),
            ExactDiameter(Fraction(1, 13), 290), RECOMMENDED_LEVELS[name], params,
        )

    # correction-region
    disks = tuple(Disk(Point(x, y), Fraction(1258, 729)) for x, y in _CORRECTION_CENTERS)
    return CoverSpec(name, UNIT_ROOT, Region(root_planes + disks), _correction_diameter(), RECOMMENDED_LEVELS[name], params)


# --- Normalization ---

def _translated(prim, dx: Fraction, dy: Fraction):
    """The primitive moved by (-dx, -dy)."""
    if isinstance(prim, HalfPlane):
        return HalfPlane(prim.a, prim.b, prim.c - prim.a * dx - prim.b * dy)
    return Disk(Point(prim.center.x - dx, prim.center.y - dy), prim.r2)


def normalize_cover(spec: CoverSpec) -> CoverSpec:
    """Moves the root corner to the origin and rescales the root side to 1."""
    root = spec.root
    if root == UNIT_ROOT:
        return spec
    factor = 1 / root.side
    region = Region(tuple(
        _translated(prim, root.x0, root.y0).scaled(factor) for prim in spec.region.primitives
    ))
    logger.debug("Normalized %s from root side %s", spec.name, root.side)
    return CoverSpec(spec.name, UNIT_ROOT, region, spec.diameter.scaled(factor), spec.recommended_level, spec.params)


def side9_cover(name: str) -> CoverSpec:
    """The side-9 presentation of circle-big or correction-region."""
    root = GridSquare(0, 0, 9)
    root_planes = square_half_planes(root)
    if name == "circle-big":
        disk = Disk(Point(Fraction(9, 2), Fraction(9, 2)), Fraction(629, 18))
        return CoverSpec(
            name, root, Region(root_planes + (disk,)),
            ExactDiameter(Fraction(1, 3), 1258), RECOMMENDED_LEVELS[name],
        )
    if name == "correction-region":
        disks = tuple(
            Disk(Point(x * 9, y * 9), Fraction(1258, 9)) for x, y in _CORRECTION_CENTERS
        )
        return CoverSpec(
            name, root, Region(root_planes + disks),
            _correction_diameter().scaled(9), RECOMMENDED_LEVELS[name],
        )
    if name in CATALOG:
        raise InvalidInputError(f"{name!r} has no side-9 presentation")
    raise UnknownConstructionError(f"Unknown construction {name!r}")


def cover_from_config(path: Union[str, Path], name: Optional[str] = None, level: int = 8) -> CoverSpec:
    """A CoverSpec read from a JSON region config, normalized to the unit root."""
    root, region, diameter = read_region_config(path)
    spec = CoverSpec(name or Path(path).stem, root, region, diameter, level)
    return normalize_cover(spec)


# --- Fixtures ---

def _parse_param_cell(cell: str) -> Dict[str, Fraction]:
    if not cell:
        return {}
    key, _, value = cell.partition("=")
    return {key.strip(): as_rational(value.strip())}


def paper_fixture(name: str, params: Optional[Mapping] = None) -> Fixture:
    """The printed fraction, diameter and bound for a construction."""
    params = _resolve_params(name, params)
    df = load_paper_fixtures()
    rows = df[df["Name"] == name]

    if name == "basic-interval":
        # One level-n square out of 4^(n-1); the printed bound holds for every n.
        n = _integer_param(params, "n")
        row = rows.iloc[0]
        spec = build(name, params)
        return Fixture(
            name, Fraction(1, 4 ** (n - 1)), spec.diameter,
            Decimal(row["Expected Bound"]), Decimal(row["Tolerance"]), params,
        )

    if name == "octagon-series":
        k = _series_k(params)
        rows = rows[rows["Param"].map(lambda cell: _parse_param_cell(cell).get("k")) == k]
        if rows.empty:
            raise InvalidInputError(f"No printed octagon-series fixture for k = {k}")

    row = rows.iloc[0]
    narrative = None
    if row["Narrative Level"]:
        narrative = (int(row["Narrative Level"]), int(row["Narrative Uncovered"]))
    return Fixture(
        name,
        as_rational(row["Fraction"]),
        build(name, params).diameter,
        Decimal(row["Expected Bound"]),
        Decimal(row["Tolerance"]),
        params,
        narrative,
    )


def all_paper_fixtures():
    """One fixture per catalog construction, in catalog order."""
    return [paper_fixture(name) for name in CATALOG]
