import math
import random
import time
from decimal import Decimal
from fractions import Fraction

import pytest
from mpmath import mp

from modules import boundary, constructions
from modules.bound_engine import (
    Certified,
    ExactDiameter,
    IntervalDiameter,
    UpperBound,
    cantor_product_dimension,
    certified_bound,
    hausdorff_dimension,
    partial_estimation_bound,
    pow_upper,
    trivial_diameter_bound,
    verify_diameter,
)
from modules.cantor_grid import CoverageCount
from modules.errors import InvalidInputError
from modules.exact_geometry import Disk, Point, Region
from modules.precision import ceil_decimal, mpf_to_fraction

F = Fraction
S = cantor_product_dimension()
TOLERANCE = Decimal("5e-5")


def _near(value, expected, tolerance=TOLERANCE):
    return abs(ceil_decimal(mp.mpf(value), 9) - Decimal(expected)) <= tolerance


# --- Dimension ---

def test_dimension_of_cantor_dust():
    assert abs(float(S) - math.log(4) / math.log(3)) < 1e-15
    assert S.fractional_bits >= 128


def test_dimension_fixed_point():
    assert abs(4 * mp.power(mp.mpf(1) / 3, S.value) - 1) <= mp.mpf(2) ** -100


def test_rational_dimensions_are_exact():
    assert hausdorff_dimension(3, F(1, 3)).value == 1
    assert hausdorff_dimension(9, F(1, 3)).value == 2
    assert hausdorff_dimension(2, F(1, 4)).value == mp.mpf(1) / 2
    assert hausdorff_dimension(1, F(1, 5)).value == 0


def test_ratio_close_to_one_returns_promptly():
    started = time.perf_counter()
    dimension = hausdorff_dimension(2, F(99999, 100000))
    assert time.perf_counter() - started < 1.0
    assert math.isclose(float(dimension), math.log(2) / math.log(100000 / 99999), rel_tol=1e-9)


@pytest.mark.parametrize("branches, ratio", [(5, F(1, 4)), (4, F(2, 3)), (7, F(3, 10))])
def test_irrational_dimensions_are_enclosed(branches, ratio):
    dimension = hausdorff_dimension(branches, ratio)
    assert math.isclose(float(dimension), math.log(branches) / math.log(1 / ratio), rel_tol=1e-12)


def test_dimension_of_middle_third_set():
    assert abs(float(hausdorff_dimension(2, F(1, 3))) - 0.630929753571457) < 1e-14


@pytest.mark.parametrize("branches, ratio", [(4, F(1)), (4, F(0)), (4, F(3, 2)), (0, F(1, 3))])
def test_dimension_rejects_bad_inputs(branches, ratio):
    with pytest.raises(InvalidInputError):
        hausdorff_dimension(branches, ratio)


# --- Diameter values ---

@pytest.mark.parametrize("k, text", [(2, "√5/2"), (3, "√290/13"), (4, "√761/20"), (5, "√28802/121")])
def test_series_diameters_print_in_reduced_form(k, text):
    assert str(constructions.series_diameter(k)) == text


def test_exact_diameter_equality_uses_squares():
    assert ExactDiameter(F(1, 27), 1258) == ExactDiameter(F(1, 3), F(1258, 81))
    assert str(ExactDiameter(1, 4)) == "2"


def test_interval_diameter_needs_positive_ordered_ends():
    with pytest.raises(InvalidInputError):
        IntervalDiameter(mp.mpf(2), mp.mpf(1))
    with pytest.raises(InvalidInputError):
        IntervalDiameter(mp.mpf(0), mp.mpf(1))


# --- Powers ---

def test_pow_upper_examples():
    assert _near(pow_upper(ExactDiameter(1, 2), S).value, "1.548563")
    assert pow_upper(ExactDiameter(1, 1), S).value == 1
    assert _near(pow_upper(ExactDiameter(F(1, 13), 290), S).value, "1.405918")


def test_pow_upper_rejects_zero_base():
    with pytest.raises(InvalidInputError):
        pow_upper(ExactDiameter(1, 0), S)


def test_pow_upper_is_sound_against_double_precision():
    rng = random.Random(1925)
    s = float(S)
    for _ in range(1000):
        diameter = ExactDiameter(F(rng.randint(1, 999), rng.randint(1, 999)), rng.randint(1, 5000))
        reference = math.pow(math.sqrt(float(diameter.radicand)) * float(diameter.scale), s)
        value = pow_upper(diameter, S).value
        # the double reference carries a few ulps of its own error
        assert value >= reference * (1 - 1e-15)
        assert (value - reference) / reference <= 1e-9


def test_pow_upper_uses_upper_end_of_interval():
    low = pow_upper(IntervalDiameter(mp.mpf("1.3"), mp.mpf("1.3")), S).value
    high = pow_upper(IntervalDiameter(mp.mpf("1.3"), mp.mpf("1.4")), S).value
    assert high > low


# --- Bounds ---

@pytest.mark.parametrize("fraction, diameter, expected", [
    (F(15, 16), ExactDiameter(F(1, 27), 1258), "1.504975"),
    (F(15331, 16384), ExactDiameter(F(1, 13), 290), "1.502483"),
    (F(30755, 32768), ExactDiameter(F(1, 27), 1258), "1.503263"),
    (F(29, 31), ExactDiameter(F(1, 26), 1160), "1.502878"),
])
def test_partial_estimation_examples(fraction, diameter, expected):
    assert _near(partial_estimation_bound(fraction, diameter, S).value, expected)


def test_correction_region_bound():
    diameter = constructions.build("correction-region").diameter
    assert _near(partial_estimation_bound(F(1925, 2048), diameter, S).value, "1.512163")


def test_trivial_bounds():
    assert _near(trivial_diameter_bound(ExactDiameter(1, 2), S).value, "1.548563")
    assert trivial_diameter_bound(ExactDiameter(1, 1), S).value == 1
    assert _near(trivial_diameter_bound(ExactDiameter(F(1, 2), 5), S).value, "1.151181")


@pytest.mark.parametrize("fraction", [F(0), F(-1, 2), F(17, 16)])
def test_partial_estimation_rejects_bad_fractions(fraction):
    with pytest.raises(InvalidInputError):
        partial_estimation_bound(fraction, ExactDiameter(1, 2), S)


def test_fraction_one_matches_trivial_bound():
    for diameter in (ExactDiameter(1, 2), ExactDiameter(F(1, 13), 290), ExactDiameter(F(7, 5), 3)):
        assert partial_estimation_bound(1, diameter, S).value == trivial_diameter_bound(diameter, S).value


def test_bound_is_monotone_in_fraction_and_diameter():
    diameter = ExactDiameter(F(1, 13), 290)
    fractions = [F(1, 4), F(1, 2), F(15, 16), F(1)]
    values = [partial_estimation_bound(f, diameter, S).value for f in fractions]
    assert values == sorted(values, reverse=True) and len(set(values)) == len(values)
    diameters = [ExactDiameter(1, r) for r in (1, 2, 3, 5)]
    values = [partial_estimation_bound(F(15, 16), d, S).value for d in diameters]
    assert values == sorted(values) and len(set(values)) == len(values)


def test_side_nine_diameter_normalizes_exactly():
    side9 = ExactDiameter(F(1, 3), 1258)
    unit = side9.scaled(F(1, 9))
    assert unit == ExactDiameter(F(1, 27), 1258)
    assert partial_estimation_bound(F(15, 16), unit, S).value == \
        partial_estimation_bound(F(15, 16), ExactDiameter(F(1, 27), 1258), S).value


def test_published_value_rounds_up():
    bound = UpperBound(mp.mpf("1.5024830000000001"))
    assert bound.published(6) == Decimal("1.502484")
    assert mpf_to_fraction(bound.value) <= F(bound.published())


def test_certified_bound_carries_its_count():
    count = CoverageCount(4, 64, 60, 4, 0)
    bound = certified_bound(count, ExactDiameter(F(1, 27), 1258))
    assert isinstance(bound.provenance, Certified)
    assert bound.provenance.coverage == count
    assert _near(bound.value, "1.504975")
    assert certified_bound(CoverageCount(2, 4, 0, 4, 0), ExactDiameter(1, 2)) is None


# --- Diameter verification ---

@pytest.mark.parametrize("name", constructions.catalog())
def test_catalog_diameters_verify(specs, name):
    spec = specs[name]
    report = verify_diameter(spec.region, spec.diameter, boundary_samples=4096)
    assert report.passed, report.diagnostic
    assert report.sample_count >= 4096
    assert report.area_estimate <= report.disk_area * 1.001


def test_octagon_vertex_pair_is_the_diameter(specs):
    spec = specs["octagon-fixed"]
    report = verify_diameter(spec.region, spec.diameter)
    assert abs(report.vertex_distance - spec.diameter.upper()) < mp.mpf(10) ** -30


def test_circle_series_diameter_is_nearly_attained(specs):
    spec = specs["circle-series"]
    report = verify_diameter(spec.region, spec.diameter)
    assert report.max_sampled_distance <= spec.diameter.upper()
    assert report.max_sampled_distance >= spec.diameter.upper() * (1 - mp.mpf("1e-5"))


def test_pure_disk_meets_isoperimetric_equality():
    r2 = F(1, 4)
    report = verify_diameter(Region((Disk(Point(F(1, 2), F(1, 2)), r2),)), ExactDiameter(2, r2))
    assert report.passed
    assert report.area_estimate == pytest.approx(math.pi / 4, rel=2e-3)


def test_understated_diameter_fails(specs):
    spec = specs["octagon-fixed"]
    report = verify_diameter(spec.region, ExactDiameter(F(1, 27), 1200))
    assert not report.passed
    assert "exceeds" in report.diagnostic


def test_verification_needs_enough_samples(specs):
    with pytest.raises(InvalidInputError):
        verify_diameter(specs["circle-big"].region, specs["circle-big"].diameter, boundary_samples=10)


def test_boundary_membership_rejects_negative_coordinates(specs):
    region = specs["circle-big"].region
    disk = len(region.primitives) - 1
    assert not boundary.others_contain(region, disk, mp.mpf("-0.1"), mp.mpf("0.5"))
    assert not boundary.others_contain(region, disk, mp.mpf("0.5"), mp.mpf("-0.78"))
    assert boundary.others_contain(region, disk, mp.mpf("0.1"), mp.mpf("0.5"))


def test_disk_wider_than_the_square_has_one_arc_per_corner(specs):
    pieces = boundary.boundary_pieces(specs["circle-big"].region)
    arcs = [piece for piece in pieces if isinstance(piece, boundary.ArcPiece)]
    assert len(arcs) == 4
    for arc in arcs:
        assert arc.theta_end - arc.theta_start < mp.pi / 2


def test_correction_region_samples_stay_in_the_root(specs):
    spec = specs["correction-region"]
    report = verify_diameter(spec.region, spec.diameter)
    for x, y in report.maximizing_pair:
        assert -1e-12 <= x <= 1 + 1e-12 and -1e-12 <= y <= 1 + 1e-12
