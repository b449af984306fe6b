from decimal import Decimal
from fractions import Fraction

import pytest
from mpmath import mp

from modules import constructions
from modules.bound_engine import ExactDiameter, IntervalDiameter, cantor_product_dimension, partial_estimation_bound
from modules.cantor_grid import count_coverage
from modules.data_loader import load_paper_fixtures
from modules.errors import InvalidInputError, UnknownConstructionError
from modules.exact_geometry import Disk, GridSquare, HalfPlane, Point, Region
from modules.precision import ceil_decimal

F = Fraction
S = cantor_product_dimension()


def test_catalog_names():
    names = constructions.catalog()
    assert set(names) == {
        "basic-interval", "octagon-fixed", "octagon-series",
        "circle-big", "circle-series", "correction-region",
    }
    assert "hexagon" not in names


def test_unknown_name_is_rejected():
    with pytest.raises(UnknownConstructionError):
        constructions.build("hexagon")
    with pytest.raises(UnknownConstructionError):
        constructions.paper_fixture("hexagon")


@pytest.mark.parametrize("name", constructions.catalog())
def test_every_region_sits_in_the_root(specs, name):
    spec = specs[name]
    assert spec.root == GridSquare(0, 0, 1)
    # the root's four half-planes are always present
    for plane in (HalfPlane(-1, 0, 0), HalfPlane(0, -1, 0), HalfPlane(1, 0, 1), HalfPlane(0, 1, 1)):
        assert plane in spec.region.primitives


def test_octagon_series_k3():
    spec = constructions.build("octagon-series", {"k": 3})
    assert HalfPlane.at_least(1, 1, F(1, 13)) in spec.region.primitives
    assert constructions.series_limit_fraction(3) == F(29, 31)
    assert str(spec.diameter) == "√290/13"


def test_octagon_series_k2():
    spec = constructions.build("octagon-series", {"k": 2})
    assert constructions.series_x(2) == F(1, 8)
    assert constructions.series_limit_fraction(2) == F(5, 7)
    assert str(spec.diameter) == "√5/2"


@pytest.mark.parametrize("k", [1, 0, "5/2"])
def test_octagon_series_rejects_small_or_fractional_k(k):
    with pytest.raises(InvalidInputError):
        constructions.build("octagon-series", {"k": k})


def test_k_one_explains_infeasibility():
    with pytest.raises(InvalidInputError, match="1/2 > 1/4"):
        constructions.build("octagon-series", {"k": 1})


def test_basic_interval_n2():
    spec = constructions.build("basic-interval", {"n": 2})
    assert HalfPlane(1, 0, F(1, 3)) in spec.region.primitives
    assert HalfPlane(0, 1, F(1, 3)) in spec.region.primitives
    assert spec.diameter == ExactDiameter(F(1, 3), 2)
    assert spec.recommended_level == 2


def test_unknown_parameter_is_rejected():
    with pytest.raises(InvalidInputError):
        constructions.build("circle-big", {"k": 3})


def test_disk_constructions():
    big = constructions.build("circle-big")
    assert any(isinstance(p, Disk) for p in big.region.primitives)
    assert big.diameter == ExactDiameter(F(1, 27), 1258)
    series = constructions.build("circle-series")
    assert series.region.primitives[-1].r2 == F(145, 338)
    assert str(series.diameter) == "√290/13"


def test_correction_region_diameter_encloses_c1c3(specs):
    diameter = specs["correction-region"].diameter
    assert isinstance(diameter, IntervalDiameter)
    assert diameter.lo <= diameter.hi
    assert diameter.hi - diameter.lo < mp.mpf("1e-20")
    assert abs(float(diameter.hi) - 1.32133) < 1e-5


# --- Fixtures ---

@pytest.mark.parametrize("name, params, fraction, expected", [
    ("basic-interval", None, F(1, 4), "1.548563"),
    ("octagon-fixed", None, F(15, 16), "1.504975"),
    ("octagon-series", {"k": 3}, F(29, 31), "1.502878"),
    ("circle-big", None, F(30755, 32768), "1.503263"),
    ("circle-series", None, F(15331, 16384), "1.502483"),
    ("correction-region", None, F(1925, 2048), "1.512163"),
])
def test_paper_fixtures(name, params, fraction, expected):
    fixture = constructions.paper_fixture(name, params)
    assert fixture.fraction == fraction
    assert fixture.expected_bound == Decimal(expected)


def test_series_fixture_k5():
    fixture = constructions.paper_fixture("octagon-series", {"k": 5})
    assert fixture.fraction == F(509, 511)
    assert fixture.expected_bound == Decimal("1.538520")
    assert fixture.tolerance == Decimal("2e-4")


def test_series_fixture_without_printed_row():
    with pytest.raises(InvalidInputError):
        constructions.paper_fixture("octagon-series", {"k": 7})


def test_basic_interval_fixture_for_other_levels():
    fixture = constructions.paper_fixture("basic-interval", {"n": 4})
    assert fixture.fraction == F(1, 64)
    bound = partial_estimation_bound(fixture.fraction, fixture.diameter, S)
    assert abs(ceil_decimal(bound.value, 9) - fixture.expected_bound) <= fixture.tolerance


@pytest.mark.parametrize("name", constructions.catalog())
def test_fixture_bound_reproduces(name):
    fixture = constructions.paper_fixture(name)
    bound = partial_estimation_bound(fixture.fraction, fixture.diameter, S)
    assert abs(ceil_decimal(bound.value, 9) - fixture.expected_bound) <= fixture.tolerance


def test_narrative_counts_are_kept():
    assert constructions.paper_fixture("correction-region").narrative == (8, 984)
    assert constructions.paper_fixture("circle-big").narrative == (10, 16104)
    assert constructions.paper_fixture("circle-series").narrative == (9, 4212)
    assert constructions.paper_fixture("octagon-fixed").narrative is None
    # the narrative counts restate the printed fractions
    assert 1 - F(984, 4 ** 7) == F(1925, 2048)
    assert 1 - F(16104, 4 ** 9) == F(30755, 32768)


def test_fixture_table_has_one_row_per_printed_bound():
    df = load_paper_fixtures()
    assert len(df) == 9
    assert set(df["Name"]) == set(constructions.catalog())


# --- Series oracle ---

@pytest.mark.parametrize("k", range(2, 7))
def test_series_oracle_converges_to_closed_form(k):
    assert abs(constructions.series_fraction_oracle(k, 20) - constructions.series_limit_fraction(k)) < F(1, 4 ** 20)


def test_series_oracle_single_term():
    assert constructions.series_fraction_oracle(4, 1) == F(63, 64)


@pytest.mark.parametrize("k, expected", [(2, F(5, 7)), (3, F(29, 31)), (4, F(125, 127)), (5, F(509, 511))])
def test_limit_fractions(k, expected):
    assert constructions.series_limit_fraction(k) == expected


def test_series_oracle_rejects_small_k():
    with pytest.raises(InvalidInputError):
        constructions.series_fraction_oracle(1, 5)


@pytest.mark.parametrize("k", [2, 3])
def test_certified_series_coverage_stays_below_limit(k):
    spec = constructions.build("octagon-series", {"k": k})
    previous = F(0)
    for n in range(1, 10):
        fraction = count_coverage(spec.root, spec.region, n).fraction
        assert previous <= fraction <= constructions.series_limit_fraction(k)
        previous = fraction


@pytest.mark.slow
def test_certified_series_coverage_stays_below_limit_to_level_twelve():
    spec = constructions.build("octagon-series", {"k": 3})
    for n in (10, 11, 12):
        assert count_coverage(spec.root, spec.region, n).fraction <= constructions.series_limit_fraction(3)


# --- Normalization ---

@pytest.mark.parametrize("name", ["circle-big", "correction-region"])
def test_side_nine_presentation_normalizes_to_catalog(specs, name):
    side9 = constructions.side9_cover(name)
    assert side9.root == GridSquare(0, 0, 9)
    normalized = constructions.normalize_cover(side9)
    assert normalized.root == constructions.UNIT_ROOT
    assert set(normalized.region.primitives) == set(specs[name].region.primitives)


def test_normalized_interval_diameter_encloses_catalog_value(specs):
    normalized = constructions.normalize_cover(constructions.side9_cover("correction-region"))
    catalog = specs["correction-region"].diameter
    assert normalized.diameter.lo <= catalog.hi and catalog.lo <= normalized.diameter.hi


def test_side_nine_needs_a_side_nine_form():
    with pytest.raises(InvalidInputError):
        constructions.side9_cover("octagon-fixed")


def test_translated_roots_are_normalized():
    spec = constructions.build("circle-series")
    moved = constructions.CoverSpec(
        spec.name,
        GridSquare(2, 3, 1),
        Region(tuple(
            HalfPlane(p.a, p.b, p.c + 2 * p.a + 3 * p.b) if isinstance(p, HalfPlane)
            else Disk(Point(p.center.x + 2, p.center.y + 3), p.r2)
            for p in spec.region.primitives
        )),
        spec.diameter,
        spec.recommended_level,
    )
    assert constructions.normalize_cover(moved).region == spec.region


def test_config_file_loads_normalized(specs):
    from modules.config import Config

    spec = constructions.cover_from_config(Config.DATA_DIR / "regions" / "circle_big_side9.json")
    assert spec.root == constructions.UNIT_ROOT
    assert set(spec.region.primitives) == set(specs["circle-big"].region.primitives)
    assert spec.diameter == specs["circle-big"].diameter
