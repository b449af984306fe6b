import json
from fractions import Fraction

import pytest

from modules.bound_engine import ExactDiameter, IntervalDiameter
from modules.config import Config
from modules.data_loader import load_paper_fixtures, parse_region_config, read_region_config
from modules.errors import ConfigFormatError
from modules.exact_geometry import Disk, GridSquare, HalfPlane, Point
from modules.precision import mpf_to_fraction

F = Fraction


def _document(**overrides):
    document = {
        "root": {"x0": "0", "y0": "0", "side": "1"},
        "primitives": [
            {"kind": "halfplane", "a": "1", "b": "1", "c": "1/2", "sense": "ge"},
            {"kind": "disk", "cx": "1/2", "cy": "1/2", "r2": "145/338"},
        ],
        "diameter": {"kind": "sqrt", "radicand": "290", "scale": "1/13"},
    }
    document.update(overrides)
    return document


def test_parses_primitives_and_diameter():
    root, region, diameter = parse_region_config(json.dumps(_document()))
    assert root == GridSquare(0, 0, 1)
    assert region.primitives == (HalfPlane.at_least(1, 1, F(1, 2)), Disk(Point(F(1, 2), F(1, 2)), F(145, 338)))
    assert diameter == ExactDiameter(F(1, 13), 290)


def test_ge_sense_is_stored_negated():
    _, region, _ = parse_region_config(_document())
    assert region.primitives[0] == HalfPlane(-1, -1, F(-1, 2))


def test_root_defaults_to_unit_square():
    document = _document()
    del document["root"]
    root, _, _ = parse_region_config(document)
    assert root == GridSquare(0, 0, 1)


def test_interval_diameter():
    _, _, diameter = parse_region_config(_document(diameter={"kind": "interval", "lo": "1.3213", "hi": "1.3214"}))
    assert isinstance(diameter, IntervalDiameter)
    assert mpf_to_fraction(diameter.lo) <= F("1.3213")
    assert mpf_to_fraction(diameter.hi) >= F("1.3214")


@pytest.mark.parametrize("document", [
    "{not json",
    "[1, 2]",
    _document(primitives=[]),
    _document(primitives=[{"kind": "ellipse"}]),
    _document(primitives=[{"kind": "halfplane", "a": "1", "b": "0", "c": "1", "sense": "lt"}]),
    _document(primitives=[{"kind": "disk", "cx": "1/2", "cy": "half", "r2": "1"}]),
    _document(primitives=[{"kind": "disk", "cx": "1/2", "cy": "1/2"}]),
    _document(primitives=[{"kind": "halfplane", "a": "0", "b": "0", "c": "1"}]),
    _document(diameter={"kind": "interval", "lo": "1.3"}),
    _document(diameter={"kind": "cube"}),
    _document(root={"x0": "0", "y0": "0", "side": "-1"}),
    _document(primitives=[1]),
    _document(primitives=["disk"]),
    _document(primitives="disk"),
    _document(primitives={"kind": "disk"}),
    _document(root="unit"),
    _document(diameter="1.3"),
    _document(diameter={"kind": "interval", "lo": "abc", "hi": "1.4"}),
])
def test_malformed_configs_are_rejected(document):
    if isinstance(document, dict):
        document = json.dumps(document)
    with pytest.raises(ConfigFormatError):
        parse_region_config(document)


def test_missing_diameter_is_rejected():
    document = _document()
    del document["diameter"]
    with pytest.raises(ConfigFormatError, match="diameter"):
        parse_region_config(document)


def test_reads_shipped_configs():
    root, region, diameter = read_region_config(Config.DATA_DIR / "regions" / "circle_big_side9.json")
    assert root.side == 9
    assert any(isinstance(p, Disk) for p in region.primitives)
    assert diameter == ExactDiameter(F(1, 3), 1258)


def test_missing_config_file(tmp_path):
    with pytest.raises(ConfigFormatError):
        read_region_config(tmp_path / "nowhere.json")


def test_fixture_table_cells_are_text():
    df = load_paper_fixtures()
    assert list(df.columns[:4]) == ["Name", "Param", "Fraction", "Expected Bound"]
    assert (df["Fraction"].str.contains("/")).all()
    assert df.loc[df["Name"] == "octagon-fixed", "Expected Bound"].iloc[0] == "1.504975"


def test_missing_fixture_table(tmp_path):
    with pytest.raises(ConfigFormatError):
        load_paper_fixtures(str(tmp_path))
