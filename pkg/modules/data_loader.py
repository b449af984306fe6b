import json
import logging
import os
from functools import lru_cache
from pathlib import Path
from typing import Tuple, Union

import pandas as pd

from modules.bound_engine import DiameterValue, ExactDiameter, IntervalDiameter
from modules.config import Config
from modules.errors import ConfigFormatError, InvalidInputError
from modules.exact_geometry import Disk, GridSquare, HalfPlane, Point, Region, as_rational

logger = logging.getLogger(__name__)


@lru_cache(maxsize=4)
def load_paper_fixtures(data_dir: str = None) -> pd.DataFrame:
    """
    Loads the printed fractions and bounds from `paper_fixtures.csv`.
    Every cell is read as text so that fractions stay exact.
    """
    path = os.path.join(data_dir or str(Config.DATA_DIR), "paper_fixtures.csv")
    try:
        df = pd.read_csv(path, dtype=str, keep_default_na=False)
    except FileNotFoundError as exc:
        raise ConfigFormatError(f"Missing fixture table: {path}") from exc

    # --- PREPROCESSING ---
    # 1. Clean column names by stripping whitespace
    df.columns = [col.strip() for col in df.columns]
    # 2. Strip every text cell
    df = df.apply(lambda column: column.str.strip())
    # 3. Drop rows where essential data is missing
    df = df.replace("", pd.NA).dropna(subset=["Name", "Fraction", "Expected Bound"])
    df = df.fillna("")

    logger.debug("Loaded %d paper fixtures from %s", len(df), path)
    return df.reset_index(drop=True)


# --- Region configs ---

def _field(obj: dict, key: str, where: str):
    if key not in obj:
        raise ConfigFormatError(f"Missing '{key}' in {where}")
    try:
        return as_rational(str(obj[key]))
    except InvalidInputError as exc:
        raise ConfigFormatError(f"Bad rational for '{key}' in {where}: {obj[key]!r}") from exc


def _parse_primitive(obj: dict, position: int):
    where = f"primitive #{position}"
    if not isinstance(obj, dict):
        raise ConfigFormatError(f"{where} must be a JSON object, got {obj!r}")
    kind = obj.get("kind")
    try:
        if kind == "disk":
            return Disk(Point(_field(obj, "cx", where), _field(obj, "cy", where)), _field(obj, "r2", where))
        if kind == "halfplane":
            a, b, c = (_field(obj, key, where) for key in ("a", "b", "c"))
            sense = obj.get("sense", "le")
            if sense == "le":
                return HalfPlane(a, b, c)
            if sense == "ge":
                return HalfPlane.at_least(a, b, c)
            raise ConfigFormatError(f"'sense' must be 'le' or 'ge' in {where}, got {sense!r}")
    except InvalidInputError as exc:
        raise ConfigFormatError(f"Invalid {where}: {exc}") from exc
    raise ConfigFormatError(f"Unknown primitive kind {kind!r} in {where}")


def _parse_diameter(obj: dict) -> DiameterValue:
    if not isinstance(obj, dict):
        raise ConfigFormatError(f"'diameter' must be a JSON object, got {obj!r}")
    kind = obj.get("kind")
    try:
        if kind == "sqrt":
            return ExactDiameter(_field(obj, "scale", "diameter"), _field(obj, "radicand", "diameter"))
        if kind == "interval":
            if "lo" not in obj or "hi" not in obj:
                raise ConfigFormatError("Interval diameter needs 'lo' and 'hi'")
            return IntervalDiameter.from_text(str(obj["lo"]), str(obj["hi"]))
    except ValueError as exc:
        raise ConfigFormatError(f"Invalid diameter: {exc}") from exc
    raise ConfigFormatError(f"Unknown diameter kind {kind!r}")


def parse_region_config(document: Union[str, dict]) -> Tuple[GridSquare, Region, DiameterValue]:
    """Parses a region config given as JSON text or an already-decoded dict."""
    if isinstance(document, str):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise ConfigFormatError(f"Region config is not valid JSON: {exc}") from exc
    if not isinstance(document, dict):
        raise ConfigFormatError("Region config must be a JSON object")

    root_obj = document.get("root", {"x0": "0", "y0": "0", "side": "1"})
    if not isinstance(root_obj, dict):
        raise ConfigFormatError(f"'root' must be a JSON object, got {root_obj!r}")
    try:
        root = GridSquare(
            _field(root_obj, "x0", "root"),
            _field(root_obj, "y0", "root"),
            _field(root_obj, "side", "root"),
        )
    except InvalidInputError as exc:
        raise ConfigFormatError(f"Invalid root square: {exc}") from exc

    primitives = document.get("primitives")
    if not isinstance(primitives, list) or not primitives:
        raise ConfigFormatError("Region config needs a non-empty 'primitives' list")
    region = Region(tuple(_parse_primitive(obj, i) for i, obj in enumerate(primitives)))

    if "diameter" not in document:
        raise ConfigFormatError("Region config needs a 'diameter'")
    return root, region, _parse_diameter(document["diameter"])


def read_region_config(path: Union[str, Path]) -> Tuple[GridSquare, Region, DiameterValue]:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise ConfigFormatError(f"Cannot read region config {path}: {exc}") from exc
    return parse_region_config(text)
