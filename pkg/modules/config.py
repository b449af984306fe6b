import os
from decimal import Decimal
from pathlib import Path


def _env_int(name, default):
    value = os.environ.get(name)
    return int(value) if value else default


class Config:
    # --- Precision ---
    # Mantissa bits for mpmath (both the real and the interval context).
    PRECISION_BITS = max(_env_int("CANTOR_PRECISION_BITS", 160), 136)
    PUBLISHED_PLACES = 9

    # --- Grid limits ---
    MAX_LEVEL = _env_int("CANTOR_MAX_LEVEL", 14)
    BRUTE_FORCE_CAP = _env_int("CANTOR_BRUTE_FORCE_CAP", 8)
    RENDER_MAX_LEVEL = 9

    # --- Comparison against printed values ---
    COMPARISON_TOLERANCE = Decimal("5e-5")
    SERIES_TOLERANCE = Decimal("2e-4")

    # --- Diameter verification ---
    SAMPLE_SEED = 1925
    AREA_GRID = 512
    ARC_SAMPLES = 4096
    DIAMETER_SLACK = Decimal("1e-9")
    AREA_SLACK = Decimal("1e-3")

    # --- Rendering ---
    ARC_CHORDS = 256

    # --- Paths ---
    DATA_DIR = Path(os.environ.get("CANTOR_DATA_DIR", Path(__file__).resolve().parent.parent / "data"))

    ENGINE_VERSION = "1.0.0"
