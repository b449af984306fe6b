import os
from pathlib import Path

import pytest

from modules import constructions
from modules.cli import RunRecord


@pytest.fixture(scope="session")
def specs():
    """Every catalog construction with its default parameters."""
    return {name: constructions.build(name) for name in constructions.catalog()}


@pytest.fixture(scope="session")
def unit_root():
    return constructions.UNIT_ROOT


REGRESSION_DIR = Path(__file__).parent / "regression"


@pytest.fixture
def regression():
    """
    Compares a RunRecord with the one stored under tests/regression/. A
    missing record fails; set CANTOR_UPDATE_REGRESSION=1 to write it.
    """

    def check(name: str, record):
        path = REGRESSION_DIR / f"{name}.json"
        if os.environ.get("CANTOR_UPDATE_REGRESSION") == "1":
            REGRESSION_DIR.mkdir(exist_ok=True)
            path.write_text(record.to_json(), encoding="utf-8")
            return
        if not path.exists():
            pytest.fail(f"regression record {path.name} is missing; rerun with CANTOR_UPDATE_REGRESSION=1")
        stored = RunRecord.load(path)
        assert stored.command == record.command
        assert stored.inputs == record.inputs
        assert stored.outputs == record.outputs

    return check
