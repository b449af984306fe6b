import logging
from decimal import Decimal
from fractions import Fraction
from typing import Iterable, List, Optional

import pandas as pd
from mpmath import mp

from modules import constructions
from modules.bound_engine import (
    Certified,
    UpperBound,
    cantor_product_dimension,
    certified_bound,
    partial_estimation_bound,
)
from modules.bound_engine import Fixture as FixtureProvenance
from modules.cantor_grid import count_coverage
from modules.config import Config
from modules.constructions import CoverSpec
from modules.optimizer import IntegerChoice, ObjectiveResult, SweepRow, f_octagon_series
from modules.precision import ceil_decimal, fraction_decimal

logger = logging.getLogger(__name__)

REPORT_COLUMNS = ["name", "fraction", "diameter", "paper_bound", "engine_bound", "diff", "pass"]
COVERAGE_COLUMNS = [
    "name", "level", "inside", "straddle", "outside", "total",
    "fraction", "fraction_decimal", "bound", "provenance",
]
SWEEP_COLUMNS = ["r2", "r2_decimal", "level", "inside", "straddle", "outside", "total", "fraction", "diameter", "bound"]
NARRATIVE_COLUMNS = ["name", "level", "narrative_uncovered", "certified_uncovered", "straddle", "outside", "excess"]


def _published(bound: Optional[UpperBound]) -> str:
    return "" if bound is None else str(bound.published())


def _provenance_label(bound: Optional[UpperBound]) -> str:
    if bound is None:
        return ""
    if isinstance(bound.provenance, Certified):
        return f"certified@{bound.provenance.coverage.level}"
    return f"fixture:{bound.provenance.name}"


def fixture_row(fixture: constructions.Fixture) -> dict:
    s = cantor_product_dimension()
    engine = partial_estimation_bound(
        fixture.fraction, fixture.diameter, s, provenance=FixtureProvenance(fixture.name)
    ).published()
    diff = abs(engine - fixture.expected_bound)
    return {
        "name": fixture.name,
        "fraction": str(fixture.fraction),
        "fraction_decimal": fraction_decimal(fixture.fraction),
        "diameter": str(fixture.diameter),
        "paper_bound": str(fixture.expected_bound),
        "engine_bound": str(engine),
        "diff": str(diff),
        "pass": bool(diff <= fixture.tolerance),
    }


def fixture_report(fixtures: Iterable[constructions.Fixture] = None) -> pd.DataFrame:
    """
    Reproduces every printed bound from its (fraction, diameter) pair.
    One row per catalog construction unless other fixtures are given.
    """
    fixtures = constructions.all_paper_fixtures() if fixtures is None else list(fixtures)
    df = pd.DataFrame([fixture_row(fixture) for fixture in fixtures])
    failed = df.loc[~df["pass"], "name"].tolist()
    if failed:
        logger.warning("Fixtures outside tolerance: %s", ", ".join(failed))
    return df[["name", "fraction", "fraction_decimal", "diameter", "paper_bound", "engine_bound", "diff", "pass"]]


def series_report(ks: Iterable[int] = (2, 3, 4, 5)) -> pd.DataFrame:
    """Printed octagon-series bounds against f(k) and against the closed-form fraction."""
    rows = []
    for k in ks:
        fixture = constructions.paper_fixture("octagon-series", {"k": k})
        limit = constructions.series_limit_fraction(k)
        value = ceil_decimal(f_octagon_series(k), Config.PUBLISHED_PLACES)
        diff = abs(value - fixture.expected_bound)
        rows.append({
            "k": k,
            "x": str(constructions.series_x(k)),
            "fraction": str(limit),
            "oracle_matches": bool(abs(constructions.series_fraction_oracle(k, 20) - limit) < Fraction(1, 4 ** 20)),
            "diameter": str(fixture.diameter),
            "paper_bound": str(fixture.expected_bound),
            "f_k": str(value),
            "diff": str(diff),
            "pass": bool(diff <= fixture.tolerance),
        })
    return pd.DataFrame(rows)


def coverage_row(spec: CoverSpec, level: int, workers: int = None) -> dict:
    coverage = count_coverage(spec.root, spec.region, level, workers=workers)
    bound = certified_bound(coverage, spec.diameter)
    return {
        "name": spec.name,
        "level": level,
        "inside": coverage.inside,
        "straddle": coverage.straddle,
        "outside": coverage.outside,
        "total": coverage.total,
        "fraction": str(coverage.fraction),
        "fraction_decimal": fraction_decimal(coverage.fraction),
        "bound": _published(bound),
        "provenance": _provenance_label(bound),
    }


def coverage_table(specs: Iterable[CoverSpec], level: int = None, workers: int = None) -> pd.DataFrame:
    """Certified counts, each construction at `level` or at its recommended level."""
    rows = [coverage_row(spec, level or spec.recommended_level, workers) for spec in specs]
    return pd.DataFrame(rows, columns=COVERAGE_COLUMNS)


def sweep_table(rows: List[SweepRow]) -> pd.DataFrame:
    records = []
    for row in rows:
        records.append({
            "r2": str(row.r2),
            "r2_decimal": fraction_decimal(row.r2),
            "level": row.coverage.level,
            "inside": row.coverage.inside,
            "straddle": row.coverage.straddle,
            "outside": row.coverage.outside,
            "total": row.coverage.total,
            "fraction": str(row.coverage.fraction),
            "diameter": str(row.diameter),
            "bound": _published(row.bound),
        })
    return pd.DataFrame(records, columns=SWEEP_COLUMNS)


def narrative_table(fixtures: Iterable[constructions.Fixture] = None, workers: int = None) -> pd.DataFrame:
    """
    The uncovered-square counts quoted next to some printed fractions, set
    against the certified count at the same level. Certified uncovered means
    straddling or outside; `excess` is how many more squares that is.
    """
    fixtures = constructions.all_paper_fixtures() if fixtures is None else list(fixtures)
    rows = []
    for fixture in fixtures:
        if fixture.narrative is None:
            continue
        level, quoted = fixture.narrative
        spec = constructions.build(fixture.name, fixture.params)
        coverage = count_coverage(spec.root, spec.region, level, workers=workers)
        uncovered = coverage.total - coverage.inside
        rows.append({
            "name": fixture.name,
            "level": level,
            "narrative_uncovered": quoted,
            "certified_uncovered": uncovered,
            "straddle": coverage.straddle,
            "outside": coverage.outside,
            "excess": uncovered - quoted,
        })
        if uncovered < quoted:
            logger.warning("%s: certified count leaves fewer squares uncovered than quoted (%d < %d)",
                           fixture.name, uncovered, quoted)
    return pd.DataFrame(rows, columns=NARRATIVE_COLUMNS)


def optimizer_table(result: ObjectiveResult, choice: IntegerChoice) -> pd.DataFrame:
    rows = [
        {"quantity": "k*", "value": mp.nstr(result.k, 15)},
        {"quantity": "f(k*)", "value": mp.nstr(result.value, 15)},
        {"quantity": "f''(k*)", "value": mp.nstr(result.second_derivative, 6)},
        {"quantity": "iterations", "value": str(result.iterations)},
        {"quantity": "best integer k", "value": str(choice.k)},
        {"quantity": "f(best integer k)", "value": mp.nstr(choice.bound, 15)},
        {"quantity": "unimodal", "value": str(result.unimodal)},
    ]
    for message in result.diagnostics:
        rows.append({"quantity": "diagnostic", "value": message})
    return pd.DataFrame(rows)


def summary_metrics(report: pd.DataFrame) -> dict:
    """Headline numbers for the report view."""
    engine = report["engine_bound"].map(Decimal)
    best = min(range(len(engine)), key=lambda i: engine.iloc[i])
    return {
        "passed": int(report["pass"].sum()),
        "total": len(report),
        "best_name": report["name"].iloc[best],
        "best_bound": str(engine.iloc[best]),
        "max_diff": str(max(report["diff"].map(Decimal))),
    }
