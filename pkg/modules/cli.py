"""
Command-line surface:

    python -m modules.cli report   [--format table|csv|json] [--series | --narrative]
    python -m modules.cli coverage --construction NAME [--param k=3] [--level N] [--workers W]
    python -m modules.cli coverage --config region.json --level N
    python -m modules.cli render   --construction NAME --level N --out fig.svg
    python -m modules.cli optimize [--lo 2 --hi 8 --tol 1e-9]
    python -m modules.cli sweep    --center 1/2,1/2 --r2 145/338 [--r2 ...] --level N

Exit status: 0 on success, 1 on a usage error, 2 when a numerical check fails.
"""
import argparse
import hashlib
import json
import logging
import sys
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Dict, List, Optional

import pandas as pd

from modules import calculations, constructions
from modules.bound_engine import verify_diameter
from modules.config import Config
from modules.errors import (
    ConfigFormatError,
    InvalidInputError,
    LevelCapError,
    UnknownConstructionError,
    VerificationFailure,
)
from modules.exact_geometry import Point, as_rational
from modules.optimizer import best_integer_k, minimize_octagon_series, sweep_disk_radius
from modules.svg_render import write_svg

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NUMERICAL = 2

USAGE_ERRORS = (InvalidInputError, UnknownConstructionError, LevelCapError, ConfigFormatError)


@dataclass(frozen=True)
class RunRecord:
    command: str
    inputs: str
    outputs: List[Dict]
    engine_version: str
    timestamp: str

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, sort_keys=True, ensure_ascii=False) + "\n"

    @classmethod
    def load(cls, path) -> "RunRecord":
        return cls(**json.loads(Path(path).read_text(encoding="utf-8")))


def canonical_inputs(args: argparse.Namespace) -> str:
    skip = {"handler", "record", "verbose", "format", "out"}
    payload = {key: value for key, value in vars(args).items() if key not in skip}
    return json.dumps(payload, sort_keys=True, default=str)


def make_run_record(command: str, inputs: str, table: pd.DataFrame) -> RunRecord:
    return RunRecord(
        command=command,
        inputs=inputs,
        outputs=json.loads(table.to_json(orient="records")),
        engine_version=Config.ENGINE_VERSION,
        timestamp=pd.Timestamp.now(tz="UTC").isoformat(),
    )


def write_run_record(directory, record: RunRecord) -> Path:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    digest = hashlib.sha1(record.inputs.encode("utf-8")).hexdigest()[:10]
    path = directory / f"{record.command}-{digest}.json"
    path.write_text(record.to_json(), encoding="utf-8")
    logger.debug("Run record written to %s", path)
    return path


def render_table(table: pd.DataFrame, fmt: str, json_columns: Optional[List[str]] = None) -> str:
    if fmt == "csv":
        return table.to_csv(index=False, lineterminator="\n")
    if fmt == "json":
        columns = json_columns or list(table.columns)
        return json.dumps(json.loads(table[columns].to_json(orient="records")), indent=2, ensure_ascii=False) + "\n"
    return table.to_string(index=False) + "\n"


# --- Argument helpers ---

def _parse_params(items: Optional[List[str]]) -> Dict[str, str]:
    params = {}
    for item in items or []:
        key, sep, value = item.partition("=")
        if not sep or not key.strip() or not value.strip():
            raise InvalidInputError(f"--param expects name=value, got {item!r}")
        params[key.strip()] = value.strip()
    return params


def _parse_center(text: str) -> Point:
    parts = text.split(",")
    if len(parts) != 2:
        raise InvalidInputError(f"--center expects x,y, got {text!r}")
    return Point(as_rational(parts[0].strip()), as_rational(parts[1].strip()))


def _parse_r2(items: List[str]) -> list:
    values = []
    for item in items or []:
        values.extend(as_rational(part.strip()) for part in item.split(",") if part.strip())
    return values


def _cover_spec(args) -> constructions.CoverSpec:
    if args.config:
        spec = constructions.cover_from_config(args.config)
        report = verify_diameter(spec.region, spec.diameter)
        if not report.passed:
            raise VerificationFailure(f"Claimed diameter of {args.config} failed verification: {report.diagnostic}")
        return spec
    if not args.construction:
        raise InvalidInputError("Give --construction NAME or --config PATH")
    spec = constructions.build(args.construction, _parse_params(args.param))
    if getattr(args, "verify", False):
        report = verify_diameter(spec.region, spec.diameter)
        if not report.passed:
            raise VerificationFailure(f"Diameter of {spec.name} failed verification: {report.diagnostic}")
    return spec


# --- Commands ---

def cmd_report(args) -> int:
    if args.narrative:
        table = calculations.narrative_table(workers=args.workers)
        sys.stdout.write(render_table(table, args.format))
        _record(args, "report", table)
        return EXIT_OK
    if args.series:
        table = calculations.series_report()
        json_columns = None
    else:
        table = calculations.fixture_report()
        json_columns = calculations.REPORT_COLUMNS
    sys.stdout.write(render_table(table, args.format, json_columns))
    _record(args, "report", table)
    return EXIT_OK if bool(table["pass"].all()) else EXIT_NUMERICAL


def cmd_coverage(args) -> int:
    spec = _cover_spec(args)
    level = args.level or spec.recommended_level
    table = pd.DataFrame([calculations.coverage_row(spec, level, args.workers)], columns=calculations.COVERAGE_COLUMNS)
    sys.stdout.write(render_table(table, args.format))
    _record(args, "coverage", table)
    return EXIT_OK


def cmd_render(args) -> int:
    spec = _cover_spec(args)
    level = args.level or min(spec.recommended_level, Config.RENDER_MAX_LEVEL)
    path = write_svg(spec, level, args.out)
    logger.info("Wrote %s", path)
    return EXIT_OK


def cmd_optimize(args) -> int:
    result = minimize_octagon_series(args.lo, args.hi, args.tol)
    choice = best_integer_k(args.k_min, args.k_max)
    table = calculations.optimizer_table(result, choice)
    sys.stdout.write(render_table(table, args.format))
    _record(args, "optimize", table)
    return EXIT_OK


def cmd_sweep(args) -> int:
    rows = sweep_disk_radius(_parse_center(args.center), _parse_r2(args.r2), args.level, workers=args.workers)
    table = calculations.sweep_table(rows)
    sys.stdout.write(render_table(table, args.format))
    _record(args, "sweep", table)
    return EXIT_OK


def _record(args, command: str, table: pd.DataFrame):
    if args.record:
        write_run_record(args.record, make_run_record(command, canonical_inputs(args), table))


# --- Parser ---

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("table", "csv", "json"), default="table")
    common.add_argument("--record", metavar="DIR", help="write a RunRecord JSON into DIR")
    common.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")

    region = argparse.ArgumentParser(add_help=False)
    region.add_argument("--construction", choices=constructions.catalog())
    region.add_argument("--config", metavar="PATH", help="JSON region config instead of a catalog name")
    region.add_argument("--param", action="append", metavar="NAME=VALUE", help="construction parameter, e.g. k=3")
    region.add_argument("--level", type=int)
    region.add_argument("--verify", action="store_true", help="check the claimed diameter before counting")

    parser = _Parser(prog="cantor-bounds", description="Certified upper bounds for the Hausdorff measure of C x C.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    report = sub.add_parser("report", parents=[common], help="reproduce the printed bounds")
    kind = report.add_mutually_exclusive_group()
    kind.add_argument("--series", action="store_true", help="octagon-series rows k = 2..5 instead")
    kind.add_argument("--narrative", action="store_true", help="quoted uncovered counts against certified ones")
    report.add_argument("--workers", type=int, default=None)
    report.set_defaults(handler=cmd_report)

    coverage = sub.add_parser("coverage", parents=[common, region], help="certified coverage count and bound")
    coverage.add_argument("--workers", type=int, default=None)
    coverage.set_defaults(handler=cmd_coverage)

    render = sub.add_parser("render", parents=[common, region], help="SVG figure of a construction")
    render.add_argument("--out", required=True)
    render.set_defaults(handler=cmd_render)

    optimize = sub.add_parser("optimize", parents=[common], help="minimize f(k) over the octagon series")
    optimize.add_argument("--lo", type=float, default=2.0)
    optimize.add_argument("--hi", type=float, default=8.0)
    optimize.add_argument("--tol", type=float, default=1e-9)
    optimize.add_argument("--k-min", type=int, default=2)
    optimize.add_argument("--k-max", type=int, default=5)
    optimize.set_defaults(handler=cmd_optimize)

    sweep = sub.add_parser("sweep", parents=[common], help="certified bounds over disk radii")
    sweep.add_argument("--center", default="1/2,1/2")
    sweep.add_argument("--r2", action="append", required=True, help="r^2 values, comma separated or repeated")
    sweep.add_argument("--level", type=int, required=True)
    sweep.add_argument("--workers", type=int, default=None)
    sweep.set_defaults(handler=cmd_sweep)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        return args.handler(args)
    except USAGE_ERRORS as exc:
        logger.error("%s", exc)
        return EXIT_USAGE
    except VerificationFailure as exc:
        logger.error("%s", exc)
        return EXIT_NUMERICAL
    except OSError as exc:
        logger.error("Cannot write output: %s", exc)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
