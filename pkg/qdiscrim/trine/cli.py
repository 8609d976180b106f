"""Command-line interface: ``qdiscrim-trine <command> [options]``.

Exit codes: 0 success, 2 invalid input, 3 infeasible optimization, 4 internal
invariant violation.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any

import numpy as np

from .adaptive import optimize_one_way, protocol_to_json, run_protocol, write_protocol
from .discriminate import (
    ENSEMBLES,
    MEASUREMENTS,
    PROTOCOLS,
    builtin_measurement,
    load_ensemble,
    load_measurement,
    load_protocol,
)
from .errors import InfeasibleOptimizationError, TrineError
from .measurement import (
    Povm,
    PovmClass,
    classify_povm,
    operators_from_json,
    povm_report,
    six_outcome_elements,
    write_povm,
)
from .measurement.constructions import SIX_OUTCOME_LABELS
from .optimizer import MODES, SEARCH_METHODS, PovmParameterization, maximize_mi
from .statistics import mutual_information, outcome_probabilities
from .utils import comparison_line, format_bits, report_information, report_povm

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INVALID_INPUT = 2
EXIT_INFEASIBLE = 3
EXIT_INVARIANT = 4

OUTPUT_FORMATS = ["table", "json", "csv"]
EXPORT_KINDS = ["povm", "candidate", "ensemble", "protocol"]


@dataclass(frozen=True)
class RunConfig:
    """Validated settings of one command-line run."""

    command: str
    ensemble: str = "double-trine"
    ensemble_file: Path | None = None
    measurement: str = "entangled"
    measurement_file: Path | None = None
    theta_deg: float = 45.0
    alpha: float = 2 / 3
    protocol: str = "trine-both"
    protocol_file: Path | None = None
    max_depth: int = 6
    mode: str = "global"
    M: int = 4
    restarts: int = 20
    budget: int = 2000
    seed: int | None = None
    warm_start: bool = True
    method: str = "powell"
    outcomes_first: int = 3
    outcomes_second: int = 3
    kind: str = "povm"
    output_format: str = "table"
    output: Path | None = None

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> RunConfig:
        fields = {k: v for k, v in vars(args).items() if k in cls.__dataclass_fields__}
        return cls(**fields)

    @property
    def theta(self) -> float:
        return float(np.radians(self.theta_deg))


def _number(text: str) -> float:
    """Float or exact fraction such as ``4/9``."""
    try:
        return float(Fraction(text))
    except (ValueError, ZeroDivisionError) as e:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from e


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be at least 1, got {value}")
    return value


def _emit_json(obj: Any, output: Path | None = None) -> None:
    text = json.dumps(obj, indent=2) + "\n"
    if output is None:
        sys.stdout.write(text)
    else:
        Path(output).write_text(text, encoding="utf-8")
        logger.info(f"Wrote {output}")


def _load_json(path: Path) -> Any:
    with Path(path).open(encoding="utf-8") as f:
        return json.load(f)


def cmd_mi(config: RunConfig) -> int:
    """Print ``p(k|j)`` and the mutual information of a measurement on an ensemble."""
    ensemble = load_ensemble(config.ensemble, config.ensemble_file)
    povm = load_measurement(
        config.measurement, config.measurement_file, config.theta, config.alpha
    )
    jd = outcome_probabilities(ensemble, povm)
    information = mutual_information(jd)
    if config.output_format == "json":
        _emit_json(
            {
                "ensemble": ensemble.to_json(),
                "measurement": povm.to_json(),
                "conditionals": jd.conditionals().tolist(),
                "I_bits": information,
            },
            config.output,
        )
    elif config.output_format == "csv":
        if config.output is None:
            sys.stdout.write(jd.to_csv())
        else:
            jd.to_csv(config.output)
        logger.info(f"I = {format_bits(information)} bits")
    else:
        source = config.measurement_file or config.measurement
        report_information(f"{source} on {config.ensemble_file or config.ensemble}", jd, information)
    return EXIT_OK


def cmd_validate(config: RunConfig) -> int:
    """Check positivity and completeness of a POVM file; exit 0 iff it is a POVM."""
    if config.measurement_file is not None:
        elements, labels = operators_from_json(_load_json(config.measurement_file))
    elif config.measurement == "six":
        elements, labels = six_outcome_elements(config.theta, config.alpha), SIX_OUTCOME_LABELS
    else:
        povm = builtin_measurement(config.measurement)
        elements, labels = povm.elements, povm.labels
    report = povm_report(elements)
    classification = None
    if report.valid and report.dim == 4:
        classification = classify_povm(Povm(elements, labels))
    if config.output_format == "json":
        _emit_json(
            {
                "valid": report.valid,
                "min_eigenvalues": report.min_eigenvalues,
                "defect_norm": report.defect_norm if report.n_elements else None,
                "problems": report.problems(),
                "classification": None if classification is None else classification.value,
            },
            config.output,
        )
    else:
        report_povm(report, labels)
        if classification is not None:
            print(f"classification: {classification.value}")
    return EXIT_OK if report.valid else EXIT_INVALID_INPUT


def cmd_optimize(config: RunConfig) -> int:
    """Search for the POVM of largest mutual information and save it."""
    ensemble = load_ensemble(config.ensemble, config.ensemble_file)
    param = PovmParameterization(config.mode, config.M, dim=ensemble.dim)
    result = maximize_mi(
        ensemble,
        param,
        restarts=config.restarts,
        iters=config.budget,
        seed=config.seed,
        warm_start=config.warm_start,
        method=config.method,
    )
    if not result.feasible:
        raise InfeasibleOptimizationError(
            f"no feasible POVM found (least completeness defect {result.defect:.3e})"
        )
    if config.output is not None:
        write_povm(result.povm, config.output)
        logger.info(f"Wrote POVM to {config.output}")
    if config.output_format == "json":
        _emit_json(result.to_json())
    else:
        classification = result.classification or PovmClass.INDETERMINATE
        print(f"mode = {result.mode}, M = {result.M}")
        print(f"I = {format_bits(result.information_bits)} bits")
        print(f"classification: {classification.value}")
    return EXIT_OK


def cmd_protocol(config: RunConfig) -> int:
    """Exact joint distribution and mutual information of a local protocol."""
    ensemble = load_ensemble(config.ensemble, config.ensemble_file)
    root = load_protocol(config.protocol, config.protocol_file)
    jd = run_protocol(ensemble, root, config.max_depth)
    information = mutual_information(jd)
    if config.output_format == "json":
        _emit_json(
            {"protocol": protocol_to_json(root), "conditionals": jd.conditionals().tolist(), "I_bits": information},
            config.output,
        )
    elif config.output_format == "csv":
        sys.stdout.write(jd.to_csv())
    else:
        report_information(f"protocol {config.protocol_file or config.protocol}", jd, information)
        print(comparison_line(information))
    return EXIT_OK


def cmd_export(config: RunConfig) -> int:
    """Write a builtin object as JSON: a POVM, a six-outcome candidate set, an ensemble or a protocol."""
    if config.kind == "povm":
        obj = load_measurement(config.measurement, None, config.theta, config.alpha).to_json()
    elif config.kind == "candidate":
        # possibly not a POVM: no validation
        obj = {
            "dim": 4,
            "elements": [el.to_json() for el in six_outcome_elements(config.theta, config.alpha)],
            "labels": SIX_OUTCOME_LABELS,
        }
    elif config.kind == "ensemble":
        obj = load_ensemble(config.ensemble).to_json()
    else:
        obj = protocol_to_json(load_protocol(config.protocol))
    _emit_json(obj, config.output)
    return EXIT_OK


def cmd_one_way(config: RunConfig) -> int:
    """Optimize a one-way local protocol and compare it with the entangled optimum."""
    ensemble = load_ensemble(config.ensemble, config.ensemble_file)
    result = optimize_one_way(
        ensemble,
        config.outcomes_first,
        config.outcomes_second,
        budget=config.budget,
        seed=config.seed,
        restarts=config.restarts,
    )
    if config.output is not None:
        write_protocol(result.protocol, config.output)
        logger.info(f"Wrote protocol to {config.output}")
    if config.output_format == "json":
        _emit_json(result.to_json())
    else:
        print(comparison_line(result.information_bits))
    return EXIT_OK


COMMANDS = {
    "mi": cmd_mi,
    "validate": cmd_validate,
    "optimize": cmd_optimize,
    "protocol": cmd_protocol,
    "export": cmd_export,
    "one-way": cmd_one_way,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qdiscrim-trine",
        description="Discrimination of the double-trine ensemble by entangled, unentangled and local measurements.",
    )
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument("-v", "--verbose", action="store_true", help="log debug messages")
    verbosity.add_argument("-q", "--quiet", action="store_true", help="log warnings only")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_ensemble(p):
        p.add_argument("--ensemble", choices=ENSEMBLES, default="double-trine")
        p.add_argument("--ensemble-file", type=Path, default=None)

    def add_measurement(p):
        p.add_argument("--measurement", choices=MEASUREMENTS, default="entangled")
        p.add_argument("--measurement-file", "--povm-file", type=Path, default=None)
        p.add_argument("--theta-deg", type=_number, default=45.0, help="six-outcome rotation angle")
        p.add_argument("--alpha", type=_number, default=2 / 3, help="six-outcome weight")

    def add_output(p, formats=OUTPUT_FORMATS):
        p.add_argument("--output-format", choices=formats, default="table")
        p.add_argument("--output", "-o", type=Path, default=None)

    p = sub.add_parser("mi", help="mutual information of a measurement")
    add_ensemble(p)
    add_measurement(p)
    add_output(p)

    p = sub.add_parser("validate", help="check that a set of operators is a POVM")
    add_measurement(p)
    add_output(p, ["table", "json"])

    p = sub.add_parser("optimize", help="numerical search for the best POVM")
    add_ensemble(p)
    p.add_argument("--mode", choices=MODES, default="global")
    p.add_argument("-M", type=_positive_int, default=4, help="number of outcomes")
    p.add_argument("--restarts", type=_positive_int, default=20)
    p.add_argument("--budget", "--iters", type=_positive_int, default=2000)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--no-warm-start", dest="warm_start", action="store_false")
    p.add_argument("--method", choices=SEARCH_METHODS, default="powell", help="local search of each restart")
    add_output(p, ["table", "json"])

    p = sub.add_parser("protocol", help="exact evaluation of a local protocol")
    add_ensemble(p)
    p.add_argument("--protocol", choices=PROTOCOLS, default="trine-both")
    p.add_argument("--protocol-file", type=Path, default=None)
    p.add_argument("--max-depth", type=_positive_int, default=6)
    add_output(p)

    p = sub.add_parser("export", help="write a builtin object as JSON")
    p.add_argument("kind", choices=EXPORT_KINDS)
    p.add_argument("--ensemble", choices=ENSEMBLES, default="double-trine")
    p.add_argument("--measurement", choices=MEASUREMENTS, default="entangled")
    p.add_argument("--theta-deg", type=_number, default=45.0)
    p.add_argument("--alpha", type=_number, default=2 / 3)
    p.add_argument("--protocol", choices=PROTOCOLS, default="trine-both")
    p.add_argument("--output", "-o", type=Path, default=None)

    p = sub.add_parser("one-way", help="optimize a one-way local protocol")
    add_ensemble(p)
    p.add_argument("--outcomes-first", type=_positive_int, default=3)
    p.add_argument("--outcomes-second", type=_positive_int, default=3)
    p.add_argument("--budget", type=_positive_int, default=200)
    p.add_argument("--restarts", type=_positive_int, default=4)
    p.add_argument("--seed", type=int, default=None)
    add_output(p, ["table", "json"])
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.verbose:
        logging.getLogger().setLevel(logging.DEBUG)
    elif args.quiet:
        logging.getLogger().setLevel(logging.WARNING)
    config = RunConfig.from_args(args)

    try:
        return COMMANDS[config.command](config)
    except json.JSONDecodeError as e:
        print(f"error: malformed JSON at line {e.lineno} column {e.colno}: {e.msg}", file=sys.stderr)
        return EXIT_INVALID_INPUT
    except InfeasibleOptimizationError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except (TrineError, ValueError, OSError) as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_INVALID_INPUT
    except AssertionError as e:
        print(f"internal invariant violated: {e}", file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
