"""
Command line front end for the shift symmetry toolkit.
"""
from argparse import ArgumentParser, Namespace
from datetime import datetime
from typing import List, Optional

from .analysis import analyze
from .characters import enumerate_characters, separative_quotient
from .core import InvalidSemigroup, SemigroupError, StarSemigroup, validate
from .fuzz_runner import fuzz
from .manager_config import COMMANDS, PRESETS, Configuration
from .manager_debug import DebugManager as DBM, init_debug_manager
from .manager_environment import EnvironmentManager as EM
from .manager_file import FileManager as FM, ParseError, StaleMeasureError
from .example_suite import render_suite, run_suite
from .pdfun import full_measure, is_positive_definite, minus_measure, random_measure
from .report_formatter import (
    dumps,
    render_characters,
    render_components,
    render_quotient,
    render_report,
    render_violations,
    report_to_dict,
)
from .rkhs import NotPositiveDefinite
from .structure import archimedean_components

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INPUT_ERROR = 2


def build_parser() -> ArgumentParser:
    parser = ArgumentParser(prog="shift_symmetry", description="Shift operators on finite *-semigroups")
    parser.add_argument("command", choices=COMMANDS, help="What to run")
    parser.add_argument("paths", nargs="*", help="Input .sgp file")
    parser.add_argument("--u", help="Label of the shifting element")
    parser.add_argument("--measure", help="Measure file (atom <index> <weight> lines)")
    parser.add_argument("--phi", help="Function table file (value <label> <re> [<im>] lines)")
    parser.add_argument("--random", type=int, help="Add a random measure with this many atoms")
    parser.add_argument("--preset", choices=PRESETS, help="Add the minus-measure of u or the full uniform measure")
    parser.add_argument("--seed", type=int, help=f"Random seed (default {EM.SEED})")
    parser.add_argument("--trials", type=int, help=f"Measures per configuration (default {EM.TRIALS})")
    parser.add_argument("--generated", type=int, help="Fuzz this many generated instances instead of the catalog")
    parser.add_argument("--replay-dir", help="Directory for replay files of fuzz violations")
    parser.add_argument("--tol", type=float, help=f"Zero band tolerance (default {EM.TOLERANCE})")
    parser.add_argument("--json", action="store_true", help="Canonical JSON output")
    return parser


def config_from_args(args: Namespace) -> Configuration:
    config = Configuration()
    config.command = args.command
    config.paths = args.paths
    config.u = args.u
    config.measure = args.measure
    config.phi = args.phi
    config.random = args.random
    config.preset = args.preset
    if args.seed is not None:
        config.seed = args.seed
    if args.trials is not None:
        config.trials = args.trials
    config.generated = args.generated
    if args.tol is not None:
        config.tolerance = args.tol
    config.output = "json" if args.json else "text"
    return config


def load_validated(path: str) -> StarSemigroup:
    """
    :raises InvalidSemigroup: If the file parses but breaks a *-semigroup law.
    """
    semigroup = FM.read_semigroup(path)
    violations = validate(semigroup)
    if violations:
        raise InvalidSemigroup(f"{path}: {violations[0].describe(semigroup)}", violations)
    return semigroup


def cmd_validate(config: Configuration) -> int:
    semigroup = FM.read_semigroup(config.path)
    violations = validate(semigroup)
    if config.as_json:
        print(dumps({"valid": not violations, "violations": [v.describe(semigroup) for v in violations]}))
    else:
        print(render_violations(semigroup, violations))
    return EXIT_FAILED if violations else EXIT_OK


def cmd_characters(config: Configuration) -> int:
    semigroup = load_validated(config.path)
    print(render_characters(semigroup, enumerate_characters(semigroup), config.as_json))
    return EXIT_OK


def cmd_quotient(config: Configuration) -> int:
    print(render_quotient(separative_quotient(load_validated(config.path)), config.as_json))
    return EXIT_OK


def cmd_components(config: Configuration) -> int:
    print(render_components(archimedean_components(load_validated(config.path)), config.as_json))
    return EXIT_OK


def cmd_analyze(config: Configuration) -> int:
    semigroup = load_validated(config.path)
    if config.u is None:
        raise ValueError("analyze needs --u <label>")
    u = semigroup.index(config.u)

    measures = []
    if config.phi is not None:
        table = FM.read_function(config.phi, semigroup)
        check = is_positive_definite(semigroup, table, config.tolerance)
        if not check.positive:
            raise NotPositiveDefinite(f"{config.phi}: Gram matrix has eigenvalue {check.min_eigenvalue:.3e}",
                                      check.min_eigenvalue)
        measures.append(table)
    if config.measure is not None:
        measures.append(FM.read_measure(config.measure, semigroup))
    if config.random is not None:
        measures.append(random_measure(semigroup, config.random, config.seed))
    if config.preset == "minus":
        measures.append(minus_measure(semigroup, u))
    if config.preset == "full" or not measures:
        measures.append(full_measure(semigroup))

    report = analyze(semigroup, u, measures, name=config.path, tol=config.tolerance)
    print(dumps(report_to_dict(report)) if config.as_json else render_report(report))
    return EXIT_FAILED if report.violations() else EXIT_OK


def cmd_examples(config: Configuration) -> int:
    results = run_suite(config.seed)
    if config.as_json:
        print(dumps([r._asdict() for r in results]))
    else:
        print(render_suite(results))
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAILED


def cmd_fuzz(config: Configuration, replay_dir: Optional[str] = None) -> int:
    source = config.generated if config.generated is not None else "catalog"
    result = fuzz(source, config.trials, config.seed, replay_dir=replay_dir or EM.REPLAY_DIR)
    if config.as_json:
        print(dumps({"seed": result.seed, "trials": result.trials, "rows": result.rows}))
    else:
        print(result.table())
    return EXIT_FAILED if result.violation_count else EXIT_OK


def dispatch(config: Configuration, replay_dir: Optional[str] = None) -> int:
    """
    Run one command.

    :returns: 0 on success, 1 on failed assertions, 2 on input errors.
    """
    commands = {
        "validate": cmd_validate,
        "characters": cmd_characters,
        "quotient": cmd_quotient,
        "components": cmd_components,
        "analyze": cmd_analyze,
        "examples": cmd_examples,
    }
    try:
        if config.command == "fuzz":
            return cmd_fuzz(config, replay_dir)
        return commands[config.command](config)
    except (ParseError, SemigroupError, StaleMeasureError, OSError, ValueError) as error:
        print(f"Error: {DBM.handle_error(error, context=config.command)}")
        return EXIT_INPUT_ERROR


def main(argv: Optional[List[str]] = None) -> int:
    """
    Application main function.
    Initializes managers, parses the command line and runs the command.
    """
    EM.init()
    init_debug_manager()
    DBM.i("Managers initialized.")

    start_time = datetime.now()
    args = build_parser().parse_args(argv)
    try:
        config = config_from_args(args)
    except ValueError as error:
        print(f"Error: {DBM.handle_error(error, context='arguments')}")
        return EXIT_INPUT_ERROR

    code = dispatch(config, args.replay_dir)
    DBM.g("Command $command finished in $time", command=config.command, time=datetime.now() - start_time)
    return code
