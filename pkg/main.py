"""Command-line entrypoint: validate monoids, build nerves and Dold-Thom spaces, run verification suites."""
import argparse
import logging
import os
import sys
import time
from typing import List, Optional, Union

import config
from dold_thom import dold_thom_space
from exceptions import EngineError, ParseError
from homology import export_matrices, homology_of, normalized_chains
from interchange import load_simplicial_set, save_simplicial_set, write_simplicial_set
from models import FilteredPartialMonoid, MonoidKind, PartialMonoid, RunReport, SimplicialSet
from monoid_io import load_monoid, read_description, validation_report
from monoid_library import parse_monoid_tag
from nerve import classifying_space
from simplicial import point, sphere, validate_identities, wedge
from utils import log_exceptions, setup_logging, stable_digest
from verification import SUITES, run_suite

logger = logging.getLogger(__name__)

EXIT_PASS = 0
EXIT_CHECK_FAILED = 1
EXIT_INPUT_ERROR = 2


def resolve_monoid(source: str) -> Union[PartialMonoid, FilteredPartialMonoid]:
    """A description file path, or a library tag such as 'cyclic:2'."""
    if os.path.exists(source):
        return load_monoid(source)
    return parse_monoid_tag(source)


def parse_space_spec(spec: str, depth: int) -> SimplicialSet:
    """`sphere:n`, `point`, `wedge:<space>*k`, or the path of an interchange file."""
    if spec.startswith("wedge:"):
        inner, sep, copies = spec[len("wedge:"):].rpartition("*")
        if not sep or not copies.isdigit():
            raise ParseError(f"wedge spec must look like 'wedge:<space>*k', got '{spec}'")
        return wedge(parse_space_spec(inner, depth), int(copies))
    if spec.startswith("sphere:"):
        n = spec[len("sphere:"):]
        if not n.isdigit():
            raise ParseError(f"sphere dimension must be an integer, got '{spec}'")
        return sphere(int(n), depth)
    if spec == "point":
        return point(depth)
    if os.path.exists(spec):
        return load_simplicial_set(spec)
    raise ParseError(f"unknown space spec '{spec}'")


def _expected_list(text: Optional[str]) -> Optional[List[str]]:
    return None if text is None else [part.strip() for part in text.split(",")]


def _record_homology(report: RunReport, X: SimplicialSet, args: argparse.Namespace) -> None:
    result = homology_of(X, args.homology_through, reduced=args.reduced)
    report.outputs["homology"] = ", ".join(result.describe())
    report.outputs["level_sizes"] = " ".join(str(n) for n in X.level_sizes())
    expected = _expected_list(args.expect)
    if expected is not None:
        report.add("homology", expected, result.describe())


def _record_space(report: RunReport, X: SimplicialSet, args: argparse.Namespace) -> None:
    violations = validate_identities(X)
    report.add("simplicial-identities", [], [str(v) for v in violations[:10]])
    if args.interchange:
        save_simplicial_set(X, args.interchange)
        report.outputs["interchange"] = args.interchange
        # Written files must parse back to the same structure
        report.add("interchange-roundtrip", True, load_simplicial_set(args.interchange) == X)
    report.outputs["space_digest"] = stable_digest(write_simplicial_set(X))


def _monoid_hash(report: RunReport, source: str, M) -> None:
    report.input_hashes[source] = stable_digest(M.describe())


@log_exceptions
def cmd_validate(args: argparse.Namespace, report: RunReport) -> None:
    desc = read_description(args.monoid_file)
    with open(args.monoid_file, "r", encoding="utf-8") as f:
        report.input_hashes[args.monoid_file] = stable_digest(f.read())
    messages, monoid = validation_report(desc)
    report.add("axioms", [], messages)
    if monoid is not None:
        report.outputs["elements"] = " ".join(monoid.elements)
        kind = MonoidKind.FILTERED if isinstance(monoid, FilteredPartialMonoid) else MonoidKind.PARTIAL
        report.outputs["kind"] = kind.value


@log_exceptions
def cmd_nerve(args: argparse.Namespace, report: RunReport) -> None:
    M = resolve_monoid(args.monoid)
    if isinstance(M, FilteredPartialMonoid):
        M = M.union()
    _monoid_hash(report, args.monoid, M)
    depth = max(args.max_dim, args.homology_through + 1)
    B = classifying_space(M, depth)
    _record_space(report, B, args)
    _record_homology(report, B, args)


@log_exceptions
def cmd_dold_thom(args: argparse.Namespace, report: RunReport) -> None:
    M = resolve_monoid(args.monoid)
    _monoid_hash(report, args.monoid, M)
    depth = max(args.max_dim, args.homology_through + 1)
    X = parse_space_spec(args.space, depth)
    report.input_hashes[args.space] = stable_digest(write_simplicial_set(X))
    space = dold_thom_space(M, X, args.bound, min(depth, X.max_dim), args.level_cap)
    _record_space(report, space.space, args)
    _record_homology(report, space.space, args)


@log_exceptions
def cmd_verify(args: argparse.Namespace, report: RunReport) -> None:
    names = sorted(SUITES) if args.suite == "all" else [args.suite]
    for name in names:
        run_suite(name, report)


@log_exceptions
def cmd_export_matrices(args: argparse.Namespace, report: RunReport) -> None:
    X = parse_space_spec(args.space, args.homology_through + 1)
    report.input_hashes[args.space] = stable_digest(write_simplicial_set(X))
    C = normalized_chains(X, args.homology_through)
    paths = export_matrices(C, args.out_dir)
    report.outputs["matrices"] = " ".join(paths)
    report.outputs["basis_sizes"] = " ".join(str(n) for n in C.basis_sizes())


def _add_space_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--max-dim", type=int, default=None, help="materialization depth")
    p.add_argument("--homology-through", type=int, default=None)
    p.add_argument("--reduced", action="store_true", help="report reduced homology")
    p.add_argument("--expect", default=None, help="expected homology, e.g. 'Z,Z/2,0'")
    p.add_argument("--interchange", default=None, help="write the generated simplicial set here")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--output", default=None, help="write the JSON report to this path instead of stdout")
    parser.add_argument("--settings", default=None, help="settings file (default: settings.json)")
    parser.add_argument("--threads", type=int, default=None, help="worker threads for level-parallel work")
    parser.add_argument("--no-timing", action="store_true", help="omit timing from the report")
    parser.add_argument("--verbose", "-v", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a monoid description file against the axioms")
    p.add_argument("monoid_file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("nerve", help="build the classifying space BM")
    p.add_argument("monoid", help="description file or library tag (e.g. cyclic:2)")
    _add_space_options(p)
    p.set_defaults(func=cmd_nerve)

    p = sub.add_parser("dold-thom", help="build the Dold-Thom space M[X]")
    p.add_argument("monoid", help="description file or library tag")
    p.add_argument("space", help="sphere:n, point, wedge:<space>*k or an interchange file")
    p.add_argument("--bound", type=int, default=None, help="point bound n of M_n[X] (default: unbounded)")
    p.add_argument("--level-cap", type=int, default=None, help="last filtration level to admit")
    _add_space_options(p)
    p.set_defaults(func=cmd_dold_thom)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=sorted(SUITES) + ["all"])
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("export-matrices", help="write boundary matrices in triplet format")
    p.add_argument("space", help="sphere:n, point, wedge:<space>*k or an interchange file")
    p.add_argument("--homology-through", type=int, default=None)
    p.add_argument("--out-dir", default="matrices")
    p.set_defaults(func=cmd_export_matrices)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    args = build_parser().parse_args(argv)
    report = RunReport(command=["doldthom", *argv], engine_version=config.ENGINE_VERSION)
    start = time.perf_counter()
    status = EXIT_PASS
    try:
        config.apply_settings(config.load_settings(args.settings))
        if args.threads is not None:
            config.THREAD_COUNT = args.threads
        setup_logging(logging.DEBUG if args.verbose else config.LOG_LEVEL)
        if getattr(args, "max_dim", 0) is None:
            args.max_dim = config.DEFAULT_MAX_DIM
        if getattr(args, "homology_through", 0) is None:
            args.homology_through = config.DEFAULT_HOMOLOGY_THROUGH
        args.func(args, report)
        if not report.passed:
            status = EXIT_CHECK_FAILED
    except (EngineError, OSError) as e:
        report.error = str(e)
        status = EXIT_INPUT_ERROR
    except Exception as e:
        report.error = f"internal error: {e!r}"
        status = EXIT_INPUT_ERROR
    report.timing_seconds = time.perf_counter() - start

    text = report.to_json(include_timing=not args.no_timing)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as f:
            f.write(text + "\n")
        logger.info(f"Report written to {args.output}")
    else:
        print(text)
    return status


if __name__ == "__main__":
    raise SystemExit(main())
