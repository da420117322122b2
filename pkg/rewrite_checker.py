#!/usr/bin/env python3
"""
Rewrite Checker - confluence, derivation equivalence and terminality
for finitely presented 2-categories viewed as typed string-rewriting systems
"""

import argparse
import logging
import sys

from core import (
    logger, set_console_level, load_config, budget_from_config, VERSION,
    RewriteCheckerError, SpecParseError, EXIT_HARD_FAILURE, EXIT_PARSE_ERROR,
    PRESET_NAMES,
)
from operations import reduction_graph
from parsers import parse_spec_file
from presentation.presets import preset_spec
from reports import run, save_report, export_dot, format_report


def build_parser():
    parser = argparse.ArgumentParser(
        prog="rewrite_checker",
        description="Check confluence, derivation equivalence and terminality of rewrite categories")
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument("spec", nargs="?", help="spec file to check")
    source.add_argument("--preset", choices=PRESET_NAMES, help="run a built-in preset")
    parser.add_argument("--maxlen", type=int, help="string length bound for terminality checks")
    parser.add_argument("--depth", type=int, help="equation search depth per side")
    parser.add_argument("--nodes", type=int, help="node limit of the congruence search")
    parser.add_argument("--json", metavar="PATH", help="write the JSON report to PATH")
    parser.add_argument("--dot", metavar="PATH", help="write diagrams and reduction graphs as DOT")
    parser.add_argument("--timings", action="store_true",
                        help="keep per-task elapsed_ms in the JSON report")
    parser.add_argument("--verbose", action="store_true", help="show debug output")
    parser.add_argument("--quiet", action="store_true", help="only show warnings and errors")
    parser.add_argument("--version", action="version", version=f"%(prog)s {VERSION}")
    return parser


def write_dot(spec, path):
    """Every diagram task, plus the good reduction graph of every normalize task"""
    pres = spec.presentation
    parts = []
    for task in spec.tasks:
        if task.kind == "diagram":
            parts.append(export_dot(task.args["diagram"], task.args["diagram"].name))
        elif task.kind == "normalize":
            graph = reduction_graph(task.args["string"], pres.good_rules)
            parts.append(export_dot(graph, task.name))
    with open(path, "w", encoding="utf-8") as f:
        f.write("".join(parts))
    logger.info(f"Wrote {len(parts)} graph(s) to {path}")


def main(argv=None):
    args = build_parser().parse_args(argv)
    if args.verbose:
        set_console_level(logging.DEBUG)
    elif args.quiet:
        set_console_level(logging.WARNING)

    config = load_config()
    budget = budget_from_config(config, nodes=args.nodes, depth=args.depth)

    try:
        spec = preset_spec(args.preset) if args.preset else parse_spec_file(args.spec)
    except SpecParseError as e:
        logger.error(f"Parse error: {e}")
        return EXIT_PARSE_ERROR
    except RewriteCheckerError as e:
        logger.error(f"Invalid spec: {e}")
        return EXIT_HARD_FAILURE

    report, code = run(spec, budget, args.maxlen, config)
    print(format_report(report))
    try:
        if args.json:
            report.timings = args.timings
            save_report(report, args.json)
        if args.dot:
            write_dot(spec, args.dot)
    except OSError:
        return EXIT_HARD_FAILURE
    return code


if __name__ == "__main__":
    sys.exit(main())
