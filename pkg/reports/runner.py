"""
Task runner: executes the tasks of a SpecFile in order and collects records
"""

import time

from core.config import Budget, DEFAULT_CONFIG
from core.errors import RewriteCheckerError
from core.logging_setup import logger
from operations import (
    check_good_confluence, check_bad_elimination, check_termination,
    check_terminal, check_terminal_subcategory, equivalent, check_diagram,
    verify_monad_laws, verify_adjunction_laws, normalize_good,
)
from .report import Report, TaskRecord, ERROR_VERDICT


def default_maxlen(presentation, config=None):
    config = DEFAULT_CONFIG if config is None else config
    key = "maxlen_single" if len(presentation.gens) == 1 else "maxlen_multi"
    return config.get(key, DEFAULT_CONFIG[key])


def _pair_outcome(outcome):
    return {
        "pair": str(outcome.pair),
        "outcome": type(outcome).__name__,
    }


def _confluence(pres, task, budget, bounds):
    good = check_good_confluence(pres, budget)
    bad = check_bad_elimination(pres, budget)
    verdict = "Certified" if good.certified and bad.certified else "NotCertified"
    failures = [str(o.pair) for o in good.failures + bad.failures]
    details = {
        "termination": str(good.termination),
        "good_confluence": str(good),
        "bad_elimination": str(bad),
        "pairs": [_pair_outcome(o) for o in good.outcomes + bad.outcomes],
    }
    return verdict, failures or None, None, details


def _terminal(pres, task, budget, bounds):
    args = task.args
    universe = pres.universe(args["universe"])
    bound = bounds["override"]
    if bound is None:
        bound = args["maxlen"] if args["maxlen"] is not None else bounds["default"]
    if args["rules"]:
        report = check_terminal_subcategory(pres, args["candidate"], universe, args["rules"],
                                            bound, budget)
    else:
        report = check_terminal(pres, args["candidate"], universe, bound, budget)
    gaps = [{"string": str(r.string), "found": r.found, "uniqueness": r.uniqueness,
             "note": r.note} for r in report.gaps]
    details = {
        "max_len": bound,
        "strings": len(report.results),
        "basis": {k: str(v) for k, v in report.basis.items()},
        "existence": {str(r.string): str(r.existence) for r in report.results},
    }
    return report.verdict, gaps or None, None, details


def _equiv(pres, task, budget, bounds):
    left, right = task.args["left"], task.args["right"]
    verdict = equivalent(left, right, pres, budget)
    if verdict.is_equal:
        if not verdict.trace.replays(left, right, pres):
            logger.error(f"{task.name}: proof trace does not replay")
            raise RewriteCheckerError(f"{task.name}: proof trace does not replay")
        return "Equal", None, verdict.trace.describe(), {"moves": len(verdict.trace)}
    return "Unknown", verdict.diagnostics, None, {}


def _laws(pres, task, budget, bounds):
    args = task.args
    if args["structure"] == "monad":
        report = verify_monad_laws(pres, args["t"], args["mu"], args["eta"], budget)
    else:
        report = verify_adjunction_laws(pres, args["f"], args["g"], args["eta"], args["eps"],
                                        budget)
    traces = {name: v.trace.describe() for name, v in report.laws.items() if v.is_equal}
    failing = {name: v.diagnostics for name, v in report.laws.items() if not v.is_equal}
    details = {name: str(v) for name, v in report.laws.items()}
    return ("Equal" if report.holds else "Unknown"), failing or None, traces, details


def _diagram(pres, task, budget, bounds):
    result = check_diagram(task.args["diagram"], pres, budget)
    traces = {}
    failing = []
    for path, verdict in result.comparisons:
        route = " -> ".join([path[0][0]] + [v for _, v in path])
        if verdict.is_equal:
            traces[route] = verdict.trace.describe()
        else:
            failing.append({"path": route, "diagnostics": verdict.diagnostics})
    reference = " -> ".join([result.reference[0][0]] + [v for _, v in result.reference])
    details = {"reference": reference, "paths": len(result.comparisons) + 1}
    return ("Commutes" if result.commutes else "Unknown"), failing or None, traces, details


def _normalize(pres, task, budget, bounds):
    s = task.args["string"]
    termination = check_termination(pres)
    normal, d = normalize_good(s, pres)
    verdict = "Normalized" if termination.terminating else "NotCertified"
    return verdict, str(normal), str(d), {"steps": len(d), "termination": str(termination)}


HANDLERS = {
    "confluence": _confluence,
    "terminal": _terminal,
    "equiv": _equiv,
    "laws": _laws,
    "diagram": _diagram,
    "normalize": _normalize,
}


def run_task(pres, task, budget, bounds):
    """TaskRecord for one task; hard failures become Error records"""
    logger.info(f"Running task: {task.name}")
    start = time.perf_counter()
    try:
        verdict, witness, trace, details = HANDLERS[task.kind](pres, task, budget, bounds)
    except RewriteCheckerError as e:
        logger.error(f"Task {task.name} failed: {e}")
        verdict, witness, trace, details = ERROR_VERDICT, str(e), None, {
            "error": type(e).__name__}
    elapsed = int((time.perf_counter() - start) * 1000)
    logger.info(f"Task {task.name}: {verdict} ({elapsed} ms)")
    return TaskRecord(task.name, task.kind, verdict, witness, trace, budget.as_dict(),
                      elapsed, details)


def run(spec, budget=None, maxlen=None, config=None):
    """
    Execute every task of spec in order; returns (Report, exit code).
    A maxlen given here overrides the per-task maxlen of terminal checks.
    """
    budget = budget or Budget()
    pres = spec.presentation
    bounds = {"override": maxlen, "default": default_maxlen(pres, config)}
    report = Report(pres.name, budget=budget.as_dict())
    for task in spec.tasks:
        report.records.append(run_task(pres, task, budget, bounds))
    logger.info(f"Run of {pres.name} finished with exit code {report.exit_code}")
    return report, report.exit_code
