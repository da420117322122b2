"""
Redex discovery, reduction strategies, termination and derivation search
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import networkx as nx

from core.config import Budget
from core.constants import NORMALIZE_STEP_LIMIT
from core.errors import TypingError
from core.logging_setup import logger
from presentation import Derivation, Step, classify


@dataclass(frozen=True)
class TerminationVerdict:
    terminating: bool
    offending: object = None

    def __str__(self):
        if self.terminating:
            return "Terminating"
        return f"NotTerminating: {self.offending.name} does not decrease the measure"


@dataclass(frozen=True)
class NotFound:
    """No derivation found; not a proof that none exists"""
    reason: str
    bound: dict

    def __str__(self):
        return f"NotFound ({self.reason}; {self.bound})"


def find_redexes(s, rules):
    """All steps with source s, ordered by position then by rule order"""
    steps = []
    n = len(s)
    for position in range(n + 1):
        for rule in rules:
            k = len(rule.lhs)
            if position + k > n:
                continue
            if k == 0:
                if s.cell_at(position) != rule.lhs.cod:
                    continue
            elif s.gens[position:position + k] != rule.lhs.gens:
                continue
            steps.append(Step(s.prefix(position), rule, s.suffix(position + k)))
    return steps


def apply_step(step):
    target = step.target
    assert (target.dom, target.cod) == (step.source.dom, step.source.cod), "step changed the hom"
    return target


def check_termination(presentation, rules=None):
    """Every good rule must strictly decrease (length, lex) under the precedence"""
    rules = presentation.good_rules if rules is None else [r for r in rules if not r.is_bad]
    for rule in rules:
        if not presentation.measure(rule.rhs) < presentation.measure(rule.lhs):
            logger.warning(f"{presentation.name}: rule {rule.name} does not decrease the measure")
            return TerminationVerdict(False, rule)
    return TerminationVerdict(True)


def normalize_good(s, presentation, strategy="leftmost", rules=None):
    """Rewrite with good rules until none applies; returns (normal form, derivation)"""
    rules = presentation.good_rules if rules is None else [r for r in rules if not r.is_bad]
    current = s
    steps = []
    while True:
        redexes = find_redexes(current, rules)
        if not redexes:
            break
        if len(steps) >= NORMALIZE_STEP_LIMIT:
            logger.warning(f"normalize_good gave up after {len(steps)} steps from {s}")
            break
        step = redexes[0] if strategy == "leftmost" else _rightmost(redexes)
        steps.append(step)
        current = apply_step(step)
    return current, Derivation(s, tuple(steps))


def _rightmost(redexes):
    last = max(step.position for step in redexes)
    return next(step for step in redexes if step.position == last)


def good_reachable(s, presentation, rules=None):
    """Every string reachable from s by good steps (s included)"""
    rules = presentation.good_rules if rules is None else rules
    seen = {s}
    queue = deque([s])
    while queue:
        for step in find_redexes(queue.popleft(), rules):
            if step.target not in seen:
                seen.add(step.target)
                queue.append(step.target)
    return seen


def good_derivations(s, presentation, limit=100000):
    """All maximal good derivations from s (exhaustive, small inputs only)"""
    rules = presentation.good_rules
    found = []

    def extend(current, steps):
        if len(found) >= limit:
            return
        redexes = find_redexes(current, rules)
        if not redexes:
            found.append(Derivation(s, tuple(steps)))
            return
        for step in redexes:
            extend(step.target, steps + [step])

    extend(s, [])
    if len(found) >= limit:
        logger.warning(f"good_derivations from {s} truncated at {limit}")
    return found


def find_derivation(s, target, presentation, budget=None, rules=None):
    """
    Derivation s => target, or NotFound.

    Normalizes with good rules, inserts missing generators with unit rules
    right to left, normalizes again; falls back to breadth-first search over
    all rules bounded by string length and depth.
    """
    if (s.dom, s.cod) != (target.dom, target.cod):
        raise TypingError(f"{s} and {target} lie in different homs")
    budget = budget or Budget()
    rules = presentation.base_rules if rules is None else list(rules)
    good = [r for r in rules if not r.is_bad]
    if check_termination(presentation, good).terminating:
        normal, head = normalize_good(s, presentation, rules=good)
        if normal == target:
            return head
        tail = _insert_missing(normal, target, rules)
        if tail is not None:
            joined = head.then(tail)
            final, rest = normalize_good(joined.target, presentation, rules=good)
            if final == target:
                return joined.then(rest)
    logger.debug(f"find_derivation {s} => {target}: falling back to bounded search")
    return _bounded_search(s, target, rules, budget)


def _insert_missing(normal, target, rules):
    """Insert the generators of target missing from normal, right to left"""
    matched = []
    j = 0
    for gen in normal.gens:
        while j < len(target) and target.gens[j] != gen:
            j += 1
        if j == len(target):
            return None
        matched.append(j)
        j += 1
    units = {r.rhs.gens[0]: r for r in rules if r.is_bad and len(r.lhs) == 0 and len(r.rhs) == 1}
    current = normal
    steps = []
    for j in reversed([i for i in range(len(target)) if i not in matched]):
        rule = units.get(target.gens[j])
        if rule is None:
            return None
        position = sum(1 for i in matched if i < j)
        try:
            step = Step.at(current, position, rule)
        except TypingError:
            return None
        steps.append(step)
        current = step.target
    return Derivation(normal, tuple(steps))


def _bounded_search(s, target, rules, budget):
    max_len = max(len(s), len(target)) + budget.length_slack
    parents = {s: None}
    frontier = [s]
    for depth in range(budget.search_depth):
        next_frontier = []
        for current in frontier:
            for step in find_redexes(current, rules):
                nxt = step.target
                if len(nxt) > max_len or nxt in parents:
                    continue
                parents[nxt] = step
                if nxt == target:
                    return _rebuild(s, target, parents)
                if len(parents) >= budget.nodes:
                    return NotFound("node budget exhausted", {"nodes": budget.nodes})
                next_frontier.append(nxt)
        if not next_frontier:
            return NotFound("search space exhausted", {"max_len": max_len, "depth": depth + 1})
        frontier = next_frontier
    return NotFound("depth budget exhausted", {"max_len": max_len, "depth": budget.search_depth})


def _rebuild(s, target, parents):
    steps = []
    current = target
    while parents[current] is not None:
        step = parents[current]
        steps.append(step)
        current = step.source
    return Derivation(s, tuple(reversed(steps)))


def enumerate_strings(presentation, universe, max_len):
    """Members of the universe up to max_len, ordered by (length, lex)"""
    return [presentation.validate_string(word, universe.base)
            for word in universe.words(max_len, presentation.gens)]


def reduction_graph(s, rules, max_len=None):
    """Multigraph of every string reachable from s; one edge per step"""
    graph = nx.MultiDiGraph()
    graph.add_node(s)
    queue = deque([s])
    while queue:
        current = queue.popleft()
        for step in find_redexes(current, rules):
            nxt = step.target
            if max_len is not None and len(nxt) > max_len:
                continue
            if nxt not in graph:
                graph.add_node(nxt)
                queue.append(nxt)
            graph.add_edge(current, nxt, key=str(step), rule=step.rule.name, step=step)
    return graph


__all__ = [
    'TerminationVerdict', 'NotFound', 'find_redexes', 'apply_step', 'classify',
    'check_termination', 'normalize_good', 'good_reachable', 'good_derivations',
    'find_derivation', 'enumerate_strings', 'reduction_graph',
]
