"""
Equality of parallel derivations

Both derivations are brought to a normal shape (derived steps expanded,
lengthening steps pushed after shortening ones, independent steps sorted)
and compared. When the shapes differ, the engine tries the confluence
certificates (a Newman-style join for good-only derivations) and finally a
bounded bidirectional search over exchanges and whiskered equation
instances. Every Equal verdict carries a ProofTrace that replays the first
derivation into the second.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import networkx as nx

from core.config import Budget
from core.errors import TypingError, NotDisjointError
from core.logging_setup import logger
from presentation import Derivation, Step, intervals_overlap
from .moves import (
    Exchange, EquationInstance, ExpandDerived, ProofTrace,
    exchange_pair, exchange_adjacent, b_left_of_a, match_whiskered, invert_moves,
)
from .rewrite import find_redexes, normalize_good, check_termination


@dataclass(frozen=True)
class Equal:
    trace: ProofTrace

    is_equal = True

    def __str__(self):
        return f"Equal ({len(self.trace)} moves)"


@dataclass(frozen=True)
class Unknown:
    diagnostics: dict = field(default_factory=dict)

    is_equal = False

    def __str__(self):
        return f"Unknown ({self.diagnostics.get('reason', 'no proof found')})"


def whisker(d, left, right):
    """left . d . right; TypingError when the contexts do not fit"""
    return d.whiskered(left, right)


def _sorted_pair(x, y):
    """x;y already in canonical order (y does not act left of x's output)"""
    if intervals_overlap(x.output, y.redex):
        return True
    return not b_left_of_a(x, y)


def _canonical_moves(d, start=0, stop=None):
    """Bubble-sort steps[start:stop] by position; returns (derivation, moves)"""
    stop = len(d.steps) if stop is None else stop
    moves = []
    limit = (stop - start) ** 2 + 5
    for _ in range(limit):
        swapped = False
        for i in range(start, stop - 1):
            x, y = d.steps[i], d.steps[i + 1]
            if _sorted_pair(x, y):
                continue
            pair = exchange_pair(x, y)
            if pair is None:
                continue
            d = d.replace(i, i + 2, pair)
            moves.append(Exchange(i))
            swapped = True
        if not swapped:
            return d, moves
    logger.warning(f"canonical_exchange_form: pass limit reached on {len(d.steps)}-step derivation")
    return d, moves


def canonical_exchange_form(d):
    """Representative of d's class under exchanges alone"""
    return _canonical_moves(d)[0]


def _expand_moves(d):
    moves = []
    while True:
        index = next((i for i, s in enumerate(d.steps) if s.rule.is_derived), None)
        if index is None:
            return d, moves
        move = ExpandDerived(index, d.steps[index].rule.name)
        d = move.apply(d, None)
        moves.append(move)


def expand_derived(d):
    """Replace every derived step by its whiskered body"""
    return _expand_moves(d)[0]


def _first_bad_before_good(d):
    for i in range(len(d.steps) - 1):
        if d.steps[i].is_bad and not d.steps[i + 1].is_bad:
            return i
    return None


def has_bad_before_good(d):
    return _first_bad_before_good(d) is not None


def _absorb(d, i, presentation):
    """Replace steps i, i+1 by the short side of a matching equation instance"""
    segment = d.steps[i:i + 2]
    options = []
    for eq in presentation.equations.values():
        for direction, frm, to in (("forward", eq.left, eq.right), ("backward", eq.right, eq.left)):
            if len(frm.steps) != 2 or len(to.steps) > 2 or has_bad_before_good(to):
                continue
            contexts = match_whiskered(segment, frm.steps)
            if contexts is None:
                continue
            options.append((len(to.steps), EquationInstance(eq.name, direction, i, *contexts)))
    if not options:
        return None
    move = min(options, key=lambda item: item[0])[1]
    return move.apply(d, presentation), move


def _push_moves(d, presentation):
    moves = []
    limit = 10 * (len(d.steps) + 1) ** 2 + 100
    for _ in range(limit):
        i = _first_bad_before_good(d)
        if i is None:
            return d, moves, None
        pair = exchange_pair(d.steps[i], d.steps[i + 1])
        if pair is not None:
            d = d.replace(i, i + 2, pair)
            moves.append(Exchange(i))
            continue
        absorbed = _absorb(d, i, presentation)
        if absorbed is None:
            return d, moves, f"no certified rewrite for {d.steps[i]} ; {d.steps[i + 1]}"
        d, move = absorbed
        moves.append(move)
    return d, moves, "iteration limit reached"


def push_bad_after_good(d, presentation, budget=None):
    """Equivalent derivation with every good step before every bad one, or Unknown"""
    result, _, problem = _push_moves(d, presentation)
    if problem:
        return Unknown({"reason": problem, "partial": str(result)})
    return result


def _normal_shape(d, presentation):
    """Expand, push, then sort the good prefix and bad suffix separately"""
    d, moves = _expand_moves(d)
    pushed, push_moves, problem = _push_moves(d, presentation)
    if problem:
        logger.debug(f"push_bad_after_good stopped: {problem}")
    d = pushed
    moves += push_moves
    if problem is None:
        split = next((i for i, s in enumerate(d.steps) if s.is_bad), len(d.steps))
        d, head = _canonical_moves(d, 0, split)
        d, tail = _canonical_moves(d, split, len(d.steps))
        moves += head + tail
    else:
        d, rest = _canonical_moves(d)
        moves += rest
    return d, moves


def equivalent(d1, d2, presentation, budget=None, use_certificates=True):
    """Equal(trace) with trace.replay(d1) == d2, or Unknown(diagnostics)"""
    if d1.source != d2.source or d1.target != d2.target:
        raise TypingError(f"derivations are not parallel: {d1.source} => {d1.target}"
                          f" vs {d2.source} => {d2.target}")
    budget = budget or Budget()
    n1, m1 = _normal_shape(d1, presentation)
    n2, m2 = _normal_shape(d2, presentation)
    tail = invert_moves(m2)
    if n1.key() == n2.key():
        return Equal(ProofTrace(tuple(m1 + tail)))

    if use_certificates and not n1.has_bad and not n2.has_bad and not find_redexes(
            n1.target, presentation.good_rules):
        middle = _newman_route(n1, n2, presentation, budget)
        if middle is not None:
            logger.debug(f"joined by confluence certificates: {d1} = {d2}")
            return Equal(ProofTrace(tuple(m1 + middle + tail)))

    middle, stats = _congruence_search(n1, n2, presentation, budget)
    if middle is not None:
        return Equal(ProofTrace(tuple(m1 + middle + tail)))
    logger.info(f"no proof that {d1} = {d2}: {stats['reason']}")
    return Unknown({**stats, "left": str(n1), "right": str(n2)})


# confluence route

def _newman_route(d1, d2, presentation, budget):
    from .confluence import check_good_confluence
    if not check_termination(presentation).terminating:
        return None
    report = check_good_confluence(presentation, budget)
    try:
        return _join(d1, d2, presentation, report, {})
    except RecursionError:
        logger.warning("confluence join recursed too deeply")
        return None


def _join(d1, d2, presentation, report, memo):
    """Moves turning d1 into d2 (good derivations to one good-normal target)"""
    key = (d1.key(), d2.key())
    if key in memo:
        return memo[key]
    if d1.key() == d2.key():
        return []
    if not d1.steps or not d2.steps or d1.target != d2.target:
        return None
    a, b = d1.steps[0], d2.steps[0]
    rest1 = Derivation(a.target, d1.steps[1:])
    rest2 = Derivation(b.target, d2.steps[1:])
    if a == b:
        inner = _join(rest1, rest2, presentation, report, memo)
        result = None if inner is None else [m.shifted(1) for m in inner]
        memo[key] = result
        return result
    peak = _close_peak(a, b, report)
    if peak is None:
        memo[key] = None
        return None
    ja, jb, peak_moves = peak
    _, finish = normalize_good(ja.target, presentation)
    first = _join(rest1, ja.then(finish), presentation, report, memo)
    second = _join(jb.then(finish), rest2, presentation, report, memo)
    if first is None or second is None:
        memo[key] = None
        return None
    result = [m.shifted(1) for m in first] + peak_moves + [m.shifted(1) for m in second]
    memo[key] = result
    return result


def _close_peak(a, b, report):
    """(ja, jb, moves) with moves turning a;ja into b;jb"""
    x = a.source
    if not intervals_overlap(a.redex, b.redex):
        if b.redex[1] <= a.redex[0]:
            residual = Step.at(a.target, b.position, b.rule)
        else:
            residual = Step.at(a.target, b.position - len(a.rule.lhs) + len(a.rule.rhs), b.rule)
        swapped = exchange_pair(a, residual)
        if swapped is None or swapped[0] != b:
            return None
        return (Derivation(a.target, (residual,)),
                Derivation(b.target, (swapped[1],)),
                [Exchange(0)])
    lo = min(a.redex[0], b.redex[0])
    hi = max(a.redex[1], b.redex[1])
    core, left, right = x.slice(lo, hi), x.prefix(lo), x.suffix(hi)
    a_rel = Step.at(core, a.position - lo, a.rule)
    b_rel = Step.at(core, b.position - lo, b.rule)
    found = report.certificate_for(a_rel, b_rel)
    if found is None:
        return None
    cert, flipped = found
    first, second = (cert.right, cert.left) if flipped else (cert.left, cert.right)
    trace = cert.trace.inverse() if flipped else cert.trace
    ja = Derivation(first.steps[0].target, first.steps[1:]).whiskered(left, right)
    jb = Derivation(second.steps[0].target, second.steps[1:]).whiskered(left, right)
    return ja, jb, list(trace.whiskered(left, right).moves)


# bounded congruence search

def congruence_neighbors(d, presentation, allow_bad=True, max_steps=None):
    """(move, derivation) pairs one exchange or equation instance away from d"""
    for i in range(len(d.steps) - 1):
        pair = exchange_pair(d.steps[i], d.steps[i + 1])
        if pair is not None:
            yield Exchange(i), d.replace(i, i + 2, pair)
    strings = None
    for eq in presentation.equations.values():
        for direction, frm, to in (("forward", eq.left, eq.right), ("backward", eq.right, eq.left)):
            if to.has_bad and not allow_bad:
                continue
            size = len(d.steps) - len(frm.steps) + len(to.steps)
            if max_steps is not None and size > max_steps:
                continue
            if frm.steps:
                n = len(frm.steps)
                for i in range(len(d.steps) - n + 1):
                    contexts = match_whiskered(d.steps[i:i + n], frm.steps)
                    if contexts is None:
                        continue
                    move = EquationInstance(eq.name, direction, i, *contexts)
                    yield move, d.replace(i, i + n, to.whiskered(*contexts).steps)
                continue
            strings = strings or d.strings()
            word = frm.source
            for k, s in enumerate(strings):
                for p in s.occurrences(word):
                    left, right = s.prefix(p), s.suffix(p + len(word))
                    try:
                        inserted = to.whiskered(left, right)
                    except TypingError:
                        continue
                    move = EquationInstance(eq.name, direction, k, left, right)
                    yield move, d.replace(k, k, inserted.steps)


def _congruence_search(d1, d2, presentation, budget):
    allow_bad = d1.has_bad or d2.has_bad
    max_steps = max(len(d1.steps), len(d2.steps)) + budget.length_slack
    sides = [{d1.key(): (None, None)}, {d2.key(): (None, None)}]
    frontiers = [[d1], [d2]]
    depths = [0, 0]
    explored = 2
    while True:
        if not frontiers[0] or not frontiers[1]:
            return None, {"reason": "search space exhausted", "nodes": explored, "depth": sum(depths)}
        open_sides = [s for s in (0, 1) if depths[s] < budget.depth]
        if not open_sides:
            return None, {"reason": "depth budget exhausted", "nodes": explored, "depth": sum(depths)}
        side = min(open_sides, key=lambda s: len(frontiers[s]))
        depths[side] += 1
        own, other = sides[side], sides[1 - side]
        nxt = []
        for d in frontiers[side]:
            for move, nd in congruence_neighbors(d, presentation, allow_bad, max_steps):
                k = nd.key()
                if k in own:
                    continue
                own[k] = (d.key(), move)
                if k in other:
                    return _path(sides, k), {"nodes": explored}
                explored += 1
                if explored >= budget.nodes:
                    return None, {"reason": "node budget exhausted", "nodes": explored,
                                  "depth": sum(depths)}
                nxt.append(nd)
        frontiers[side] = nxt


def _path(sides, meet):
    """Moves from the left root to the right root through `meet`"""
    def climb(tree, key):
        moves = []
        while tree[key][0] is not None:
            parent, move = tree[key]
            moves.append(move)
            key = parent
        return moves

    from_left = list(reversed(climb(sides[0], meet)))
    to_right = [m.inverse() for m in climb(sides[1], meet)]
    return from_left + to_right


# pasting diagrams

@dataclass
class Diagram:
    """Named strings joined by derivation edges, from `source` to `sink`"""
    name: str
    nodes: dict
    edges: list
    source: str
    sink: str

    def graph(self):
        graph = nx.MultiDiGraph()
        for name in self.nodes:
            graph.add_node(name)
        for index, (u, v, d) in enumerate(self.edges):
            graph.add_edge(u, v, key=index, derivation=d)
        return graph

    def validate(self):
        for u, v, d in self.edges:
            if u not in self.nodes or v not in self.nodes:
                raise TypingError(f"diagram {self.name}: edge {u} -> {v} names an unknown node")
            if d.source != self.nodes[u] or d.target != self.nodes[v]:
                raise TypingError(
                    f"diagram {self.name}: edge {u} -> {v} is {d.source} => {d.target},"
                    f" nodes are {self.nodes[u]} and {self.nodes[v]}")
        graph = self.graph()
        if self.source not in graph or self.sink not in graph:
            raise TypingError(f"diagram {self.name}: unknown source or sink")
        on_path = (nx.descendants(graph, self.source) | {self.source}) & (
            nx.ancestors(graph, self.sink) | {self.sink})
        stray = [n for n in self.nodes if n not in on_path]
        if stray:
            raise TypingError(f"diagram {self.name}: nodes {stray} lie on no source-to-sink path")
        return graph

    def paths(self):
        """Every source-to-sink path as (edge list, composite derivation)"""
        graph = self.validate()
        result = []
        for path in nx.all_simple_edge_paths(graph, self.source, self.sink):
            d = Derivation.identity(self.nodes[self.source])
            for u, v, key in path:
                d = d.then(graph.edges[u, v, key]["derivation"])
            result.append(([(u, v) for u, v, _ in path], d))
        return result


@dataclass
class DiagramVerdict:
    name: str
    commutes: bool
    reference: list
    comparisons: list

    def __str__(self):
        state = "commutes" if self.commutes else "not certified"
        return f"{self.name}: {state} ({len(self.comparisons)} paths compared)"


def check_diagram(diagram, presentation, budget=None):
    """Compare every source-to-sink path with the first one"""
    paths = diagram.paths()
    if not paths:
        raise TypingError(f"diagram {diagram.name}: no path from {diagram.source} to {diagram.sink}")
    reference_path, reference = paths[0]
    comparisons = []
    for path, d in paths[1:]:
        verdict = equivalent(reference, d, presentation, budget)
        route = " -> ".join([path[0][0]] + [v for _, v in path])
        logger.info(f"diagram {diagram.name}: {route}: {verdict}")
        comparisons.append((path, verdict))
    commutes = all(v.is_equal for _, v in comparisons)
    return DiagramVerdict(diagram.name, commutes, reference_path, comparisons)


__all__ = [
    'Equal', 'Unknown', 'whisker', 'exchange_adjacent', 'canonical_exchange_form',
    'expand_derived', 'push_bad_after_good', 'has_bad_before_good', 'equivalent',
    'congruence_neighbors', 'Diagram', 'DiagramVerdict', 'check_diagram', 'NotDisjointError',
]
