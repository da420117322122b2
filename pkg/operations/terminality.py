"""
Terminality of a candidate string inside a universe

For every string x of the universe (up to a length bound) the checker looks
for a derivation x => candidate and tries to certify that all such
derivations are equal. The certificate rests on three checks: good
confluence, bad elimination and good-normality of the candidate.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import networkx as nx

from core.config import Budget
from core.constants import ORACLE_NODE_LIMIT
from core.errors import TypingError, UniverseError
from core.logging_setup import logger
from presentation import Derivation, Step, check_universe_closed
from .confluence import check_good_confluence, check_bad_elimination
from .equivalence import equivalent
from .moves import exchange_pair
from .rewrite import (
    NotFound, check_termination, find_derivation, find_redexes, normalize_good,
    good_reachable, enumerate_strings,
)


CERTIFIED = "Certified"
UNKNOWN = "Unknown"


@dataclass
class StringResult:
    string: object
    existence: object
    uniqueness: str
    note: str = ""

    @property
    def found(self):
        return not isinstance(self.existence, NotFound)


@dataclass
class TerminalityReport:
    candidate: object
    universe: str
    max_len: int
    results: list
    basis: dict = field(default_factory=dict)

    @property
    def terminal(self):
        return all(r.found and r.uniqueness == CERTIFIED for r in self.results)

    @property
    def verdict(self):
        return "Terminal" if self.terminal else "NotCertified"

    @property
    def gaps(self):
        return [r for r in self.results if not r.found or r.uniqueness != CERTIFIED]

    def __str__(self):
        return (f"{self.verdict}: {self.candidate} in {self.universe} up to length {self.max_len}"
                f" ({len(self.results)} strings, {len(self.gaps)} gaps)")


def _bad_only_derivations(s, target, presentation, limit=1000):
    """Derivations s => target built from lengthening steps only"""
    rules = presentation.bad_rules
    budget = len(target) - len(s)
    found = []

    def extend(current, steps):
        if len(found) >= limit:
            return
        if current == target:
            found.append(Derivation(s, tuple(steps)))
            return
        if len(current) >= len(target) or len(steps) >= budget:
            return
        for step in find_redexes(current, rules):
            extend(step.target, steps + [step])

    if budget >= 0:
        extend(s, [])
    return found


def _basis(presentation, candidate, budget):
    termination = check_termination(presentation)
    good = check_good_confluence(presentation, budget)
    bad = check_bad_elimination(presentation, budget)
    normal = not find_redexes(candidate, presentation.good_rules)
    return {
        "termination": termination,
        "good_confluence": good,
        "bad_elimination": bad,
        "candidate_normal": normal,
    }


def _uniqueness(x, candidate, presentation, basis, budget):
    """(verdict, note) for the claim that all derivations x => candidate are equal"""
    if not basis["termination"].terminating:
        return UNKNOWN, str(basis["termination"])
    if not basis["bad_elimination"].certified:
        return UNKNOWN, f"bad elimination not certified: {basis['bad_elimination']}"
    if not basis["candidate_normal"]:
        return UNKNOWN, f"{candidate} is not good-normal"
    reachable = good_reachable(x, presentation)
    good = basis["good_confluence"]
    if not good.certified:
        peaks = [o.pair.peak for o in good.failures]
        hit = [p for p in peaks for y in reachable if y.occurrences(p) and len(p)]
        if hit:
            return UNKNOWN, f"uncertified peak {hit[0].compact()} reachable from {x.compact()}"
    normal, _ = normalize_good(x, presentation)
    if normal == candidate:
        return CERTIFIED, "candidate is the good normal form"
    for y in reachable:
        if y != normal and _bad_only_derivations(y, candidate, presentation, limit=1):
            return UNKNOWN, f"{y.compact()} reaches {candidate.compact()} without normalizing"
    tails = _bad_only_derivations(normal, candidate, presentation)
    if not tails:
        return UNKNOWN, f"no lengthening-only route {normal.compact()} => {candidate.compact()}"
    for other in tails[1:]:
        if not equivalent(tails[0], other, presentation, budget).is_equal:
            return UNKNOWN, f"lengthening routes from {normal.compact()} not proven equal"
    return CERTIFIED, f"{len(tails)} lengthening route(s) from {normal.compact()}"


def _check_candidate(presentation, candidate, universe, active_rules):
    if not universe.accepts(candidate.gens) or candidate.cod != universe.base and not candidate.gens:
        msg = f"candidate {candidate} lies outside universe {universe.name}"
        logger.error(msg)
        raise UniverseError(msg)
    closure = check_universe_closed(presentation, universe, active_rules)
    if not closure.closed:
        msg = f"universe {universe.name} is not closed: {closure}"
        logger.error(msg)
        raise UniverseError(msg)


def check_terminal(presentation, candidate, universe, max_len, budget=None, rules=None):
    """TerminalityReport for candidate over universe members up to max_len"""
    budget = budget or Budget()
    active = presentation.base_rules if rules is None else list(rules)
    _check_candidate(presentation, candidate, universe, active)
    basis = _basis(presentation, candidate, budget)
    results = []
    for x in enumerate_strings(presentation, universe, max_len):
        existence = find_derivation(x, candidate, presentation, budget, active)
        verdict, note = _uniqueness(x, candidate, presentation, basis, budget)
        results.append(StringResult(x, existence, verdict, note))
        logger.debug(f"terminal {candidate.compact()}: {x.compact()} -> {verdict} ({note})")
    report = TerminalityReport(candidate, universe.name, max_len, results, basis)
    logger.info(str(report))
    return report


def check_terminal_subcategory(presentation, candidate, sub_universe, active_rules, max_len,
                               budget=None):
    """
    Terminality inside a sub-universe using only `active_rules` (derived
    rules allowed) for existence; uniqueness is inherited from the ambient
    presentation, where derived steps expand to base ones.
    """
    budget = budget or Budget()
    active = [presentation.rule(r) if isinstance(r, str) else r for r in active_rules]
    _check_candidate(presentation, candidate, sub_universe, active)
    basis = _basis(presentation, candidate, budget)
    results = []
    for x in enumerate_strings(presentation, sub_universe, max_len):
        existence = find_derivation(x, candidate, presentation, budget, active)
        verdict, note = _uniqueness(x, candidate, presentation, basis, budget)
        results.append(StringResult(x, existence, verdict, f"inherited: {note}"))
    basis["active_rules"] = [r.name for r in active]
    report = TerminalityReport(candidate, sub_universe.name, max_len, results, basis)
    logger.info(str(report))
    return report


@dataclass
class LawReport:
    laws: dict

    @property
    def holds(self):
        return all(v.is_equal for v in self.laws.values())

    def __str__(self):
        return ", ".join(f"{name}: {verdict}" for name, verdict in self.laws.items())


def _rule(presentation, rule):
    return presentation.rule(rule) if isinstance(rule, str) else rule


def verify_monad_laws(presentation, t, mu, eta, budget=None):
    """Associativity and both unit laws for (t, mu, eta)"""
    mu, eta = _rule(presentation, mu), _rule(presentation, eta)
    if mu.lhs != t + t or mu.rhs != t:
        raise TypingError(f"{mu.name} is {mu.lhs} => {mu.rhs}, not {t + t} => {t}")
    if not eta.lhs.is_identity or eta.rhs != t:
        raise TypingError(f"{eta.name} is {eta.lhs} => {eta.rhs}, not 1 => {t}")
    unit = presentation.identity(t.dom)
    top = presentation.identity(t.cod)
    ttt = t + t + t
    assoc_left = Derivation(ttt, (Step(top, mu, t), Step(top, mu, unit)))
    assoc_right = Derivation(ttt, (Step(t, mu, unit), Step(top, mu, unit)))
    left_unit = Derivation(t, (Step(top, eta, t), Step(top, mu, unit)))
    right_unit = Derivation(t, (Step(t, eta, unit), Step(top, mu, unit)))
    identity = Derivation.identity(t)
    laws = {
        "associativity": equivalent(assoc_left, assoc_right, presentation, budget),
        "left unit": equivalent(left_unit, identity, presentation, budget),
        "right unit": equivalent(right_unit, identity, presentation, budget),
    }
    report = LawReport(laws)
    logger.info(f"monad laws for {t}: {report}")
    return report


def verify_adjunction_laws(presentation, f, g, eta, eps, budget=None):
    """Both triangle identities for F -| G with unit eta and counit eps"""
    f = presentation.string(f) if isinstance(f, str) else f
    g = presentation.string(g) if isinstance(g, str) else g
    eta, eps = _rule(presentation, eta), _rule(presentation, eps)
    c, d = f.dom, f.cod
    if not eta.lhs.is_identity or eta.lhs.cod != c or eta.rhs != g + f:
        raise TypingError(f"{eta.name} is {eta.lhs} => {eta.rhs}, not 1_{c} => {g} {f}")
    if not eps.rhs.is_identity or eps.rhs.cod != d or eps.lhs != f + g:
        raise TypingError(f"{eps.name} is {eps.lhs} => {eps.rhs}, not {f} {g} => 1_{d}")
    id_c, id_d = presentation.identity(c), presentation.identity(d)
    triangle_g = Derivation(g, (Step(id_c, eta, g), Step(g, eps, id_d)))
    triangle_f = Derivation(f, (Step(f, eta, id_c), Step(id_d, eps, f)))
    laws = {
        f"triangle {g}": equivalent(triangle_g, Derivation.identity(g), presentation, budget),
        f"triangle {f}": equivalent(triangle_f, Derivation.identity(f), presentation, budget),
    }
    report = LawReport(laws)
    logger.info(f"adjunction laws for {f} -| {g}: {report}")
    return report


_IDENTITY = ("id",)


class _OracleLimit(Exception):
    pass


@dataclass
class HomClassCount:
    """Oracle result; a Partial run (node limit hit) carries no count"""
    count: int
    representatives: list
    derivations: int
    partial: bool
    table: object = field(default=None, repr=False)

    @property
    def verdict(self):
        return "Partial" if self.partial else str(self.count)

    def class_of(self, d):
        """Class index of a derivation x => candidate inside the enumerated bounds"""
        return self.table.classify(d)


class HomClassTable:
    """
    Congruence classes of the derivations s => candidate with at most r
    steps and every string within max_len, for each level (s, r).

    A derivation at (s, r) is keyed by its first step and its class at
    (step target, r - 1). Prefixing a step preserves congruence, so the
    only new identifications at (s, r) come from moves that touch the first
    step: exchanging the first two steps, or an equation instance whose
    source is s. Union-find over the keys then gives the classes.
    """

    def __init__(self, presentation, x, candidate, depth_bound, good_only=False, max_len=None,
                 node_limit=ORACLE_NODE_LIMIT):
        self.presentation = presentation
        self.x, self.candidate = x, candidate
        self.depth_bound = depth_bound
        self.rules = presentation.good_rules if good_only else presentation.base_rules
        self.max_len = max(len(x), len(candidate)) + 2 if max_len is None else max_len
        self.node_limit = node_limit
        self.nodes = 0
        self.levels = {}
        self.rep_keys = {}
        self.counts = {}
        self._moves = {}
        self._embedded = {}
        names = {rule.name for rule in self.rules}
        self.equations = [eq for eq in presentation.equations.values()
                          if (eq.left.steps or eq.right.steps)
                          and all(step.rule.name in names for side in eq.sides for step in side.steps)]
        self.distance = self._distances()

    def moves(self, s):
        if s not in self._moves:
            self._moves[s] = [step for step in find_redexes(s, self.rules)
                              if len(step.target) <= self.max_len]
        return self._moves[s]

    def _distances(self):
        """Steps from each string reachable from x to the candidate"""
        graph = nx.DiGraph()
        graph.add_node(self.x)
        frontier = [self.x]
        for _ in range(self.depth_bound):
            discovered = []
            for s in frontier:
                for step in self.moves(s):
                    if step.target not in graph:
                        discovered.append(step.target)
                    graph.add_edge(s, step.target)
            frontier = discovered
        if self.candidate not in graph:
            return {}
        return nx.single_source_shortest_path_length(graph.reverse(copy=False), self.candidate)

    def level(self, s, r):
        """{key: class index} for the derivations s => candidate of at most r steps"""
        if (s, r) in self.levels:
            return self.levels[(s, r)]
        if r < 0 or self.distance.get(s, r + 1) > r:
            self.levels[(s, r)], self.rep_keys[(s, r)], self.counts[(s, r)] = {}, [], 0
            return self.levels[(s, r)]
        keys, count = [], 0
        if s == self.candidate:
            keys.append(_IDENTITY)
            count = 1
        for step in self.moves(s):
            below = self.representatives_at(step.target, r - 1)
            keys += [(step, c) for c in range(len(below))]
            count += self.counts[(step.target, r - 1)]
        self.nodes += len(keys)
        if self.nodes > self.node_limit:
            raise _OracleLimit()
        classes = nx.utils.UnionFind(keys)
        for first, second in self._front_pairs(s, r):
            classes.union(first, second)
        table, reps, index = {}, [], {}
        for key in keys:
            root = classes[key]
            if root not in index:
                index[root] = len(reps)
                reps.append(key)
            table[key] = index[root]
        self.levels[(s, r)], self.rep_keys[(s, r)], self.counts[(s, r)] = table, reps, count
        return table

    def representatives_at(self, s, r):
        self.level(s, r)
        return self.rep_keys[(s, r)]

    def _front_pairs(self, s, r):
        """Pairs of keys at (s, r) related by one move touching the first step"""
        if r >= 2:
            for a in self.moves(s):
                for b in self.moves(a.target):
                    swapped = exchange_pair(a, b)
                    if swapped is None or len(swapped[0].target) > self.max_len:
                        continue
                    for c in range(len(self.representatives_at(b.target, r - 2))):
                        yield (self._key(s, r, (a, b), b.target, r - 2, c),
                               self._key(s, r, swapped, b.target, r - 2, c))
        for eq in self.equations:
            word = eq.left.source
            for p in s.occurrences(word):
                try:
                    left = eq.left.whiskered(s.prefix(p), s.suffix(p + len(word)))
                    right = eq.right.whiskered(s.prefix(p), s.suffix(p + len(word)))
                except TypingError:
                    continue
                if any(len(u) > self.max_len for d in (left, right) for u in d.strings()):
                    continue
                rest = r - max(len(left), len(right))
                if rest < 0:
                    continue
                t = left.target
                for c in range(len(self.representatives_at(t, rest))):
                    yield (self._key(s, r, left.steps, t, rest, c),
                           self._key(s, r, right.steps, t, rest, c))

    def _lift(self, s, low, c, high):
        """Key at (s, high) of representative c of (s, low)"""
        key = self.rep_keys[(s, low)][c]
        if key is _IDENTITY or low == high:
            return key
        step, sub = key
        return (step, self._embed(step.target, low - 1, sub, high - 1))

    def _embed(self, s, low, c, high):
        """Class at (s, high) of representative c of (s, low)"""
        if low == high:
            return c
        memo = (s, low, c, high)
        if memo not in self._embedded:
            self._embedded[memo] = self.level(s, high)[self._lift(s, low, c, high)]
        return self._embedded[memo]

    def _key(self, s, r, steps, t, rest, c):
        """Key at (s, r) of `steps` followed by representative c of (t, rest)"""
        if not steps:
            return self._lift(t, rest, c, r)
        cls = self._embed(t, rest, c, r - len(steps))
        for j in range(len(steps) - 1, 0, -1):
            cls = self.level(steps[j].source, r - j)[(steps[j], cls)]
        return (steps[0], cls)

    def representative(self, c):
        """Derivation standing for class c at the top level"""
        s, r = self.x, self.depth_bound
        key = self.rep_keys[(s, r)][c]
        steps = []
        while key is not _IDENTITY:
            step, c = key
            steps.append(step)
            s, r = step.target, r - 1
            key = self.rep_keys[(s, r)][c]
        return Derivation(self.x, tuple(steps))

    def classify(self, d):
        """Top-level class index of d, which must stay inside the enumerated bounds"""
        n = len(d.steps)
        if d.source != self.x or d.target != self.candidate or n > self.depth_bound:
            msg = (f"{d} is not a derivation {self.x} => {self.candidate}"
                   f" of at most {self.depth_bound} steps")
            logger.error(msg)
            raise ValueError(msg)
        try:
            cls = self.level(self.candidate, self.depth_bound - n)[_IDENTITY]
            for j in range(n - 1, -1, -1):
                cls = self.level(d.steps[j].source, self.depth_bound - j)[(d.steps[j], cls)]
        except KeyError:
            msg = f"{d} leaves the oracle bounds (rules or max_len {self.max_len})"
            logger.error(msg)
            raise ValueError(msg) from None
        return cls


def count_hom_classes(presentation, x, candidate, depth_bound, good_only=False, max_len=None,
                      node_limit=ORACLE_NODE_LIMIT):
    """
    Brute-force oracle: partition the derivations x => candidate of at most
    depth_bound steps (every string within max_len) by explicit congruence
    closure under exchange squares and whiskered equation instances.
    """
    table = HomClassTable(presentation, x, candidate, depth_bound, good_only, max_len, node_limit)
    try:
        table.level(x, depth_bound)
    except _OracleLimit:
        logger.warning(f"hom classes {x.compact()} => {candidate.compact()}: Partial after"
                       f" {node_limit} nodes")
        return HomClassCount(None, [], None, True)
    reps = [table.representative(c) for c in range(len(table.rep_keys[(x, depth_bound)]))]
    result = HomClassCount(len(reps), reps, table.counts[(x, depth_bound)], False, table)
    logger.info(f"hom classes {x.compact()} => {candidate.compact()} (depth {depth_bound}):"
                f" {result.count} from {result.derivations} derivations")
    return result


__all__ = [
    'CERTIFIED', 'UNKNOWN', 'StringResult', 'TerminalityReport', 'check_terminal',
    'check_terminal_subcategory', 'LawReport', 'verify_monad_laws', 'verify_adjunction_laws',
    'HomClassCount', 'HomClassTable', 'count_hom_classes',
]
