"""
Critical pairs and their certification

Divergences are two shortening (or any nonempty-lhs) redexes overlapping in
a minimal peak word. Absorptions are a lengthening step immediately
followed by a shortening step that consumes part of its output. A pair is
certified when an explicit ProofTrace shows its two sides equal.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache

from core.config import Budget
from core.errors import TypingError
from core.logging_setup import logger
from presentation import Derivation, Step, TypedString
from .equivalence import equivalent, has_bad_before_good
from .rewrite import check_termination, find_redexes, normalize_good


class PairKind(Enum):
    DIVERGENCE = "Divergence"
    ABSORPTION = "Absorption"


@dataclass(frozen=True)
class CriticalPair:
    """
    Divergence: first and second both start at peak.
    Absorption: first (bad) starts at peak, second (good) at first.target.
    """
    kind: PairKind
    peak: TypedString
    first: Step
    second: Step

    @property
    def is_good(self):
        return not self.first.is_bad and not self.second.is_bad

    def key(self):
        return (self.kind, self.peak.gens, self.peak.boundaries,
                frozenset({(self.first.position, self.first.rule.name),
                           (self.second.position, self.second.rule.name)})
                if self.kind is PairKind.DIVERGENCE else
                (self.first.key(), self.second.key()))

    def __str__(self):
        return f"{self.kind.value} at {self.peak.compact()}: {self.first} / {self.second}"


@dataclass(frozen=True)
class JoinCertificate:
    pair: CriticalPair
    left: Derivation
    right: Derivation
    trace: object

    certified = True


@dataclass(frozen=True)
class JoinedUnverified:
    """Both sides reach a common string; equality of the two routes unproven"""
    pair: CriticalPair
    left: Derivation
    right: Derivation
    diagnostics: dict = field(default_factory=dict)

    certified = False


@dataclass(frozen=True)
class Failed:
    pair: CriticalPair
    reason: str

    certified = False


def _word(s, start, stop, fallback_cell):
    if stop <= start:
        return TypedString.identity(fallback_cell)
    return s.slice(start, stop)


def _divergences(presentation):
    rules = [r for r in presentation.base_rules if len(r.lhs)]
    pairs = []
    for r1 in rules:
        l1 = r1.lhs.gens
        for r2 in rules:
            l2 = r2.lhs.gens
            if len(l2) <= len(l1):
                for k in range(len(l1) - len(l2) + 1):
                    if l1[k:k + len(l2)] == l2 and not (k == 0 and r1 is r2):
                        peak = r1.lhs
                        pairs.append((peak, Step.at(peak, 0, r1), Step.at(peak, k, r2)))
            for m in range(1, min(len(l1), len(l2))):
                if l1[-m:] == l2[:m]:
                    try:
                        peak = r1.lhs + r2.lhs.suffix(m)
                    except TypingError:
                        continue
                    pairs.append((peak, Step.at(peak, 0, r1), Step.at(peak, len(l1) - m, r2)))
    result = []
    for peak, a, b in pairs:
        a, b = sorted((a, b), key=lambda s: (s.position, presentation.rule_rank(s.rule.name)))
        result.append(CriticalPair(PairKind.DIVERGENCE, peak, a, b))
    return result


def _absorptions(presentation):
    pairs = []
    for bad in presentation.bad_rules:
        rb = bad.rhs.gens
        for good in presentation.good_rules:
            lg = good.lhs.gens
            if not lg:
                continue
            for offset in range(-(len(lg) - 1), len(rb)):
                shared = [t for t in range(len(lg)) if 0 <= t + offset < len(rb)]
                if not shared or any(lg[t] != rb[t + offset] for t in shared):
                    continue
                u_len = max(0, -offset)
                v_start = len(rb) - offset
                u = _word(good.lhs, 0, u_len, bad.lhs.cod)
                v = _word(good.lhs, v_start, len(lg), bad.lhs.dom)
                try:
                    first = Step(u, bad, v)
                    second = Step.at(first.target, u_len + offset, good)
                except TypingError:
                    continue
                pairs.append(CriticalPair(PairKind.ABSORPTION, first.source, first, second))
    return pairs


def critical_pairs(presentation):
    """Divergences then absorptions, deduplicated, in declaration order"""
    seen = set()
    result = []
    for cp in _divergences(presentation) + _absorptions(presentation):
        if cp.key() in seen:
            continue
        seen.add(cp.key())
        result.append(cp)
    logger.debug(f"{presentation.name}: {len(result)} critical pairs")
    return result


def _absorption_candidates(pair, presentation, max_steps):
    """Short derivations peak => target with no lengthening step before a shortening one"""
    peak, target = pair.peak, pair.second.target
    own = Derivation(peak, (pair.first, pair.second)).key()
    rules = presentation.base_rules
    limit = max(len(peak), len(target)) + max_steps
    found = []

    def extend(current, steps):
        d = Derivation(peak, tuple(steps))
        if current == target and d.key() != own and not has_bad_before_good(d):
            found.append(d)
        if len(steps) == max_steps:
            return
        for step in find_redexes(current, rules):
            if len(step.target) <= limit:
                extend(step.target, steps + [step])

    extend(peak, [])
    return sorted(found, key=lambda d: (len(d.steps), str(d)))


def certify_pair(pair, presentation, budget=None):
    """JoinCertificate, JoinedUnverified or Failed"""
    budget = budget or Budget()
    if pair.kind is PairKind.DIVERGENCE:
        left_nf, ja = normalize_good(pair.first.target, presentation)
        right_nf, jb = normalize_good(pair.second.target, presentation)
        left = Derivation(pair.peak, (pair.first,) + ja.steps)
        right = Derivation(pair.peak, (pair.second,) + jb.steps)
        if left_nf != right_nf:
            return Failed(pair, f"normal forms differ: {left_nf} vs {right_nf}")
        verdict = equivalent(left, right, presentation, budget, use_certificates=False)
        if verdict.is_equal:
            return JoinCertificate(pair, left, right, verdict.trace)
        return JoinedUnverified(pair, left, right, verdict.diagnostics)

    left = Derivation(pair.peak, (pair.first, pair.second))
    candidates = _absorption_candidates(pair, presentation, len(left.steps))
    if not candidates:
        return Failed(pair, "no short completion")
    for candidate in candidates:
        verdict = equivalent(left, candidate, presentation, budget, use_certificates=False)
        if verdict.is_equal:
            return JoinCertificate(pair, left, candidate, verdict.trace)
    return JoinedUnverified(pair, left, candidates[0], {"candidates": len(candidates)})


@dataclass
class ConfluenceReport:
    kind: PairKind
    termination: object
    outcomes: list

    @property
    def failures(self):
        return [o for o in self.outcomes if not o.certified]

    @property
    def certified(self):
        return self.termination.terminating and not self.failures

    def certificate_for(self, first, second):
        """(certificate, flipped) for the divergence first/second, or None"""
        for outcome in self.outcomes:
            if not outcome.certified:
                continue
            pair = outcome.pair
            if pair.peak != first.source:
                continue
            if pair.first == first and pair.second == second:
                return outcome, False
            if pair.first == second and pair.second == first:
                return outcome, True
        return None

    def __str__(self):
        if self.certified:
            return f"Certified ({len(self.outcomes)} pairs)"
        if not self.termination.terminating:
            return f"NotCertified: {self.termination}"
        return "NotCertified: " + "; ".join(str(o.pair) for o in self.failures)


@lru_cache(maxsize=64)
def check_good_confluence(presentation, budget=None):
    """Termination plus a certificate for every good/good divergence"""
    termination = check_termination(presentation)
    pairs = [cp for cp in critical_pairs(presentation)
             if cp.kind is PairKind.DIVERGENCE and cp.is_good]
    outcomes = [certify_pair(cp, presentation, budget) for cp in pairs]
    report = ConfluenceReport(PairKind.DIVERGENCE, termination, outcomes)
    logger.info(f"{presentation.name}: good confluence {report}")
    return report


@lru_cache(maxsize=64)
def check_bad_elimination(presentation, budget=None):
    """A certificate for every absorption pair"""
    termination = check_termination(presentation)
    pairs = [cp for cp in critical_pairs(presentation) if cp.kind is PairKind.ABSORPTION]
    outcomes = [certify_pair(cp, presentation, budget) for cp in pairs]
    report = ConfluenceReport(PairKind.ABSORPTION, termination, outcomes)
    logger.info(f"{presentation.name}: bad elimination {report}")
    return report


__all__ = [
    'PairKind', 'CriticalPair', 'JoinCertificate', 'JoinedUnverified', 'Failed',
    'ConfluenceReport', 'critical_pairs', 'certify_pair',
    'check_good_confluence', 'check_bad_elimination',
]
