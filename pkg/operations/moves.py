"""
Congruence moves and replayable proof traces

A ProofTrace is a list of moves; replaying it on the first derivation must
produce the second one exactly. Moves can be inverted, whiskered by a
string context, and shifted past a common prefix of steps, so traces for
small diagrams compose into traces for large ones.
"""

from __future__ import annotations

from dataclasses import dataclass

from core.errors import NotDisjointError, TypingError, RewriteCheckerError
from core.logging_setup import logger
from presentation import Derivation, Step, intervals_overlap


def exchange_pair(a, b):
    """
    Residuals (b', a') of two consecutive steps a;b whose redexes are
    disjoint, or None when b's redex meets the material a produced.
    An insertion at the boundary of a's output is placed on the left.
    """
    out = a.output
    red = b.redex
    if intervals_overlap(out, red):
        return None
    la, ra = len(a.rule.lhs), len(a.rule.rhs)
    lb, rb = len(b.rule.lhs), len(b.rule.rhs)
    pa, pb = a.position, b.position
    b_is_left = red[1] <= out[0] if lb else pb <= out[0]
    try:
        if b_is_left:
            first = Step.at(a.source, pb, b.rule)
            second = Step.at(first.target, pa + rb - lb, a.rule)
        else:
            first = Step.at(a.source, pb - ra + la, b.rule)
            second = Step.at(first.target, pa, a.rule)
    except TypingError:
        return None
    return first, second


def b_left_of_a(a, b):
    """True when, in a;b, b acts strictly to the left of a's output"""
    out, red = a.output, b.redex
    return red[1] <= out[0] if red[0] != red[1] else red[0] <= out[0]


def exchange_adjacent(d, i):
    """Swap steps i and i+1 of d; raises NotDisjointError when their redexes interact"""
    if not 0 <= i < len(d.steps) - 1:
        raise NotDisjointError(f"no adjacent pair at index {i} in a {len(d.steps)}-step derivation")
    pair = exchange_pair(d.steps[i], d.steps[i + 1])
    if pair is None:
        raise NotDisjointError(f"steps {d.steps[i]} and {d.steps[i + 1]} interact")
    return d.replace(i, i + 2, pair)


def match_whiskered(segment, pattern):
    """Contexts (L, R) with segment == pattern whiskered by L, R, or None"""
    if len(segment) != len(pattern) or not pattern:
        return None
    s0, p0 = segment[0], pattern[0]
    cut = len(s0.left) - len(p0.left)
    keep = len(p0.right)
    if cut < 0 or len(s0.right) < keep:
        return None
    if s0.left.suffix(cut) != p0.left or s0.right.prefix(keep) != p0.right:
        return None
    left, right = s0.left.prefix(cut), s0.right.suffix(keep)
    try:
        for s, p in zip(segment, pattern):
            if s != p.whiskered(left, right):
                return None
    except TypingError:
        return None
    return left, right


@dataclass(frozen=True)
class Exchange:
    index: int

    def apply(self, d, presentation):
        return exchange_adjacent(d, self.index)

    def inverse(self):
        return self

    def whiskered(self, left, right):
        return self

    def shifted(self, offset):
        return Exchange(self.index + offset)

    def describe(self):
        return {"move": "exchange", "index": self.index}


@dataclass(frozen=True)
class EquationInstance:
    """Replace the whiskered `from` side of an equation by its other side"""
    equation: str
    direction: str
    index: int
    left: object
    right: object

    def sides(self, presentation):
        eq = presentation.equations[self.equation]
        if self.direction == "forward":
            return eq.left, eq.right
        return eq.right, eq.left

    def apply(self, d, presentation):
        frm, to = self.sides(presentation)
        frm_w = frm.whiskered(self.left, self.right)
        to_w = to.whiskered(self.left, self.right)
        n = len(frm_w.steps)
        if n:
            if d.steps[self.index:self.index + n] != frm_w.steps:
                raise RewriteCheckerError(
                    f"{self.equation} ({self.direction}) does not match at step {self.index}")
        elif d.strings()[self.index] != frm_w.source:
            raise RewriteCheckerError(
                f"{self.equation} ({self.direction}) needs {frm_w.source} at index {self.index}")
        return d.replace(self.index, self.index + n, to_w.steps)

    def inverse(self):
        flipped = "backward" if self.direction == "forward" else "forward"
        return EquationInstance(self.equation, flipped, self.index, self.left, self.right)

    def whiskered(self, left, right):
        return EquationInstance(self.equation, self.direction, self.index,
                                left + self.left, self.right + right)

    def shifted(self, offset):
        return EquationInstance(self.equation, self.direction, self.index + offset,
                                self.left, self.right)

    def describe(self):
        return {"move": "equation", "equation": self.equation, "direction": self.direction,
                "index": self.index, "left": str(self.left), "right": str(self.right)}


@dataclass(frozen=True)
class ExpandDerived:
    index: int
    rule: str

    def apply(self, d, presentation):
        step = d.steps[self.index]
        if step.rule.name != self.rule or not step.rule.is_derived:
            raise RewriteCheckerError(f"step {self.index} is not an application of {self.rule}")
        body = step.rule.body.whiskered(step.left, step.right)
        return d.replace(self.index, self.index + 1, body.steps)

    def inverse(self):
        return FoldDerived(self.index, self.rule)

    def whiskered(self, left, right):
        return self

    def shifted(self, offset):
        return ExpandDerived(self.index + offset, self.rule)

    def describe(self):
        return {"move": "expand", "index": self.index, "rule": self.rule}


@dataclass(frozen=True)
class FoldDerived:
    index: int
    rule: str

    def apply(self, d, presentation):
        rule = presentation.rule(self.rule)
        n = len(rule.body.steps)
        contexts = match_whiskered(d.steps[self.index:self.index + n], rule.body.steps)
        if contexts is None:
            raise RewriteCheckerError(f"steps at {self.index} are not a whiskered {self.rule} body")
        return d.replace(self.index, self.index + n, (Step(contexts[0], rule, contexts[1]),))

    def inverse(self):
        return ExpandDerived(self.index, self.rule)

    def whiskered(self, left, right):
        return self

    def shifted(self, offset):
        return FoldDerived(self.index + offset, self.rule)

    def describe(self):
        return {"move": "fold", "index": self.index, "rule": self.rule}


def invert_moves(moves):
    return [move.inverse() for move in reversed(moves)]


@dataclass(frozen=True)
class ProofTrace:
    moves: tuple = ()

    def __len__(self):
        return len(self.moves)

    def replay(self, d, presentation):
        for move in self.moves:
            d = move.apply(d, presentation)
        return d

    def replays(self, first, second, presentation):
        """True when replaying on `first` yields `second` exactly"""
        try:
            return self.replay(first, presentation).key() == second.key()
        except RewriteCheckerError as e:
            logger.debug(f"trace replay failed: {e}")
            return False

    def inverse(self):
        return ProofTrace(tuple(invert_moves(self.moves)))

    def then(self, other):
        return ProofTrace(self.moves + other.moves)

    def whiskered(self, left, right):
        return ProofTrace(tuple(m.whiskered(left, right) for m in self.moves))

    def shifted(self, offset):
        return ProofTrace(tuple(m.shifted(offset) for m in self.moves))

    def describe(self):
        return [move.describe() for move in self.moves]
