"""
Rules, steps, derivations and equations

A Step is a rule applied in a whisker context (left . rule . right), and a
Derivation is a composable sequence of steps: the 2-cells whose equality
the engine reasons about.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from core.errors import TypingError
from core.logging_setup import logger
from .strings import TypedString


class RuleClass(Enum):
    GOOD = "Good"
    BAD = "Bad"


@dataclass(frozen=True)
class Rule:
    """2-cell generator lhs => rhs"""
    name: str
    lhs: TypedString
    rhs: TypedString

    @property
    def is_bad(self):
        return len(self.rhs) > len(self.lhs)

    @property
    def is_derived(self):
        return False

    def __str__(self):
        return f"{self.name} : {self.lhs} => {self.rhs}"


@dataclass(frozen=True)
class DerivedRule(Rule):
    """Named composite of base steps; expands to `body`, adds no generator"""
    body: "Derivation" = None

    @property
    def is_derived(self):
        return True


def classify(rule):
    """Bad iff the rule lengthens the string"""
    return RuleClass.BAD if rule.is_bad else RuleClass.GOOD


def intervals_overlap(a, b):
    """
    Overlap test for redex intervals [start, end).
    An empty interval at p meets [i, j) only when i < p < j; two empty
    intervals never meet.
    """
    (a0, a1), (b0, b1) = a, b
    if a0 == a1 and b0 == b1:
        return False
    if a0 == a1:
        return b0 < a0 < b1
    if b0 == b1:
        return a0 < b0 < a1
    return max(a0, b0) < min(a1, b1)


@dataclass(frozen=True)
class Step:
    """One reduction left . rule . right (the whiskered 2-cell)"""
    left: TypedString
    rule: Rule
    right: TypedString
    source: TypedString = field(init=False, repr=False, compare=False)
    target: TypedString = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "source", self.left + self.rule.lhs + self.right)
        object.__setattr__(self, "target", self.left + self.rule.rhs + self.right)

    @classmethod
    def at(cls, source, position, rule):
        """Apply `rule` to `source` at `position`, checking the redex is there"""
        k = len(rule.lhs)
        if position < 0 or position + k > len(source):
            raise TypingError(f"{rule.name} does not fit in {source} at {position}", position)
        if source.gens[position:position + k] != rule.lhs.gens:
            raise TypingError(f"no {rule.name} redex in {source} at {position}", position)
        if k == 0 and source.cell_at(position) != rule.lhs.cod:
            raise TypingError(
                f"{rule.name} needs cell {rule.lhs.cod} at boundary {position} of {source}",
                position)
        return cls(source.prefix(position), rule, source.suffix(position + k))

    @property
    def position(self):
        return len(self.left)

    @property
    def redex(self):
        """Interval of the rule's lhs in the source"""
        p = len(self.left)
        return (p, p + len(self.rule.lhs))

    @property
    def output(self):
        """Interval of the rule's rhs in the target"""
        p = len(self.left)
        return (p, p + len(self.rule.rhs))

    @property
    def is_bad(self):
        return self.rule.is_bad

    def whiskered(self, left, right):
        return Step(left + self.left, self.rule, self.right + right)

    def key(self):
        return (self.left.gens, self.rule.name, self.right.gens)

    def __str__(self):
        left = " ".join(self.left.gens)
        right = " ".join(self.right.gens)
        return f"({left}) {self.rule.name} ({right})"


@dataclass(frozen=True)
class Derivation:
    source: TypedString
    steps: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple(self.steps))
        current = self.source
        for i, step in enumerate(self.steps):
            if step.source != current:
                msg = f"step {i} ({step}) starts at {step.source}, expected {current}"
                logger.error(msg)
                raise TypingError(msg, position=i)
            current = step.target

    @classmethod
    def identity(cls, s):
        return cls(s, ())

    @property
    def target(self):
        return self.steps[-1].target if self.steps else self.source

    def __len__(self):
        return len(self.steps)

    def strings(self):
        """Source, every intermediate string, and target"""
        return [self.source] + [step.target for step in self.steps]

    def then(self, other):
        """Vertical composition: self first, then other"""
        if other.source != self.target:
            raise TypingError(f"cannot compose: {self.target} != {other.source}")
        return Derivation(self.source, self.steps + other.steps)

    def replace(self, start, stop, steps):
        """Swap steps[start:stop] for `steps` (which must cover the same strings)"""
        return Derivation(self.source, self.steps[:start] + tuple(steps) + self.steps[stop:])

    def whiskered(self, left, right):
        return Derivation(left + self.source + right,
                          tuple(step.whiskered(left, right) for step in self.steps))

    @property
    def has_bad(self):
        return any(step.is_bad for step in self.steps)

    @property
    def has_derived(self):
        return any(step.rule.is_derived for step in self.steps)

    def rule_counts(self):
        counts = {}
        for step in self.steps:
            counts[step.rule.name] = counts.get(step.rule.name, 0) + 1
        return counts

    def key(self):
        return (self.source.gens, self.source.boundaries,
                tuple(step.key() for step in self.steps))

    def __str__(self):
        if not self.steps:
            return f"id({self.source})"
        return "{ " + " ; ".join(str(step) for step in self.steps) + " }"


@dataclass(frozen=True)
class Equation:
    """Declared equality of two parallel derivations"""
    name: str
    left: Derivation
    right: Derivation

    @property
    def sides(self):
        return (self.left, self.right)

    def __str__(self):
        return f"{self.name} : {self.left} = {self.right}"
